#pragma once
#include <cstdlib>
#include <string>

inline std::string fixtures_dir() {
  const char* env = std::getenv("DESSIN_FIXTURES");
  return env ? std::string(env) : std::string("fixtures");
}

inline std::string fixture(const std::string& name) {
  return fixtures_dir() + "/" + name;
}
