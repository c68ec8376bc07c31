// Command-line interface: validation, inspection, moves, equivalence,
// catalogs, the degree-6 atlas, numeric tracing and rendering.
//
// Exit codes: 0 success, 1 domain error (machine-readable object on stderr
// with --json), 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dessin/classify.hpp"
#include "dessin/io.hpp"
#include "dessin/render.hpp"
#include "dessin/search.hpp"
#include "dessin/trace.hpp"

using namespace dessin;
using nlohmann::json;

namespace {

std::string fixtures_dir() {
  const char* env = std::getenv("DESSIN_FIXTURES");
  return env ? std::string(env) : std::string("fixtures");
}

RealPolynomial parse_poly(const std::string& spec) {
  std::string s = spec;
  auto eq = s.find('=');
  if (eq != std::string::npos) s = s.substr(eq + 1);
  std::istringstream is(s);
  RealPolynomial p;
  double c;
  while (is >> c) p.c.push_back(c);
  return p.trimmed(1e-14);
}

EquivalenceBudget budget_from(int v, long s, int depth) {
  EquivalenceBudget b;
  b.max_vertices = v;
  if (s > 0) b.max_states = s;
  if (depth > 0) b.max_depth = depth;
  return b;
}

json class_to_json(const ClassRecord& rec) {
  json j;
  j["name"] = rec.name;
  j["table"] = rec.table;
  j["cell"] = rec.cell;
  j["degree"] = rec.invariants.degree;
  j["ovals"] = rec.invariants.ovals;
  j["zigzags_of_representative"] = rec.invariants.zigzags;
  j["hyperbolic_components"] = rec.invariants.hyperbolic;
  j["type"] = rec.invariants.type == 0   ? "hyperbolic"
              : rec.invariants.type == 1 ? "I"
                                         : "II";
  j["node_profile"] = rec.invariants.node;
  if (rec.quartic) {
    j["b0"] = rec.quartic->b0;
    j["p_oval"] = rec.quartic->p_oval_odd ? "odd" : "even";
    j["tangent_meets"] = rec.quartic->tangent_meets;
    j["adjacency"] = rec.quartic->adjacency;
    j["closeable_ovals"] = rec.quartic->closeable_ovals;
    if (rec.quartic->convex) j["convex"] = *rec.quartic->convex;
  }
  j["members"] = rec.members.size();
  j["provenance"] = rec.provenance;
  j["file"] = serialize_dessin(rec.representative);
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("IoError", "cannot write " + path);
  f << text;
}

Atlas build_atlas(EquivalenceBudget budget, int threads) {
  auto cubics = cubic_catalog();
  auto uninodal = uninodal_cubic_catalog(cubics, budget);
  return enumerate_toiles_deg6(cubics, uninodal, budget, threads);
}

Atlas load_atlas(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("IoError", "cannot open atlas " + path);
  json j;
  f >> j;
  Atlas atlas;
  for (auto& jc : j["classes"]) {
    ClassRecord rec;
    rec.name = jc["name"];
    rec.table = jc["table"];
    rec.cell = jc["cell"];
    rec.representative = parse_dessin(jc["file"].get<std::string>());
    rec.code = canonical_code(rec.representative);
    rec.invariants = equivalence_invariants(rec.representative);
    rec.quartic = quartic_interpretation(rec.representative);
    rec.provenance = jc.value("provenance", "");
    rec.members = {rec.code};
    atlas.classes.push_back(std::move(rec));
  }
  if (j.contains("caption_counts"))
    for (int i = 0; i < 5 && i < int(j["caption_counts"].size()); ++i)
      atlas.caption_counts[i] = j["caption_counts"][i];
  return atlas;
}

json atlas_to_json(const Atlas& atlas) {
  json j;
  j["classes"] = json::array();
  for (auto& rec : atlas.classes) j["classes"].push_back(class_to_json(rec));
  j["caption_counts"] = atlas.caption_counts;
  j["notes"] = atlas.notes;
  return j;
}

int fail(bool as_json, const DomainError& e) {
  if (as_json) {
    json j{{"error", e.code}, {"detail", e.what()}};
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error [" << e.code << "]: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"real dessins of trigonal curves: validation, moves, "
               "classification, tracing"};
  app.require_subcommand(1);
  bool as_json = false;
  int threads = 1;
  int budget_vertices = 0;
  long budget_states = 0;
  int budget_depth = 0;
  double tolerance = 0;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--threads", threads, "worker threads for toiles/equiv");
  app.add_option("--budget-vertices", budget_vertices,
                 "search cap on vertices (default 3x input)");
  app.add_option("--budget-states", budget_states, "search cap on states");
  app.add_option("--budget-depth", budget_depth, "search cap on depth");
  app.add_option("--tolerance", tolerance, "numeric tolerance scale");

  std::string file_a, file_b, format = "dot", script, out_path, atlas_path;
  std::string g2_spec, g3_spec, coeffs_spec, point_spec, gallery_dir,
      fixtures_out;
  int degree_opt = 6;
  int wn = 0;
  bool weak = false;

  auto* c_validate = app.add_subcommand("validate", "check the dessin axioms");
  c_validate->add_option("file", file_a)->required();

  auto* c_info = app.add_subcommand("info", "degree, census and profile");
  c_info->add_option("file", file_a)->required();

  auto* c_canon = app.add_subcommand("canon", "canonical code (hex)");
  c_canon->add_option("file", file_a)->required();

  auto* c_moves = app.add_subcommand("moves", "list applicable move sites");
  c_moves->add_option("file", file_a)->required();
  c_moves->add_flag("--weak", weak, "include weak moves");

  auto* c_apply = app.add_subcommand("apply", "apply a move script");
  c_apply->add_option("file", file_a)->required();
  c_apply->add_option("--script", script, "move list file")->required();
  c_apply->add_option("-o,--output", out_path, "output dessin file");

  auto* c_equiv = app.add_subcommand("equiv", "decide equivalence");
  c_equiv->add_option("first", file_a)->required();
  c_equiv->add_option("second", file_b)->required();
  c_equiv->add_flag("--weak", weak, "weak equivalence (zigzag moves allowed)");

  auto* c_cubics = app.add_subcommand("cubics", "cubic dessin catalog");

  auto* c_toiles = app.add_subcommand("toiles", "degree-6 uninodal atlas");
  c_toiles->add_option("--degree", degree_opt, "dessin degree (6 supported)");
  c_toiles->add_option("--atlas", atlas_path, "write the atlas JSON here");
  c_toiles->add_option("--gallery", gallery_dir, "write one SVG per class");

  auto* c_classify = app.add_subcommand("classify", "classify a toile");
  c_classify->add_option("file", file_a)->required();
  c_classify->add_option("--atlas", atlas_path,
                         "atlas JSON (default <fixtures>/atlas.json)");

  auto* c_fw = app.add_subcommand("from-weierstrass",
                                  "trace the dessin of (g2, g3)");
  c_fw->add_option("--g2", g2_spec, "polynomial, 'name = c0 c1 ...'")->required();
  c_fw->add_option("--g3", g3_spec)->required();
  c_fw->add_option("-n", wn, "degree parameter (default inferred)");
  c_fw->add_option("-o,--output", out_path, "output dessin file");

  auto* c_fq = app.add_subcommand("from-quartic",
                                  "trace and classify a pointed quartic");
  c_fq->add_option("--coeffs", coeffs_spec,
                   "15 coefficients: x^4 x^3y x^3z x^2y^2 x^2yz x^2z^2 xy^3 "
                   "xy^2z xyz^2 xz^3 y^4 y^3z y^2z^2 yz^3 z^4")
      ->required();
  c_fq->add_option("--point", point_spec, "real point on the curve: x y z")
      ->required();
  c_fq->add_option("--atlas", atlas_path, "atlas JSON for classification");
  c_fq->add_option("-o,--output", out_path, "output dessin file");

  auto* c_render = app.add_subcommand("render", "render a dessin");
  c_render->add_option("file", file_a)->required();
  c_render->add_option("--format", format, "dot, svg or json");

  auto* c_gen = app.add_subcommand(
      "gen-fixtures", "regenerate the fixture corpus and atlas");
  c_gen->add_option("dir", fixtures_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  EquivalenceBudget budget =
      budget_from(budget_vertices, budget_states, budget_depth);

  try {
    if (*c_validate) {
      Dessin d = load_dessin(file_a);
      auto rep = validate(d);
      if (as_json) {
        json j{{"valid", rep.ok()}, {"violations", rep.violations}};
        std::cout << j.dump(2) << "\n";
      } else if (rep.ok()) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid:\n" << rep.str();
      }
      return rep.ok() ? 0 : 1;
    }
    if (*c_info) {
      Dessin d = load_dessin(file_a);
      require_valid(d, "info");
      auto iv = equivalence_invariants(d);
      json j{{"degree", iv.degree},
             {"vertices", d.live_vertex_count()},
             {"edges", d.edge_count()},
             {"ovals", iv.ovals},
             {"zigzags", iv.zigzags},
             {"hyperbolic_components", iv.hyperbolic},
             {"type", iv.type == 0 ? "hyperbolic" : (iv.type == 1 ? "I" : "II")},
             {"nonsingular", is_nonsingular(d)},
             {"uninodal", is_uninodal(d)}};
      if (is_uninodal(d)) {
        j["node_profile"] = profile_str(node_profile(d));
        if (iv.degree == 6 && d.surface == disk()) {
          auto qc = quartic_interpretation(d);
          j["b0"] = qc.b0;
          j["tangent_meets"] = qc.tangent_meets;
          j["adjacency"] = qc.adjacency;
        }
      }
      if (as_json)
        std::cout << j.dump(2) << "\n";
      else
        for (auto& [k, v] : j.items())
          std::cout << k << ": " << v.dump() << "\n";
      return 0;
    }
    if (*c_canon) {
      Dessin d = load_dessin(file_a);
      require_valid(d, "canon");
      Code c = canonical_code(d);
      std::ostringstream os;
      for (unsigned char ch : c)
        os << std::hex << std::setw(2) << std::setfill('0') << int(ch);
      if (as_json)
        std::cout << json{{"code", os.str()}}.dump() << "\n";
      else
        std::cout << os.str() << "\n";
      return 0;
    }
    if (*c_moves) {
      Dessin d = load_dessin(file_a);
      require_valid(d, "moves");
      auto sites = applicable_moves(d, weak);
      if (as_json) {
        json j = json::array();
        for (auto& s : sites)
          j.push_back({{"kind", to_string(s.kind)}, {"anchors", s.anchors}});
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& s : sites) std::cout << s.str() << "\n";
      }
      return 0;
    }
    if (*c_apply) {
      Dessin d = load_dessin(file_a);
      require_valid(d, "apply");
      std::ifstream f(script);
      if (!f) throw DomainError("IoError", "cannot open script " + script);
      std::string line;
      while (std::getline(f, line)) {
        std::istringstream is(line);
        std::string kind_s;
        if (!(is >> kind_s)) continue;
        auto kind = move_kind_from(kind_s);
        if (!kind) throw DomainError("ParseError", "unknown move " + kind_s);
        MoveSite site{*kind, {}, d.version};
        int a;
        while (is >> a) site.anchors.push_back(a);
        d = apply(d, site).dessin;
      }
      std::string text = serialize_dessin(d);
      if (!out_path.empty())
        write_file(out_path, text);
      else
        std::cout << text;
      return 0;
    }
    if (*c_equiv) {
      Dessin a = load_dessin(file_a), b = load_dessin(file_b);
      auto r = equivalent(a, b, weak, budget);
      json j;
      switch (r.verdict) {
        case EquivalenceResult::Verdict::Yes: {
          j["verdict"] = "yes";
          json moves = json::array();
          for (auto& m : r.witness) moves.push_back(m.str());
          j["witness"] = moves;
          break;
        }
        case EquivalenceResult::Verdict::No:
          j["verdict"] = "no";
          j["separating_invariant"] = r.separating;
          break;
        case EquivalenceResult::Verdict::Unknown:
          j["verdict"] = "unknown";
          j["states_explored"] = r.states_explored;
          break;
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << j["verdict"].get<std::string>();
        if (r.verdict == EquivalenceResult::Verdict::No)
          std::cout << " (" << r.separating << ")";
        std::cout << "\n";
        if (r.verdict == EquivalenceResult::Verdict::Yes)
          for (auto& m : r.witness) std::cout << m.str() << "\n";
      }
      return 0;
    }
    if (*c_cubics) {
      auto cat = cubic_catalog();
      auto cert = certify_cubic_catalog(cat, budget);
      json j;
      j["elementary_classes"] = json::array();
      for (auto& rec : cat.elementary) {
        j["elementary_classes"].push_back(
            {{"name", rec.name},
             {"zigzags", rec.invariants.zigzags},
             {"ovals", rec.invariants.ovals},
             {"type", rec.invariants.type == 0
                          ? "hyperbolic"
                          : (rec.invariants.type == 1 ? "I" : "II")},
             {"file", serialize_dessin(rec.representative)}});
      }
      j["weak_classes"] = cat.weak_class_count;
      j["certified"] = cert.ok;
      j["notes"] = cert.notes;
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& rec : cat.elementary)
          std::cout << rec.name << "  zigzags=" << rec.invariants.zigzags
                    << " ovals=" << rec.invariants.ovals << "\n";
        std::cout << "weak classes: " << cat.weak_class_count << "\n";
        std::cout << "certified: " << (cert.ok ? "yes" : "no") << "\n";
      }
      return cert.ok && cat.weak_class_count == 3 ? 0 : 1;
    }
    if (*c_toiles) {
      if (degree_opt != 6)
        throw DomainError("Unsupported", "only degree 6 is enumerated");
      Atlas atlas = build_atlas(budget, threads);
      json j = atlas_to_json(atlas);
      if (!atlas_path.empty()) write_file(atlas_path, j.dump(2) + "\n");
      if (!gallery_dir.empty()) {
        std::filesystem::create_directories(gallery_dir);
        for (auto& rec : atlas.classes)
          write_file(gallery_dir + "/" + rec.name + ".svg",
                     render_svg(rec.representative));
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& rec : atlas.classes)
          std::cout << rec.name << "  b0=" << rec.quartic->b0
                    << " ovals=" << rec.invariants.ovals << " "
                    << rec.invariants.node << "\n";
        std::cout << "classes: " << atlas.classes.size() << "\n";
        std::cout << "caption counts:";
        for (int c : atlas.caption_counts) std::cout << " " << c;
        std::cout << "\n";
        for (auto& n : atlas.notes) std::cout << "note: " << n << "\n";
      }
      return atlas.classes.size() == 20 ? 0 : 1;
    }
    if (*c_classify) {
      Dessin d = load_dessin(file_a);
      std::string ap = atlas_path.empty() ? fixtures_dir() + "/atlas.json"
                                          : atlas_path;
      Atlas atlas = load_atlas(ap);
      const ClassRecord& rec = classify_dessin(d, atlas, budget);
      if (as_json)
        std::cout << class_to_json(rec).dump(2) << "\n";
      else
        std::cout << rec.name << "\n";
      return 0;
    }
    if (*c_fw) {
      WeierstrassPair w{parse_poly(g2_spec), parse_poly(g3_spec), 1};
      int inferred = std::max((w.g2.degree() + 1) / 2, (w.g3.degree() + 2) / 3);
      w.n = wn > 0 ? wn : std::max(1, inferred);
      TraceLog log;
      ToleranceConfig tol;
      if (tolerance > 0) tol.root_coincidence = tolerance;
      Dessin d = trace_dessin(w, tol, &log);
      std::string text = serialize_dessin(d);
      if (!out_path.empty())
        write_file(out_path, text);
      else
        std::cout << text;
      for (auto& l : log.lines) std::cerr << "trace: " << l << "\n";
      return 0;
    }
    if (*c_fq) {
      PointedQuartic q{};
      {
        std::istringstream is(coeffs_spec);
        for (int k = 0; k < 15; ++k)
          if (!(is >> q.coeff[k]))
            throw DomainError("ParseError", "expected 15 quartic coefficients");
        std::istringstream ps(point_spec);
        if (!(ps >> q.point[0] >> q.point[1] >> q.point[2]))
          throw DomainError("ParseError", "expected a point: x y z");
      }
      auto w = trigonal_from_quartic(q);
      TraceLog log;
      Dessin d = trace_dessin(w, {}, &log);
      std::string text = serialize_dessin(d);
      if (!out_path.empty()) write_file(out_path, text);
      json j;
      j["degree"] = degree(d);
      j["uninodal"] = is_uninodal(d);
      auto qc = quartic_interpretation(d);
      j["b0"] = qc.b0;
      std::string ap =
          atlas_path.empty() ? fixtures_dir() + "/atlas.json" : atlas_path;
      if (std::filesystem::exists(ap)) {
        Atlas atlas = load_atlas(ap);
        j["class"] = classify_dessin(d, atlas, budget).name;
      }
      if (as_json) {
        j["file"] = text;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "degree: " << j["degree"] << "\nuninodal: "
                  << j["uninodal"] << "\nb0: " << j["b0"] << "\n";
        if (j.contains("class"))
          std::cout << "class: " << j["class"].get<std::string>() << "\n";
        if (out_path.empty()) std::cout << text;
      }
      return 0;
    }
    if (*c_render) {
      Dessin d = load_dessin(file_a);
      require_valid(d, "render");
      if (format == "dot")
        std::cout << render_dot(d);
      else if (format == "svg")
        std::cout << render_svg(d);
      else if (format == "json")
        std::cout << render_json(d).dump(2) << "\n";
      else
        throw DomainError("UnknownFormat", "format must be dot, svg or json");
      return 0;
    }
    if (*c_gen) {
      std::filesystem::create_directories(fixtures_out);
      auto cubics = cubic_catalog();
      for (auto& rec : cubics.elementary)
        write_file(fixtures_out + "/cubic_" + rec.name + ".dss",
                   serialize_dessin(rec.representative));
      auto uninodal = uninodal_cubic_catalog(cubics, budget);
      for (auto& rec : uninodal.weak_classes)
        write_file(fixtures_out + "/uninodal_" + rec.name + ".dss",
                   serialize_dessin(rec.representative));
      Atlas atlas = enumerate_toiles_deg6(cubics, uninodal, budget, threads);
      for (auto& rec : atlas.classes) {
        std::string name = rec.name;
        std::replace(name.begin(), name.end(), '.', '_');
        write_file(fixtures_out + "/toile_" + name + ".dss",
                   serialize_dessin(rec.representative));
      }
      write_file(fixtures_out + "/atlas.json",
                 atlas_to_json(atlas).dump(2) + "\n");
      std::cout << "wrote " << cubics.elementary.size() << " cubics, "
                << uninodal.weak_classes.size() << " uninodal cubics, "
                << atlas.classes.size() << " toiles\n";
      return atlas.classes.size() == 20 ? 0 : 1;
    }
  } catch (const DomainError& e) {
    return fail(as_json, e);
  } catch (const std::exception& e) {
    return fail(as_json, DomainError("Internal", e.what()));
  }
  return 2;
}
