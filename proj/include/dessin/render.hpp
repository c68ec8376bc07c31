#pragma once

/*
  Static renderings of dessins: DOT (boundary as a cycle subgraph), SVG
  (real vertices equally spaced on a circle, inner vertices placed by a
  Tutte-style barycentric relaxation), and a JSON structural dump that
  round-trips through the parser.
*/

#include <iomanip>

#include <nlohmann/json.hpp>

#include "io.hpp"
#include "validate.hpp"

namespace dessin {

inline std::string render_dot(const Dessin& d) {
  std::ostringstream os;
  os << "graph dessin {\n  layout=neato;\n";
  auto shape = [&](int v) {
    switch (d.verts[v].color) {
      case VertexColor::Black: return "circle style=filled fillcolor=black";
      case VertexColor::White: return "circle style=filled fillcolor=white";
      case VertexColor::Cross: return "diamond";
      case VertexColor::Mono: return "point";
    }
    return "circle";
  };
  auto style = [](EdgeColor c) {
    switch (c) {
      case EdgeColor::Solid: return "solid";
      case EdgeColor::Bold: return "bold";
      case EdgeColor::Dotted: return "dashed";
    }
    return "solid";
  };
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive)
      os << "  v" << v << " [shape=" << shape(v)
         << (d.is_node(v) ? " peripheries=2" : "") << "];\n";
  for (size_t c = 0; c < d.boundary.size(); ++c) {
    os << "  subgraph boundary_" << (c + 1) << " {\n";
    for (int dart : d.boundary[c]) {
      int u = d.darts[dart].vertex;
      int w = d.darts[d.pair_of(dart)].vertex;
      os << "    v" << u << " -- v" << w << " [style=" << style(d.darts[dart].color)
         << " penwidth=2];\n";
    }
    os << "  }\n";
  }
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.darts[dd].real || d.pair_of(dd) < dd) continue;
    os << "  v" << d.darts[dd].vertex << " -- v"
       << d.darts[d.pair_of(dd)].vertex
       << " [style=" << style(d.darts[dd].color) << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string render_svg(const Dessin& d) {
  const double R = 180.0, CX = 200.0, CY = 200.0;
  // boundary positions
  std::map<int, std::pair<double, double>> pos;
  if (!d.boundary.empty()) {
    const auto& circ = d.boundary[0];
    int n = int(circ.size());
    for (int i = 0; i < n; ++i) {
      double a = 2.0 * M_PI * i / n - M_PI / 2.0;
      pos[d.darts[circ[i]].vertex] = {CX + R * std::cos(a), CY + R * std::sin(a)};
    }
  }
  // Tutte-style relaxation for inner vertices
  std::vector<int> inner;
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && !d.verts[v].real) {
      inner.push_back(v);
      pos[v] = {CX, CY};
    }
  for (int it = 0; it < 120; ++it) {
    for (int v : inner) {
      double sx = 0, sy = 0;
      int k = 0;
      for (int dd : d.verts[v].rot) {
        int w = d.darts[d.pair_of(dd)].vertex;
        sx += pos[w].first;
        sy += pos[w].second;
        ++k;
      }
      if (k) pos[v] = {sx / k, sy / k};
    }
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
        "viewBox=\"0 0 400 400\">\n";
  auto dash = [](EdgeColor c) {
    switch (c) {
      case EdgeColor::Solid: return "";
      case EdgeColor::Bold: return " stroke-width=\"3.2\"";
      case EdgeColor::Dotted: return " stroke-dasharray=\"5,4\"";
    }
    return "";
  };
  // boundary circle for reference
  os << "<circle cx=\"" << CX << "\" cy=\"" << CY << "\" r=\"" << R
     << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
  auto edge_line = [&](int u, int w, EdgeColor c) {
    os << "<line x1=\"" << pos[u].first << "\" y1=\"" << pos[u].second
       << "\" x2=\"" << pos[w].first << "\" y2=\"" << pos[w].second
       << "\" stroke=\"black\" stroke-width=\"1.4\"" << dash(c) << "/>\n";
  };
  for (size_t c = 0; c < d.boundary.size(); ++c)
    for (int dart : d.boundary[c])
      edge_line(d.darts[dart].vertex, d.darts[d.pair_of(dart)].vertex,
                d.darts[dart].color);
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.darts[dd].real || d.pair_of(dd) < dd) continue;
    edge_line(d.darts[dd].vertex, d.darts[d.pair_of(dd)].vertex,
              d.darts[dd].color);
  }
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    auto [x, y] = pos[v];
    switch (d.verts[v].color) {
      case VertexColor::Black:
        os << "<circle cx=\"" << x << "\" cy=\"" << y
           << "\" r=\"5\" fill=\"black\"/>\n";
        break;
      case VertexColor::White:
        os << "<circle cx=\"" << x << "\" cy=\"" << y
           << "\" r=\"5\" fill=\"white\" stroke=\"black\"/>\n";
        break;
      case VertexColor::Cross: {
        // the node gets a doubled glyph
        int reps = d.is_node(v) ? 2 : 1;
        for (int k = 0; k < reps; ++k) {
          double s = 5.0 + 2.5 * k;
          os << "<path d=\"M" << (x - s) << " " << (y - s) << " L" << (x + s)
             << " " << (y + s) << " M" << (x - s) << " " << (y + s) << " L"
             << (x + s) << " " << (y - s)
             << "\" stroke=\"black\" stroke-width=\"1.6\"/>\n";
        }
        break;
      }
      case VertexColor::Mono:
        os << "<circle cx=\"" << x << "\" cy=\"" << y
           << "\" r=\"2.2\" fill=\"black\"/>\n";
        break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

// Full structural dump; the embedded `file` field re-parses to the same
// dessin.
inline nlohmann::json render_json(const Dessin& d) {
  nlohmann::json j;
  j["surface"] = {{"orientable", d.surface.orientable},
                  {"genus", d.surface.genus},
                  {"boundary_circles", d.surface.boundary_circles}};
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    nlohmann::json jv;
    jv["id"] = v;
    jv["color"] = to_string(d.verts[v].color);
    jv["real"] = d.verts[v].real;
    jv["index"] = d.index_of(v);
    jv["rotation"] = d.verts[v].rot;
    j["vertices"].push_back(jv);
  }
  j["darts"] = nlohmann::json::array();
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive) continue;
    j["darts"].push_back({{"id", dd},
                          {"vertex", d.darts[dd].vertex},
                          {"color", to_string(d.darts[dd].color)},
                          {"pair", d.pair_of(dd)},
                          {"real", d.darts[dd].real}});
  }
  j["boundary"] = d.boundary;
  j["file"] = serialize_dessin(d);
  return j;
}

}  // namespace dessin
