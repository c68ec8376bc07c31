#pragma once

/*
  Dessin file format (UTF-8 text, one statement per line, '#' comments):

    dessin v1 surface=<orientable|nonorientable>:<genus>:<boundary_circles>
    boundary <i>: v<id>(<color>) -<edgecolor>- v<id>(<color>) ... -<edgecolor>- (close)
    edge <edgecolor> v<id>@<slot> v<id>@<slot>
    orient region-at v<id>@<slot> = +

  Vertex colors: black, white, cross, mono.  Edge colors: solid, bold,
  dotted.  A slot is the position of the dart in the vertex's rotation:
  for a real vertex slot 0 is the dart toward the boundary predecessor,
  the last slot the dart toward the successor, and inner darts occupy
  slots 1..k in interior sweep order; for an inner vertex the slots
  0..deg-1 list the full cyclic rotation.  Inner vertices are introduced
  by edge lines; their color is implied by the incident edge colors
  ({solid,bold} black, {bold,dotted} white, {dotted,solid} cross, a single
  color monochrome).

  Edge directions are never written: they are recomputed from the region
  two-coloring; `orient` optionally pins the sign of the region traversing
  the named dart, as a consistency check.
*/

#include <fstream>
#include <sstream>

#include "core.hpp"
#include "validate.hpp"

namespace dessin {

struct ParseError : DomainError {
  int line;
  ParseError(int ln, const std::string& what)
      : DomainError("ParseError", "line " + std::to_string(ln) + ": " + what),
        line(ln) {}
};

namespace iodetail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct SlotRef {
  int vid, slot;
};

inline SlotRef parse_slot_ref(const std::string& tok, int ln) {
  // v<id>@<slot>
  if (tok.size() < 4 || tok[0] != 'v')
    throw ParseError(ln, "expected v<id>@<slot>, got '" + tok + "'");
  auto at = tok.find('@');
  if (at == std::string::npos)
    throw ParseError(ln, "expected v<id>@<slot>, got '" + tok + "'");
  try {
    return SlotRef{std::stoi(tok.substr(1, at - 1)),
                   std::stoi(tok.substr(at + 1))};
  } catch (...) {
    throw ParseError(ln, "bad slot reference '" + tok + "'");
  }
}

}  // namespace iodetail

inline Dessin parse_dessin(const std::string& text) {
  using namespace iodetail;
  Dessin d;
  d.verts.clear();
  d.darts.clear();

  std::map<int, int> vid_to_ix;          // file vertex id -> internal index
  std::map<int, VertexColor> vid_color;  // declared colors (boundary lines)
  struct PendingEdge {
    EdgeColor color;
    SlotRef a, b;
    int line;
  };
  std::vector<PendingEdge> pending;
  struct CircleData {
    std::vector<int> vids;
    std::vector<EdgeColor> ecolors;
    int line;
  };
  std::vector<CircleData> circles;
  std::optional<std::pair<SlotRef, int>> orient_req;

  std::istringstream in(text);
  std::string line;
  int ln = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "dessin") {
      if (toks.size() < 3 || toks[1] != "v1" ||
          toks[2].rfind("surface=", 0) != 0)
        throw ParseError(ln, "bad header, expected 'dessin v1 surface=...'");
      std::string spec = toks[2].substr(8);
      std::replace(spec.begin(), spec.end(), ':', ' ');
      std::istringstream ss(spec);
      std::string ori;
      int genus, circles_n;
      if (!(ss >> ori >> genus >> circles_n) ||
          (ori != "orientable" && ori != "nonorientable"))
        throw ParseError(ln, "bad surface spec");
      d.surface = SurfaceSpec{ori == "orientable", genus, circles_n};
      header_seen = true;
    } else if (toks[0] == "boundary") {
      if (!header_seen) throw ParseError(ln, "boundary before header");
      CircleData cd;
      cd.line = ln;
      // tokens: boundary <i>: v1(black) -solid- v2(cross) ... -bold- (close)
      size_t i = 2;
      bool want_vertex = true;
      for (; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t == "(close)") {
          if (want_vertex && !cd.vids.empty()) break;
          throw ParseError(ln, "(close) must follow an edge color");
        }
        if (want_vertex) {
          auto lp = t.find('(');
          auto rp = t.find(')');
          if (t[0] != 'v' || lp == std::string::npos || rp == std::string::npos)
            throw ParseError(ln, "expected v<id>(<color>), got '" + t + "'");
          int vid;
          try {
            vid = std::stoi(t.substr(1, lp - 1));
          } catch (...) {
            throw ParseError(ln, "bad vertex id in '" + t + "'");
          }
          auto col = vertex_color_from(t.substr(lp + 1, rp - lp - 1));
          if (!col) throw ParseError(ln, "unknown vertex color in '" + t + "'");
          auto it = vid_color.find(vid);
          if (it != vid_color.end())
            throw ParseError(ln, "vertex v" + std::to_string(vid) +
                                     " repeated on boundary");
          vid_color[vid] = *col;
          cd.vids.push_back(vid);
          want_vertex = false;
        } else {
          if (t.size() < 3 || t.front() != '-' || t.back() != '-')
            throw ParseError(ln, "expected -<edgecolor>-, got '" + t + "'");
          auto col = edge_color_from(t.substr(1, t.size() - 2));
          if (!col) throw ParseError(ln, "unknown edge color in '" + t + "'");
          cd.ecolors.push_back(*col);
          want_vertex = true;
        }
      }
      if (cd.vids.empty())
        throw ParseError(ln, "boundary circle uncovered: no vertices listed");
      if (cd.ecolors.size() != cd.vids.size())
        throw ParseError(ln, "boundary edge/vertex count mismatch");
      circles.push_back(std::move(cd));
    } else if (toks[0] == "edge") {
      if (toks.size() != 4) throw ParseError(ln, "edge needs color and two ends");
      auto col = edge_color_from(toks[1]);
      if (!col) throw ParseError(ln, "unknown edge color '" + toks[1] + "'");
      pending.push_back(PendingEdge{*col, parse_slot_ref(toks[2], ln),
                                    parse_slot_ref(toks[3], ln), ln});
    } else if (toks[0] == "orient") {
      // orient region-at v<id>@<slot> = +
      if (toks.size() != 4 || toks[1] != "region-at" || toks[3] != "+")
        throw ParseError(ln, "bad orient directive");
      orient_req = {parse_slot_ref(toks[2], ln), ln};
    } else {
      throw ParseError(ln, "unknown statement '" + toks[0] + "'");
    }
  }
  if (!header_seen) throw ParseError(0, "missing header");
  if (circles.empty())
    throw ParseError(0, "boundary circle uncovered: no boundary lines");

  // Create boundary vertices and real darts.
  for (const auto& cd : circles) {
    std::vector<int> succ_darts(cd.vids.size()), prev_darts(cd.vids.size());
    for (size_t i = 0; i < cd.vids.size(); ++i) {
      int vid = cd.vids[i];
      if (vid_to_ix.count(vid))
        throw ParseError(cd.line, "vertex v" + std::to_string(vid) +
                                      " appears on two circles");
      vid_to_ix[vid] = d.add_vertex(vid_color[vid], true);
    }
    for (size_t i = 0; i < cd.vids.size(); ++i) {
      size_t j = (i + 1) % cd.vids.size();
      int a = d.add_dart(vid_to_ix[cd.vids[i]], cd.ecolors[i], true);
      int b = d.add_dart(vid_to_ix[cd.vids[j]], cd.ecolors[i], true);
      d.pair_darts(a, b);
      succ_darts[i] = a;
      prev_darts[j] = b;
    }
    for (size_t i = 0; i < cd.vids.size(); ++i) {
      auto& rot = d.verts[vid_to_ix[cd.vids[i]]].rot;
      rot.push_back(prev_darts[i]);  // inner darts spliced in later
      rot.push_back(succ_darts[i]);
    }
  }

  // Collect inner slot usage.
  struct InnerSlot {
    EdgeColor color;
    int other_dart = -1;
    int line = 0;
  };
  std::map<int, std::map<int, InnerSlot>> slots;  // vid -> slot -> info
  for (const auto& pe : pending) {
    for (auto ref : {pe.a, pe.b}) {
      if (slots[ref.vid].count(ref.slot))
        throw ParseError(pe.line, "slot v" + std::to_string(ref.vid) + "@" +
                                      std::to_string(ref.slot) + " used twice");
      slots[ref.vid][ref.slot] = InnerSlot{pe.color, -1, pe.line};
    }
  }
  // Create inner vertices (those never seen on a boundary line).
  for (auto& [vid, sl] : slots) {
    if (vid_to_ix.count(vid)) continue;
    std::set<EdgeColor> cols;
    for (auto& [_, info] : sl) cols.insert(info.color);
    VertexColor vc;
    if (cols.size() == 1)
      vc = VertexColor::Mono;
    else if (cols == std::set<EdgeColor>{EdgeColor::Solid, EdgeColor::Bold})
      vc = VertexColor::Black;
    else if (cols == std::set<EdgeColor>{EdgeColor::Bold, EdgeColor::Dotted})
      vc = VertexColor::White;
    else if (cols == std::set<EdgeColor>{EdgeColor::Dotted, EdgeColor::Solid})
      vc = VertexColor::Cross;
    else
      throw ParseError(sl.begin()->second.line,
                       "inner vertex v" + std::to_string(vid) +
                           " touches all three edge colors");
    vid_to_ix[vid] = d.add_vertex(vc, false);
  }
  // Allocate inner darts at their slots.
  std::map<int, std::map<int, int>> dart_at;  // vid -> slot -> dart
  for (auto& [vid, sl] : slots) {
    int ix = vid_to_ix[vid];
    bool real = d.verts[ix].real;
    int expect_lo = real ? 1 : 0;
    int expect_hi = expect_lo + int(sl.size()) - 1;
    int k = expect_lo;
    for (auto& [slot, info] : sl) {
      if (slot != k)
        throw ParseError(info.line,
                         "rotation order inconsistent with boundary order: "
                         "vertex v" + std::to_string(vid) + " slots must be " +
                             std::to_string(expect_lo) + ".." +
                             std::to_string(expect_hi));
      ++k;
      dart_at[vid][slot] = d.add_dart(ix, info.color, false);
    }
    // Splice inner darts into the rotation.
    auto& rot = d.verts[ix].rot;
    if (real) {
      std::vector<int> nr;
      nr.push_back(rot[0]);
      for (auto& [slot, _] : sl) nr.push_back(dart_at[vid][slot]);
      nr.push_back(rot[1]);
      rot = nr;
    } else {
      rot.clear();
      for (auto& [slot, _] : sl) rot.push_back(dart_at[vid][slot]);
    }
  }
  for (const auto& pe : pending) {
    int da = dart_at[pe.a.vid][pe.a.slot];
    int db = dart_at[pe.b.vid][pe.b.slot];
    d.pair_darts(da, db);
  }
  // Any vertex referenced but never given darts?  (edge to unknown slot on a
  // real vertex outside its inner range was caught above; a dangling dart is
  // an unpaired one)
  for (int i = 0; i < int(d.darts.size()); ++i)
    if (d.darts[i].pair < 0)
      throw ParseError(0, "dangling dart reference (unpaired dart)");

  try {
    d.finalize();
  } catch (const DomainError& e) {
    throw ParseError(0, std::string("boundary walk failed: ") + e.what());
  }
  if (orient_req) {
    auto [ref, oln] = *orient_req;
    if (!vid_to_ix.count(ref.vid))
      throw ParseError(oln, "orient references unknown vertex");
    const auto& rot = d.verts[vid_to_ix[ref.vid]].rot;
    if (ref.slot < 0 || ref.slot >= int(rot.size()))
      throw ParseError(oln, "orient references unknown slot");
    d.orient_pin = rot[ref.slot];
  }
  return d;
}

inline Dessin load_dessin(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_dessin(ss.str());
}

// Canonical text form: boundary vertices numbered along the stored circles,
// inner vertices in breadth-first discovery order from the boundary.
inline std::string serialize_dessin(const Dessin& d) {
  std::map<int, int> file_id;  // internal -> file id
  int next_id = 1;
  for (const auto& circ : d.boundary)
    for (int dart : circ)
      if (!file_id.count(d.darts[dart].vertex))
        file_id[d.darts[dart].vertex] = next_id++;
  // BFS over inner vertices
  std::vector<int> queue;
  for (const auto& circ : d.boundary)
    for (int dart : circ) queue.push_back(d.darts[dart].vertex);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (int dd : d.verts[queue[qi]].rot) {
      int w = d.darts[d.pair_of(dd)].vertex;
      if (!file_id.count(w)) {
        file_id[w] = next_id++;
        queue.push_back(w);
      }
    }
  }
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && !file_id.count(v))
      throw DomainError("Corrupt", "disconnected vertex escapes serialization");

  std::ostringstream os;
  os << "dessin v1 surface="
     << (d.surface.orientable ? "orientable" : "nonorientable") << ":"
     << d.surface.genus << ":" << d.surface.boundary_circles << "\n";
  for (size_t c = 0; c < d.boundary.size(); ++c) {
    os << "boundary " << (c + 1) << ":";
    for (int dart : d.boundary[c]) {
      int v = d.darts[dart].vertex;
      os << " v" << file_id[v] << "(" << to_string(d.verts[v].color) << ")"
         << " -" << to_string(d.darts[dart].color) << "-";
    }
    os << " (close)\n";
  }
  // Inner edges, each once, ordered by (file id, slot) of the smaller end.
  struct Line {
    int vid, slot;
    std::string text;
  };
  std::vector<Line> lines;
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.darts[dd].real) continue;
    int pp = d.pair_of(dd);
    int v = d.darts[dd].vertex, w = d.darts[pp].vertex;
    auto key_a = std::make_pair(file_id[v], d.rot_index(dd));
    auto key_b = std::make_pair(file_id[w], d.rot_index(pp));
    if (key_b < key_a) continue;  // emit from the smaller end once
    if (key_a == key_b && dd > pp) continue;
    std::ostringstream ls;
    ls << "edge " << to_string(d.darts[dd].color) << " v" << file_id[v] << "@"
       << d.rot_index(dd) << " v" << file_id[w] << "@" << d.rot_index(pp);
    lines.push_back(Line{file_id[v], d.rot_index(dd), ls.str()});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.vid, a.slot) < std::tie(b.vid, b.slot);
  });
  for (auto& l : lines) os << l.text << "\n";
  return os.str();
}

}  // namespace dessin
