#include "hypar/pattern.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace hypar::pattern {

const char* to_string(Kind k) { return k == Kind::Asymmetric ? "asym" : "alt"; }

std::optional<Kind> parse_kind(const std::string& s) {
  if (s == "asym" || s == "asymmetric" || s == "Asymmetric") return Kind::Asymmetric;
  if (s == "alt" || s == "alternating" || s == "AlternatingAsymmetric") return Kind::AlternatingAsymmetric;
  return std::nullopt;
}

const char* to_string(Corner c) {
  static constexpr const char* names[] = {"LL", "LR", "UR", "UL"};
  return names[c];
}

std::string to_string(CornerId v) { return std::string(to_string(v.corner)) + "(" + std::to_string(v.ring) + ")"; }

const char* to_string(CreaseKind k) {
  switch (k) {
    case CreaseKind::CentralDiagonal: return "CentralDiagonal";
    case CreaseKind::SquareEdge: return "SquareEdge";
    case CreaseKind::MainDiagonal: return "MainDiagonal";
    case CreaseKind::TriangulationDiagonal: return "TriangulationDiagonal";
  }
  return "?";
}

const char* to_string(Side s) {
  static constexpr const char* names[] = {"bottom", "right", "top", "left"};
  return names[s];
}

std::pair<long, long> planar_coords(CornerId v) {
  static constexpr int sx[] = {-1, 1, 1, -1};
  static constexpr int sy[] = {-1, -1, 1, 1};
  return {static_cast<long>(sx[v.corner]) * v.ring, static_cast<long>(sy[v.corner]) * v.ring};
}

long planar_dist_sq(CornerId a, CornerId b) {
  const auto [ax, ay] = planar_coords(a);
  const auto [bx, by] = planar_coords(b);
  return (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
}

std::array<Corner, 2> receivers(int k, Kind kind) {
  if (kind == Kind::AlternatingAsymmetric && k >= 3 && k % 2 == 1) return {LR, UL};
  return {LL, UR};
}

std::array<Corner, 2> emitters(int k, Kind kind) {
  const auto r = receivers(k, kind);
  if (r[0] == LL) return {LR, UL};
  return {LL, UR};
}

int square_sign(int k) { return k % 2 == 0 ? 1 : -1; }
int main_diagonal_sign(int k) { return square_sign(k - 1); }

int CreasePattern::face_ring(int f) const {
  const auto& t = faces[f];
  return std::max({t[0], t[1], t[2]}) / 4 + 1;
}

namespace {

bool is_receiver(Corner c, int k, Kind kind) {
  const auto r = receivers(k, kind);
  return c == r[0] || c == r[1];
}

// Classify an undirected pattern edge and orient it canonically.
Crease classify(int u, int v) {
  CornerId p = CornerId::from_id(u), q = CornerId::from_id(v);
  if (p.ring > q.ring || (p.ring == q.ring && p.corner > q.corner)) std::swap(p, q);
  Crease c;
  if (p.ring == q.ring) {
    if (p.ring == 1 && p.corner == LL && q.corner == UR) {
      c.kind = CreaseKind::CentralDiagonal;
      c.ring = 1;
      c.a = p.id();
      c.b = q.id();
      c.mv = 1;
    } else {
      // Orient along the counter-clockwise walk of the square.
      if ((p.corner + 1) % 4 != q.corner) std::swap(p, q);
      c.kind = CreaseKind::SquareEdge;
      c.ring = p.ring;
      c.index = p.corner;
      c.a = p.id();
      c.b = q.id();
      c.mv = square_sign(p.ring);
    }
  } else {
    c.ring = q.ring;
    c.a = p.id();
    c.b = q.id();
    if (p.corner == q.corner) {
      c.kind = CreaseKind::MainDiagonal;
      c.index = q.corner;
      c.mv = main_diagonal_sign(q.ring);
    } else {
      c.kind = CreaseKind::TriangulationDiagonal;
      c.index = (p.corner + 1) % 4 == q.corner ? p.corner : q.corner;
      c.mv = 0;
    }
  }
  c.len_sq = planar_dist_sq(p, q);
  return c;
}

}  // namespace

CreasePattern build_pattern(int n, Kind kind) {
  if (n < 1) throw std::invalid_argument("build_pattern: n must be at least 1");
  CreasePattern p;
  p.n = n;
  p.kind = kind;
  const auto id = [](int k, int c) { return CornerId{k, static_cast<Corner>(c)}.id(); };

  p.faces.push_back({id(1, LL), id(1, LR), id(1, UR)});
  p.faces.push_back({id(1, LL), id(1, UR), id(1, UL)});
  for (int k = 2; k <= n; ++k) {
    for (int s = 0; s < 4; ++s) {
      const int A = s, B = (s + 1) % 4;
      const int a = id(k, A), b = id(k, B), a_in = id(k - 1, A), b_in = id(k - 1, B);
      if (is_receiver(static_cast<Corner>(A), k, kind)) {
        p.faces.push_back({a, b, b_in});
        p.faces.push_back({a, b_in, a_in});
      } else {
        p.faces.push_back({a, b, a_in});
        p.faces.push_back({b, b_in, a_in});
      }
    }
  }

  // directed edge -> (face, third vertex)
  std::map<std::pair<int, int>, std::pair<int, int>> half;
  for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
    const auto& t = p.faces[f];
    for (int i = 0; i < 3; ++i) half[{t[i], t[(i + 1) % 3]}] = {f, t[(i + 2) % 3]};
  }
  for (const auto& [e, fw] : half) {
    const auto [u, v] = e;
    if (u > v && half.count({v, u})) continue;  // interior edge, visited from the other side
    if (!half.count({v, u})) {
      p.boundary.push_back({u, v});
      continue;
    }
    Crease c = classify(u, v);
    const auto& l = half.at({c.a, c.b});
    const auto& r = half.at({c.b, c.a});
    c.left_face = l.first;
    c.left_wing = l.second;
    c.right_face = r.first;
    c.right_wing = r.second;
    p.creases.push_back(c);
  }
  std::sort(p.creases.begin(), p.creases.end(), [](const Crease& x, const Crease& y) {
    return std::tie(x.ring, x.kind, x.index, x.a) < std::tie(y.ring, y.kind, y.index, y.a);
  });
  return p;
}

nlohmann::json to_json(const CreasePattern& p) {
  using nlohmann::json;
  json doc;
  doc["format"] = "hypar-pattern";
  doc["version"] = 1;
  doc["n"] = p.n;
  doc["kind"] = to_string(p.kind);
  json verts = json::array();
  for (int v = 0; v < p.vertex_count(); ++v) {
    const CornerId c = CornerId::from_id(v);
    const auto [x, y] = planar_coords(c);
    verts.push_back({{"id", v}, {"ring", c.ring}, {"corner", to_string(c.corner)}, {"x", x}, {"y", y}});
  }
  doc["vertices"] = std::move(verts);
  json creases = json::array();
  for (const auto& c : p.creases) {
    json e = {{"kind", to_string(c.kind)}, {"ring", c.ring}, {"a", c.a}, {"b", c.b}, {"len_sq", c.len_sq}};
    if (c.kind == CreaseKind::MainDiagonal)
      e["corner"] = to_string(static_cast<Corner>(c.index));
    else if (c.kind != CreaseKind::CentralDiagonal)
      e["side"] = to_string(static_cast<Side>(c.index));
    if (c.mv != 0)
      e["mv"] = c.mv;
    else
      e["mv"] = nullptr;
    creases.push_back(std::move(e));
  }
  doc["creases"] = std::move(creases);
  doc["faces"] = p.faces;
  doc["boundary"] = p.boundary;
  return doc;
}

}  // namespace hypar::pattern
