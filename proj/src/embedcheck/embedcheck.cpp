#include "hypar/embedcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hypar/elementary.hpp"

namespace hypar::embed {

using geom::IVec3;
using ival::SignVerdict;
using ival::certain_sign;

const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Disjoint: return "Disjoint";
    case PairVerdict::Intersecting: return "Intersecting";
    case PairVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::CertainlyEmbedded: return "CertainlyEmbedded";
    case Verdict3::CertainlyIntersecting: return "CertainlyIntersecting";
    case Verdict3::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(MaxRingsResult::Status s) {
  switch (s) {
    case MaxRingsResult::Status::Frontier: return "Frontier";
    case MaxRingsResult::Status::Cap: return "Cap";
    case MaxRingsResult::Status::Infeasible: return "Infeasible";
    case MaxRingsResult::Status::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

int orient(const IPoint3& a, const IPoint3& b, const IPoint3& c, const IPoint3& d) {
  return certain_sign(geom::side_of_plane(d, a, b, c));
}

// Segment pq crosses the interior of triangle t at a single point.
bool segment_pierces(const IPoint3& p, const IPoint3& q, const Triangle& t) {
  const int s1 = orient(t[0], t[1], t[2], p);
  const int s2 = orient(t[0], t[1], t[2], q);
  if (s1 == 0 || s2 == 0 || s1 == s2) return false;
  const int o1 = orient(p, q, t[0], t[1]);
  if (o1 == 0) return false;
  return orient(p, q, t[1], t[2]) == o1 && orient(p, q, t[2], t[0]) == o1;
}

// Strict separation of two point sets along `axis`.
bool separated_along(const IVec3& axis, const IPoint3& origin, const IPoint3* a, int na, const IPoint3* b, int nb) {
  auto range = [&](const IPoint3* pts, int m, ival::BigNum& lo, ival::BigNum& hi) {
    for (int i = 0; i < m; ++i) {
      const Interval d = geom::dot(axis, pts[i] - origin);
      if (i == 0 || compare(d.lo(), lo) < 0) lo = d.lo();
      if (i == 0 || compare(d.hi(), hi) > 0) hi = d.hi();
    }
  };
  ival::BigNum alo, ahi, blo, bhi;
  range(a, na, alo, ahi);
  range(b, nb, blo, bhi);
  return compare(ahi, blo) < 0 || compare(bhi, alo) < 0;
}

PairVerdict disjoint_pair(const Triangle& A, const Triangle& B) {
  const IVec3 ea[3] = {A[1] - A[0], A[2] - A[1], A[0] - A[2]};
  const IVec3 eb[3] = {B[1] - B[0], B[2] - B[1], B[0] - B[2]};
  const IVec3 na = geom::cross(ea[0], ea[1]), nb = geom::cross(eb[0], eb[1]);
  if (separated_along(na, A[0], A.data(), 3, B.data(), 3)) return PairVerdict::Disjoint;
  if (separated_along(nb, A[0], A.data(), 3, B.data(), 3)) return PairVerdict::Disjoint;
  for (const auto& x : ea)
    for (const auto& y : eb)
      if (separated_along(geom::cross(x, y), A[0], A.data(), 3, B.data(), 3)) return PairVerdict::Disjoint;
  // In-plane edge normals; only these can separate coplanar faces.
  for (int i = 0; i < 3; ++i) {
    if (separated_along(geom::cross(na, ea[i]), A[0], A.data(), 3, B.data(), 3)) return PairVerdict::Disjoint;
    if (separated_along(geom::cross(nb, eb[i]), A[0], A.data(), 3, B.data(), 3)) return PairVerdict::Disjoint;
  }
  for (int i = 0; i < 3; ++i) {
    if (segment_pierces(A[i], A[(i + 1) % 3], B)) return PairVerdict::Intersecting;
    if (segment_pierces(B[i], B[(i + 1) % 3], A)) return PairVerdict::Intersecting;
  }
  return PairVerdict::Indeterminate;
}

// Both triangles have the shared vertex p at index 0.
PairVerdict vertex_pair(const Triangle& A, const Triangle& B) {
  const IPoint3& p = A[0];
  const IVec3 a[2] = {A[1] - p, A[2] - p};
  const IVec3 b[2] = {B[1] - p, B[2] - p};
  auto strict_same = [](const Interval& x, const Interval& y) {
    const int sx = certain_sign(sign(x));
    return sx != 0 && sx == certain_sign(sign(y));
  };
  const IVec3 na = geom::cross(a[0], a[1]);
  if (strict_same(geom::dot(na, b[0]), geom::dot(na, b[1]))) return PairVerdict::Disjoint;
  const IVec3 nb = geom::cross(b[0], b[1]);
  if (strict_same(geom::dot(nb, a[0]), geom::dot(nb, a[1]))) return PairVerdict::Disjoint;
  // Plane through p containing one edge of each: the rest of A strictly on
  // one side, the rest of B strictly on the other.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const IVec3 n = geom::cross(a[i], b[j]);
      const int sa = certain_sign(sign(geom::dot(n, a[1 - i])));
      const int sb = certain_sign(sign(geom::dot(n, b[1 - j])));
      if (sa != 0 && sb != 0 && sa != sb) return PairVerdict::Disjoint;
    }
  // Remaining edge-cross planes through p: both far vertices of each face
  // strictly on opposite sides.
  const IVec3 fa = a[1] - a[0], fb = b[1] - b[0];
  const IVec3 axes[] = {geom::cross(fa, b[0]), geom::cross(fa, b[1]), geom::cross(fa, fb),
                        geom::cross(fb, a[0]), geom::cross(fb, a[1])};
  for (const auto& n : axes) {
    const int s0 = certain_sign(sign(geom::dot(n, a[0])));
    const int s1 = certain_sign(sign(geom::dot(n, a[1])));
    const int t0 = certain_sign(sign(geom::dot(n, b[0])));
    const int t1 = certain_sign(sign(geom::dot(n, b[1])));
    if (s0 != 0 && s0 == s1 && t0 != 0 && t0 == t1 && s0 != t0) return PairVerdict::Disjoint;
  }
  if (segment_pierces(A[1], A[2], B) || segment_pierces(B[1], B[2], A)) return PairVerdict::Intersecting;
  return PairVerdict::Indeterminate;
}

}  // namespace

PairVerdict tri_tri_verdict(const Triangle& t1, const Triangle& t2, Adjacency adj) {
  switch (adj) {
    case Adjacency::Disjoint: return disjoint_pair(t1, t2);
    case Adjacency::ShareVertex: return vertex_pair(t1, t2);
    case Adjacency::ShareEdge:
      // Two faces on a common hinge overlap only if folded flat onto each other.
      return orient(t1[0], t1[1], t1[2], t2[2]) != 0 ? PairVerdict::Disjoint : PairVerdict::Indeterminate;
  }
  return PairVerdict::Indeterminate;
}

nlohmann::json EmbedReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = embed::to_string(verdict);
  j["offending_pair"] = offending ? nlohmann::json(*offending) : nlohmann::json(nullptr);
  j["indeterminate_pairs"] = indeterminate;
  j["faces"] = faces;
  j["pairs_total"] = pairs_total;
  j["pairs_edge_adjacent"] = pairs_edge_adjacent;
  j["pairs_tested"] = pairs_tested;
  j["pairs_vertex_adjacent"] = pairs_vertex_adjacent;
  j["pairs_box_culled"] = pairs_box_culled;
  j["pairs_full_precision"] = pairs_full_precision;
  j["digits"] = digits;
  j["wall_seconds"] = seconds;
  return j;
}

namespace {

struct Box {
  double lo[3], hi[3];
};

Box box_of(const Triangle& t) {
  Box b;
  const Interval IPoint3::*axes[3] = {&IPoint3::x, &IPoint3::y, &IPoint3::z};
  for (int k = 0; k < 3; ++k) {
    b.lo[k] = HUGE_VAL;
    b.hi[k] = -HUGE_VAL;
    for (const auto& p : t) {
      b.lo[k] = std::min(b.lo[k], (p.*axes[k]).lo().to_double(ival::Round::Down));
      b.hi[k] = std::max(b.hi[k], (p.*axes[k]).hi().to_double(ival::Round::Up));
    }
  }
  return b;
}

bool boxes_apart(const Box& a, const Box& b) {
  for (int k = 0; k < 3; ++k)
    if (a.hi[k] < b.lo[k] || b.hi[k] < a.lo[k]) return true;
  return false;
}

// Orders the two faces so that shared vertices come first, in the same order.
Adjacency arrange(const std::array<int, 3>& f, const std::array<int, 3>& g, std::array<int, 3>& fo,
                  std::array<int, 3>& go) {
  std::array<int, 3> shared{};
  int ns = 0;
  for (int v : f)
    if (std::find(g.begin(), g.end(), v) != g.end()) shared[ns++] = v;
  auto order = [&](const std::array<int, 3>& t, std::array<int, 3>& out) {
    int m = 0;
    for (int i = 0; i < ns; ++i) out[m++] = shared[i];
    for (int v : t)
      if (std::find(shared.begin(), shared.begin() + ns, v) == shared.begin() + ns) out[m++] = v;
  };
  order(f, fo);
  order(g, go);
  return ns == 0 ? Adjacency::Disjoint : ns == 1 ? Adjacency::ShareVertex : Adjacency::ShareEdge;
}

}  // namespace

EmbedReport check_new_faces(const fold::FoldState& state, int first_face, const EmbedOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  EmbedReport rep;
  rep.digits = state.digits;
  const auto& faces = state.pattern.faces;
  const int F = static_cast<int>(faces.size());
  rep.faces = F;

  const int screen = std::min(opt.screen_digits, state.digits);
  std::vector<IPoint3> coarse;
  coarse.reserve(state.positions.size());
  for (const auto& p : state.positions) coarse.push_back(geom::with_digits(p, screen));

  auto tri = [&](const std::vector<IPoint3>& P, const std::array<int, 3>& f) -> Triangle {
    return {P[f[0]], P[f[1]], P[f[2]]};
  };
  std::vector<Box> boxes;
  boxes.reserve(F);
  for (const auto& f : faces) boxes.push_back(box_of(tri(state.positions, f)));

  for (int f = std::max(first_face, 0); f < F; ++f) {
    for (int g = 0; g < f; ++g) {
      ++rep.pairs_total;
      std::array<int, 3> fo{}, go{};
      const Adjacency adj = arrange(faces[f], faces[g], fo, go);
      if (adj == Adjacency::ShareEdge)
        ++rep.pairs_edge_adjacent;
      else
        ++rep.pairs_tested;
      if (adj == Adjacency::ShareVertex) ++rep.pairs_vertex_adjacent;
      if (adj == Adjacency::Disjoint && boxes_apart(boxes[f], boxes[g])) {
        ++rep.pairs_box_culled;
        continue;
      }
      PairVerdict v = tri_tri_verdict(tri(coarse, fo), tri(coarse, go), adj);
      if (v == PairVerdict::Indeterminate && screen < state.digits) {
        ++rep.pairs_full_precision;
        v = tri_tri_verdict(tri(state.positions, fo), tri(state.positions, go), adj);
      }
      if (v == PairVerdict::Intersecting && !rep.offending) rep.offending = std::array<int, 2>{g, f};
      if (v == PairVerdict::Indeterminate) rep.indeterminate.push_back({g, f});
    }
  }
  rep.verdict = rep.offending              ? Verdict3::CertainlyIntersecting
                : rep.indeterminate.empty() ? Verdict3::CertainlyEmbedded
                                            : Verdict3::Indeterminate;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

EmbedReport check_embedding(const fold::FoldState& state, const EmbedOptions& opt) {
  return check_new_faces(state, 0, opt);
}

MaxRingsResult max_rings(const mpq_class& theta_deg, pattern::Kind kind, const MaxRingsOptions& opt) {
  if (theta_deg <= 0 || theta_deg >= 180) throw std::invalid_argument("max_rings: theta must lie in (0, 180)");
  if (opt.n_cap < 1 || opt.digits_start < 4 || opt.digits_start > opt.digits_max)
    throw std::invalid_argument("max_rings: bad options");
  MaxRingsResult out;
  int digits = opt.digits_start;
  int verified = 0;  // rings certified constructed and embedded
  std::optional<fold::FoldState> st;
  std::string last_issue;

  auto escalate = [&](const std::string& why) {
    last_issue = why;
    digits *= 2;
    st.reset();
    return digits <= opt.digits_max;
  };
  auto first_face_of_ring = [](int k) { return k == 1 ? 0 : static_cast<int>(pattern::face_count(k - 1)); };

  for (;;) {
    if (!st) {
      st = fold::place_central(theta_deg, kind, digits, opt.scheme);
      std::optional<fold::ConstructError> err;
      while (st->rings() < std::max(verified, 1) && !(err = fold::ring_step(*st))) {
      }
      if (err) {
        if (!err->numerical()) {
          out.status = MaxRingsResult::Status::Infeasible;
          out.n_max = st->rings();
          out.detail = err->describe();
          break;
        }
        if (!escalate(err->describe())) break;
        continue;
      }
    }
    if (verified >= opt.n_cap) {
      out.status = MaxRingsResult::Status::Cap;
      break;
    }
    if (verified > 0) {
      if (auto err = fold::ring_step(*st)) {
        if (!err->numerical()) {
          out.status = MaxRingsResult::Status::Infeasible;
          out.detail = err->describe();
          break;
        }
        if (!escalate(err->describe())) break;
        continue;
      }
    }
    const int k = st->rings();
    const EmbedReport rep = check_new_faces(*st, first_face_of_ring(k), opt.embed);
    if (rep.verdict == Verdict3::CertainlyIntersecting) {
      out.status = MaxRingsResult::Status::Frontier;
      out.offending = rep.offending;
      out.detail = "ring " + std::to_string(k) + " self-intersects";
      break;
    }
    if (rep.verdict == Verdict3::Indeterminate) {
      if (!escalate("ring " + std::to_string(k) + ": " + std::to_string(rep.indeterminate.size()) +
                    " indeterminate face pairs"))
        break;
      continue;
    }
    verified = k;
  }
  out.n_max = verified;
  if (digits > opt.digits_max) {
    out.status = MaxRingsResult::Status::Unknown;
    out.detail = "precision exhausted at " + std::to_string(opt.digits_max) + " digits: " + last_issue;
    out.digits_used = opt.digits_max;
  } else {
    out.digits_used = digits;
  }
  return out;
}

std::vector<mpq_class> default_phi_grid() {
  std::vector<mpq_class> g;
  for (int d = 1; d < 180; d += 2) g.emplace_back(d);
  return g;
}

bool FourTriangleReport::passed() const {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.passed(); });
}

FourTriangleReport four_triangle_obstruction(const std::vector<mpq_class>& phi_grid, int digits) {
  FourTriangleReport rep;
  rep.digits = digits;
  const IVec3 origin = IVec3::exact(0, 0, 0, digits);
  const IVec3 v1 = IVec3::exact(1, 0, 0, digits);
  const IVec3 v2 = IVec3::exact(0, 1, 0, digits);
  const ival::BigNum tol(mpz_class(1), -static_cast<std::int64_t>(digits) + 6);
  for (const auto& phi : phi_grid) {
    FourTriangleCase c;
    c.phi_deg = phi;
    if (phi == 0) {
      c.trivial_input = true;
      rep.cases.push_back(c);
      continue;
    }
    // Folding edge 2 (along v2) by phi swings v3 out of the flat position -v1.
    const auto [s, co] = ival::sincos_deg(phi, digits);
    const IVec3 v3{-co, Interval::exact(0, digits), s};
    c.perpendicular = sign(geom::dot(v2, v1)) == SignVerdict::CertainlyZero &&
                      sign(geom::dot(v2, v3)) == SignVerdict::CertainlyZero;
    c.nonparallel = sign(geom::norm_sq(geom::cross(v1, v3))) == SignVerdict::CertainlyPositive;
    // v4: unit length and at 90 degrees to both v1 and v3.
    const Interval one = Interval::exact(1, digits), two = Interval::exact(2, digits);
    const auto tri = geom::trisphere(origin, one, v1, two, v3, two);
    c.v4_found = tri.status == geom::TrisphereStatus::Ok;
    if (c.v4_found) {
      const IVec3 x = geom::cross(v2, tri.pair.minus);
      c.cross_width = Interval(ival::BigNum(), ival::max(ival::max(width(x.x), width(x.y)), width(x.z)), digits);
      c.parallel = x.x.contains_zero() && x.y.contains_zero() && x.z.contains_zero() &&
                   compare(c.cross_width.hi(), tol) <= 0;
    }
    rep.cases.push_back(c);
  }
  return rep;
}

Degree4Report degree4_sign_audit(const pattern::CreasePattern& p, const std::vector<int>& signs) {
  Degree4Report rep;
  std::vector<std::vector<int>> incident(p.vertex_count());
  for (int i = 0; i < static_cast<int>(p.creases.size()); ++i) {
    incident[p.creases[i].a].push_back(i);
    incident[p.creases[i].b].push_back(i);
  }
  for (int v = 0; v < p.vertex_count(); ++v) {
    const pattern::CornerId cv = pattern::CornerId::from_id(v);
    if (cv.ring >= p.n || incident[v].size() != 4) continue;
    ++rep.vertices;
    const auto [vx, vy] = pattern::planar_coords(cv);
    struct Ray {
      long dx, dy;
      int sign;
      int crease;
    };
    std::vector<Ray> rays;
    for (int ci : incident[v]) {
      const auto& c = p.creases[ci];
      const auto [wx, wy] = pattern::planar_coords(pattern::CornerId::from_id(c.a == v ? c.b : c.a));
      rays.push_back({wx - vx, wy - vy, signs.at(ci), ci});
    }
    std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) {
      return std::atan2(static_cast<double>(a.dy), static_cast<double>(a.dx)) <
             std::atan2(static_cast<double>(b.dy), static_cast<double>(b.dx));
    });
    if (std::any_of(rays.begin(), rays.end(), [](const Ray& r) { return r.sign == 0; })) {
      ++rep.indeterminate;
      continue;
    }
    const int plus = static_cast<int>(std::count_if(rays.begin(), rays.end(), [](const Ray& r) { return r.sign > 0; }));
    const std::string where = pattern::to_string(cv);
    if (plus != 1 && plus != 3) {
      rep.failures.push_back({v, where + ": " + std::to_string(plus) + " mountains and " + std::to_string(4 - plus) +
                                     " valleys, expected exactly one odd crease"});
      continue;
    }
    const int odd_sign = plus == 1 ? 1 : -1;
    int j = 0;
    while (rays[j].sign != odd_sign) ++j;
    const Ray& prev = rays[(j + 3) % 4];
    const Ray& next = rays[(j + 1) % 4];
    // The two sectors around the odd crease sum to 180 degrees or more
    // exactly when the turn from prev to next is not a strict left turn.
    if (prev.dx * next.dy - prev.dy * next.dx <= 0) {
      rep.failures.push_back({v, where + ": odd crease " + std::to_string(rays[j].crease) +
                                     " lies between sectors summing to at least 180 degrees"});
      continue;
    }
    ++rep.passed;
  }
  return rep;
}

Degree4Report degree4_sign_audit(const fold::FoldState& state) {
  std::vector<int> signs;
  for (int i = 0; i < static_cast<int>(state.pattern.creases.size()); ++i)
    signs.push_back(certain_sign(fold::crease_sign(state, i)));
  return degree4_sign_audit(state.pattern, signs);
}

}  // namespace hypar::embed
