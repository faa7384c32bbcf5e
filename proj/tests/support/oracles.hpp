#pragma once

#include <array>
#include <optional>

#include <gmpxx.h>

#include "hypar/geom3.hpp"
#include "support.hpp"

namespace testing {

using Q3 = std::array<mpq_class, 3>;

inline Q3 operator-(const Q3& a, const Q3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline mpq_class qdot(const Q3& a, const Q3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Q3 qcross(const Q3& a, const Q3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Sign of a + b sqrt(t) for rationals a, b and t >= 0, decided exactly.
inline int sign_plus_root(const mpq_class& a, const mpq_class& b, const mpq_class& t) {
  const int sa = sgn(a), sb = t == 0 ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int c = cmp(a * a, b * b * t);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

/// The two sphere intersections as p0 +- sqrt(t) d, where d is the oriented
/// normal (c2 - c1) x (c3 - c1). Obtained by subtracting the sphere
/// equations pairwise (two planes), parametrizing their common line and
/// substituting into the first sphere; t < 0 means no real intersection.
struct ExactTrisphere {
  Q3 p0, d;
  mpq_class t;
};

inline std::optional<ExactTrisphere> eliminate(const Q3& c1, const mpq_class& r1, const Q3& c2, const mpq_class& r2,
                                               const Q3& c3, const mpq_class& r3) {
  const Q3 n1 = c2 - c1, n2 = c3 - c1;
  const Q3 d = qcross(n1, n2);
  if (qdot(d, d) == 0) return std::nullopt;
  // With X = c1 + q: 2 n_i . q = r1 - r_i + |n_i|^2.
  const mpq_class b1 = (r1 - r2 + qdot(n1, n1)) / 2, b2 = (r1 - r3 + qdot(n2, n2)) / 2;
  // q = al n1 + be n2 solves the in-plane part; Cramer on the Gram matrix.
  const mpq_class g11 = qdot(n1, n1), g12 = qdot(n1, n2), g22 = qdot(n2, n2);
  const mpq_class det = g11 * g22 - g12 * g12;
  const mpq_class al = (b1 * g22 - b2 * g12) / det, be = (b2 * g11 - b1 * g12) / det;
  const Q3 q = {al * n1[0] + be * n2[0], al * n1[1] + be * n2[1], al * n1[2] + be * n2[2]};
  // q is orthogonal to d, so |q + s d|^2 = r1 gives s^2 = (r1 - |q|^2) / |d|^2.
  ExactTrisphere out;
  out.p0 = {c1[0] + q[0], c1[1] + q[1], c1[2] + q[2]};
  out.d = d;
  out.t = (r1 - qdot(q, q)) / qdot(d, d);
  return out;
}

/// Interval v contains a + b sqrt(t).
inline bool contains_root_expr(const hypar::ival::Interval& v, const mpq_class& a, const mpq_class& b,
                               const mpq_class& t) {
  return sign_plus_root(a - v.lo().to_rational(), b, t) >= 0 && sign_plus_root(v.hi().to_rational() - a, -b, t) >= 0;
}

/// Point enclosure p contains p0 + s sqrt(t) d (s = +1 or -1).
inline bool contains_solution(const hypar::geom::IPoint3& p, const ExactTrisphere& e, int s) {
  return contains_root_expr(p.x, e.p0[0], s * e.d[0], e.t) && contains_root_expr(p.y, e.p0[1], s * e.d[1], e.t) &&
         contains_root_expr(p.z, e.p0[2], s * e.d[2], e.t);
}

inline hypar::geom::IPoint3 to_ipoint(const Q3& q, int digits) {
  using hypar::ival::Interval;
  return {Interval::from_rational(q[0], digits), Interval::from_rational(q[1], digits),
          Interval::from_rational(q[2], digits)};
}

struct TrisphereCase {
  Q3 c[3];
  mpq_class r[3];
  ExactTrisphere exact;
};

/// Random non-collinear rational centers with squared radii admitting two
/// real intersections. With `perturb` the radii are moved off the values of
/// a rational point so that the solutions are irrational.
inline TrisphereCase random_trisphere_case(bool perturb) {
  auto coord = [] { return mpq_class(uniform(-60, 60), uniform(1, 7)); };
  for (;;) {
    TrisphereCase tc;
    for (auto& c : tc.c) c = {coord(), coord(), coord()};
    for (auto& c : tc.c)
      for (auto& v : c) v.canonicalize();
    const Q3 p = {coord(), coord(), coord()};
    for (int i = 0; i < 3; ++i) {
      const Q3 dv = p - tc.c[i];
      tc.r[i] = qdot(dv, dv);
      if (perturb) tc.r[i] += mpq_class(uniform(-1000, 1000), 997);
      tc.r[i].canonicalize();
    }
    const auto e = eliminate(tc.c[0], tc.r[0], tc.c[1], tc.r[1], tc.c[2], tc.r[2]);
    // Keep the configuration clear of collinearity and tangency.
    if (!e || e->t * qdot(e->d, e->d) < mpq_class(1, 100)) continue;
    const Q3 n1 = tc.c[1] - tc.c[0], n2 = tc.c[2] - tc.c[0];
    if (qdot(e->d, e->d) < qdot(n1, n1) * qdot(n2, n2) / 100) continue;
    tc.exact = *e;
    return tc;
  }
}

/// Both candidates returned by trisphere enclose the oracle solutions with
/// the documented orientation (plus on the side of the normal).
inline bool trisphere_matches_oracle(const TrisphereCase& tc, hypar::geom::Trilateration scheme, int digits) {
  using hypar::ival::Interval;
  const auto res = hypar::geom::trisphere(
      to_ipoint(tc.c[0], digits), Interval::from_rational(tc.r[0], digits), to_ipoint(tc.c[1], digits),
      Interval::from_rational(tc.r[1], digits), to_ipoint(tc.c[2], digits), Interval::from_rational(tc.r[2], digits),
      scheme);
  return res.status == hypar::geom::TrisphereStatus::Ok && contains_solution(res.pair.plus, tc.exact, +1) &&
         contains_solution(res.pair.minus, tc.exact, -1);
}

}  // namespace testing
