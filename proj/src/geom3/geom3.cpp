#include "hypar/geom3.hpp"

#include <algorithm>

#include "hypar/elementary.hpp"

namespace hypar::geom {

using ival::SqrtPolicy;

IVec3 operator+(const IVec3& a, const IVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
IVec3 operator-(const IVec3& a, const IVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
IVec3 operator-(const IVec3& a) { return {-a.x, -a.y, -a.z}; }
IVec3 scale(const IVec3& a, const Interval& s) { return {a.x * s, a.y * s, a.z * s}; }
Interval dot(const IVec3& a, const IVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

IVec3 cross(const IVec3& a, const IVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Interval norm_sq(const IVec3& a) { return sqr(a.x) + sqr(a.y) + sqr(a.z); }
Interval dist_sq(const IPoint3& p, const IPoint3& q) { return norm_sq(p - q); }

IVec3 with_digits(const IVec3& a, int digits) {
  return {a.x.with_digits(digits), a.y.with_digits(digits), a.z.with_digits(digits)};
}

IVec3 hull(const IVec3& a, const IVec3& b) {
  return {ival::hull(a.x, b.x), ival::hull(a.y, b.y), ival::hull(a.z, b.z)};
}

const char* to_string(TrisphereStatus s) {
  switch (s) {
    case TrisphereStatus::Ok: return "Ok";
    case TrisphereStatus::CertainlyInfeasible: return "CertainlyInfeasible";
    case TrisphereStatus::IndeterminateRadicand: return "IndeterminateRadicand";
    case TrisphereStatus::CollinearCenters: return "CollinearCenters";
  }
  return "?";
}

const char* to_string(Trilateration t) { return t == Trilateration::Frame ? "frame" : "gram"; }

namespace {

// With u = c2 - c1, v = c3 - c1 and n = u x v, write P - c1 = (a u + b v + h n)/D
// where D = |n|^2. The two plane equations |P-c1|^2 - |P-ci|^2 = r1 - ri give
// a 2x2 Gram system whose solution scaled by D is (alpha, beta); the remaining
// equation |P - c1|^2 = r1 fixes h^2 = N / D with N below.
TrisphereResult trisphere_gram(const IPoint3& c1, const Interval& r1sq, const IPoint3& c2, const Interval& r2sq,
                               const IPoint3& c3, const Interval& r3sq) {
  TrisphereResult out;
  const IVec3 u = c2 - c1;
  const IVec3 v = c3 - c1;
  const IVec3 n = cross(u, v);
  const Interval D = norm_sq(n);
  if (sign(D) != SignVerdict::CertainlyPositive) return out;

  const Interval uu = norm_sq(u), vv = norm_sq(v), uv = dot(u, v);
  const Interval a1 = (r1sq - r2sq + uu) / 2;
  const Interval a2 = (r1sq - r3sq + vv) / 2;
  const Interval alpha = a1 * vv - a2 * uv;
  const Interval beta = a2 * uu - a1 * uv;
  out.radicand = r1sq * D - (a1 * alpha + a2 * beta);

  switch (sign(out.radicand)) {
    case SignVerdict::CertainlyNegative: out.status = TrisphereStatus::CertainlyInfeasible; return out;
    case SignVerdict::CertainlyPositive: break;
    default: out.status = TrisphereStatus::IndeterminateRadicand; return out;
  }
  const Interval root = ival::sqrt(out.radicand);
  const IVec3 base = scale(u, alpha) + scale(v, beta);
  const IVec3 off = scale(n, root);
  out.pair.plus = c1 + IVec3{(base.x + off.x) / D, (base.y + off.y) / D, (base.z + off.z) / D};
  out.pair.minus = c1 + IVec3{(base.x - off.x) / D, (base.y - off.y) / D, (base.z - off.z) / D};
  out.status = TrisphereStatus::Ok;
  return out;
}

// Textbook trilateration: ex along c2 - c1, ey completing the plane of the
// centers, ez = ex x ey; then x and y from the two linear equations and
// z^2 = r1 - x^2 - y^2.
TrisphereResult trisphere_frame(const IPoint3& c1, const Interval& r1sq, const IPoint3& c2, const Interval& r2sq,
                                const IPoint3& c3, const Interval& r3sq) {
  TrisphereResult out;
  const IVec3 u = c2 - c1;
  const IVec3 v = c3 - c1;
  if (sign(norm_sq(cross(u, v))) != SignVerdict::CertainlyPositive) return out;
  if (sign(norm_sq(u)) != SignVerdict::CertainlyPositive) return out;

  const Interval d = ival::sqrt(norm_sq(u));
  const IVec3 ex = scale(u, Interval::exact(1, d.digits()) / d);
  const Interval i = dot(ex, v);
  const IVec3 w = v - scale(ex, i);
  const Interval wn = norm_sq(w);
  if (sign(wn) != SignVerdict::CertainlyPositive) return out;
  const IVec3 ey = scale(w, Interval::exact(1, d.digits()) / ival::sqrt(wn));
  const IVec3 ez = cross(ex, ey);
  const Interval j = dot(ey, v);
  if (sign(j) != SignVerdict::CertainlyPositive) return out;

  const Interval x = (r1sq - r2sq + sqr(d)) / (d * 2);
  const Interval y = (r1sq - r3sq + sqr(i) + sqr(j)) / (j * 2) - i * x / j;
  out.radicand = r1sq - sqr(x) - sqr(y);
  switch (sign(out.radicand)) {
    case SignVerdict::CertainlyNegative: out.status = TrisphereStatus::CertainlyInfeasible; return out;
    case SignVerdict::CertainlyPositive: break;
    default: out.status = TrisphereStatus::IndeterminateRadicand; return out;
  }
  const Interval z = ival::sqrt(out.radicand);
  const IPoint3 base = c1 + scale(ex, x) + scale(ey, y);
  out.pair.plus = base + scale(ez, z);
  out.pair.minus = base - scale(ez, z);
  out.status = TrisphereStatus::Ok;
  return out;
}

}  // namespace

TrisphereResult trisphere(const IPoint3& c1, const Interval& r1sq, const IPoint3& c2, const Interval& r2sq,
                          const IPoint3& c3, const Interval& r3sq, Trilateration scheme) {
  return scheme == Trilateration::Frame ? trisphere_frame(c1, r1sq, c2, r2sq, c3, r3sq)
                                        : trisphere_gram(c1, r1sq, c2, r2sq, c3, r3sq);
}

SignVerdict side_of_plane(const IPoint3& p, const IPoint3& a, const IPoint3& b, const IPoint3& c) {
  return sign(dot(cross(b - a, c - a), p - a));
}

namespace {

void require_hinge(const IVec3& h, const IVec3& wa_rel, const IVec3& wb_rel) {
  if (sign(norm_sq(h)) != SignVerdict::CertainlyPositive) throw DegenerateHinge("hinge endpoints not certainly distinct");
  if (sign(norm_sq(cross(h, wa_rel))) != SignVerdict::CertainlyPositive ||
      sign(norm_sq(cross(h, wb_rel))) != SignVerdict::CertainlyPositive)
    throw DegenerateHinge("wing not certainly off the hinge line");
}

}  // namespace

SignVerdict dihedral_sign(const IPoint3& h1, const IPoint3& h2, const IPoint3& wa, const IPoint3& wb) {
  const IVec3 h = h2 - h1, a = wa - h1, b = wb - h1;
  require_hinge(h, a, b);
  return sign(dot(cross(h, a), b));
}

Interval fold_angle(const IPoint3& h1, const IPoint3& h2, const IPoint3& wa, const IPoint3& wb, int acos_digits) {
  const IVec3 h = h2 - h1, a = wa - h1, b = wb - h1;
  require_hinge(h, a, b);
  const IVec3 na = cross(h, a);
  const IVec3 nb = cross(b, h);
  const Interval len = ival::sqrt(norm_sq(na) * norm_sq(nb));
  const int d = std::min(acos_digits, h.digits());
  const Interval magnitude = ival::acos_deg((dot(na, nb) / len).with_digits(d), d);
  switch (sign(dot(na, b))) {
    case SignVerdict::CertainlyPositive: return magnitude;
    case SignVerdict::CertainlyNegative: return -magnitude;
    default: return ival::hull(magnitude, -magnitude);
  }
}

}  // namespace hypar::geom
