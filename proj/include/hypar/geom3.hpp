#pragma once

#include <stdexcept>
#include <string>

#include "hypar/interval.hpp"

namespace hypar::geom {

using ival::Interval;
using ival::SignVerdict;

struct IVec3 {
  Interval x, y, z;

  static IVec3 exact(long x, long y, long z, int digits) {
    return {Interval::exact(x, digits), Interval::exact(y, digits), Interval::exact(z, digits)};
  }
  int digits() const { return x.digits(); }
  bool contains(const mpq_class& px, const mpq_class& py, const mpq_class& pz) const {
    return x.contains(px) && y.contains(py) && z.contains(pz);
  }
};
/// A certified region holding one exact point.
using IPoint3 = IVec3;

IVec3 operator+(const IVec3& a, const IVec3& b);
IVec3 operator-(const IVec3& a, const IVec3& b);
IVec3 operator-(const IVec3& a);
IVec3 scale(const IVec3& a, const Interval& s);
Interval dot(const IVec3& a, const IVec3& b);
IVec3 cross(const IVec3& a, const IVec3& b);
Interval norm_sq(const IVec3& a);
Interval dist_sq(const IPoint3& p, const IPoint3& q);
IVec3 with_digits(const IVec3& a, int digits);
/// Componentwise hull.
IVec3 hull(const IVec3& a, const IVec3& b);

struct SpherePair {
  IPoint3 plus;   // on the side of (c2 - c1) x (c3 - c1)
  IPoint3 minus;  // mirror image through the plane of the centers
};

enum class TrisphereStatus { Ok, CertainlyInfeasible, IndeterminateRadicand, CollinearCenters };

const char* to_string(TrisphereStatus s);

struct TrisphereResult {
  TrisphereStatus status = TrisphereStatus::CollinearCenters;
  SpherePair pair;     // valid only when status == Ok
  Interval radicand;   // D * (squared height above the center plane); empty for CollinearCenters
};

/// Expression arrangement used to evaluate the intersection.
enum class Trilateration {
  Frame,  // orthonormal frame from the center differences (three extra roots)
  Gram,   // unnormalized Gram system, single root
};

const char* to_string(Trilateration t);

/// Intersection of three spheres given by centers and squared radii.
TrisphereResult trisphere(const IPoint3& c1, const Interval& r1sq, const IPoint3& c2, const Interval& r2sq,
                          const IPoint3& c3, const Interval& r3sq, Trilateration scheme = Trilateration::Frame);

/// Sign of det[b - a, c - a, p - a].
SignVerdict side_of_plane(const IPoint3& p, const IPoint3& a, const IPoint3& b, const IPoint3& c);

class DegenerateHinge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sign of dot(cross(h2 - h1, wa - h1), wb - h1). With wa the wing to the
/// right of h1->h2 and wb the one to its left (seen from the top side of
/// the paper), + is a mountain fold and - a valley fold.
/// Throws DegenerateHinge unless h1 != h2 and both wings are certainly off
/// the hinge line.
SignVerdict dihedral_sign(const IPoint3& h1, const IPoint3& h2, const IPoint3& wa, const IPoint3& wb);

/// Signed fold angle in degrees, 0 when the two wings lie flat on opposite
/// sides of the hinge. The magnitude is certified with a verified arccos at
/// `acos_digits`; an uncertain sign yields a hull symmetric about 0.
Interval fold_angle(const IPoint3& h1, const IPoint3& h2, const IPoint3& wa, const IPoint3& wb, int acos_digits = 30);

}  // namespace hypar::geom
