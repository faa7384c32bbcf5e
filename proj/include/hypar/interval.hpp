#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "hypar/bignum.hpp"

namespace hypar::ival {

enum class SignVerdict { CertainlyNegative, CertainlyZero, CertainlyPositive, Indeterminate };

const char* to_string(SignVerdict s);

inline bool is_certain_nonzero(SignVerdict s) {
  return s == SignVerdict::CertainlyNegative || s == SignVerdict::CertainlyPositive;
}
/// +1 / -1 for certain nonzero verdicts, 0 otherwise.
inline int certain_sign(SignVerdict s) {
  return s == SignVerdict::CertainlyPositive ? 1 : (s == SignVerdict::CertainlyNegative ? -1 : 0);
}

enum class IntervalErrorKind {
  DivisorStraddlesZero,
  CertainlyNegativeRadicand,
  PartiallyNegativeRadicand,
};

class IntervalError : public std::domain_error {
 public:
  IntervalError(IntervalErrorKind kind, const std::string& what) : std::domain_error(what), kind_(kind) {}
  IntervalErrorKind kind() const { return kind_; }

 private:
  IntervalErrorKind kind_;
};

/// Closed interval [lo, hi] of decimal floats with a working precision.
///
/// Every operation rounds lo down and hi up to the result precision, which is
/// the larger of the operand precisions. The interval therefore always
/// contains the exact real result for any reals taken from the operands.
class Interval {
 public:
  Interval() = default;
  Interval(BigNum lo, BigNum hi, int digits);

  static Interval exact(long value, int digits) { return point(BigNum::from_int(value), digits); }
  static Interval point(const BigNum& v, int digits);
  /// Smallest enclosure of q representable at `digits`.
  static Interval from_rational(const mpq_class& q, int digits);

  const BigNum& lo() const { return lo_; }
  const BigNum& hi() const { return hi_; }
  int digits() const { return digits_; }

  bool contains(const BigNum& v) const { return compare(lo_, v) <= 0 && compare(v, hi_) <= 0; }
  bool contains(const mpq_class& q) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  /// `other` lies inside this interval.
  bool encloses(const Interval& other) const {
    return compare(lo_, other.lo_) <= 0 && compare(other.hi_, hi_) <= 0;
  }
  bool overlaps(const Interval& other) const {
    return compare(lo_, other.hi_) <= 0 && compare(other.lo_, hi_) <= 0;
  }

  /// Same set rounded outward to a different precision.
  Interval with_digits(int digits) const;

  Interval operator-() const { return Interval(-hi_, -lo_, digits_, Unchecked{}); }

 private:
  struct Unchecked {};
  Interval(BigNum lo, BigNum hi, int digits, Unchecked) : lo_(std::move(lo)), hi_(std::move(hi)), digits_(digits) {}

  friend Interval operator+(const Interval&, const Interval&);
  friend Interval operator-(const Interval&, const Interval&);
  friend Interval operator*(const Interval&, const Interval&);
  friend Interval operator/(const Interval&, const Interval&);
  friend Interval sqr(const Interval&);
  friend Interval hull(const Interval&, const Interval&);

  BigNum lo_;
  BigNum hi_;
  int digits_ = 16;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws IntervalError(DivisorStraddlesZero) unless b is certainly nonzero.
Interval operator/(const Interval& a, const Interval& b);
/// x*x over the interval (tighter than a*a when a straddles zero).
Interval sqr(const Interval& a);
/// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);

enum class SqrtPolicy {
  Strict,  ///< partially negative radicand is an error
  Clamp,   ///< clamp the radicand to [0, hi] and flag it
};

struct SqrtOutcome {
  Interval root;
  bool negative_lower = false;
};

/// Throws IntervalError(CertainlyNegativeRadicand) when hi < 0, and
/// IntervalError(PartiallyNegativeRadicand) under the strict policy when
/// lo < 0 <= hi.
SqrtOutcome sqrt_checked(const Interval& a, SqrtPolicy policy);
inline Interval sqrt(const Interval& a) { return sqrt_checked(a, SqrtPolicy::Strict).root; }

SignVerdict sign(const Interval& a);
/// hi - lo rounded up.
BigNum width(const Interval& a);
/// (lo + hi) / 2, rounded to nearest-below; not an enclosure of anything.
BigNum mid(const Interval& a);

inline Interval operator+(const Interval& a, long b) { return a + Interval::exact(b, a.digits()); }
inline Interval operator-(const Interval& a, long b) { return a - Interval::exact(b, a.digits()); }
inline Interval operator*(const Interval& a, long b) { return a * Interval::exact(b, a.digits()); }
inline Interval operator*(long b, const Interval& a) { return a * Interval::exact(b, a.digits()); }
inline Interval operator/(const Interval& a, long b) { return a / Interval::exact(b, a.digits()); }

}  // namespace hypar::ival
