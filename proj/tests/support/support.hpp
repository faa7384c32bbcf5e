#pragma once

#include <random>
#include <utility>

#include <gmpxx.h>

#include "hypar/interval.hpp"

namespace testing {

using hypar::ival::BigNum;
using hypar::ival::Interval;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234abcdULL);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random rational with numerator and denominator of varying size.
inline mpq_class random_rational(long num_bound = 1000000, long den_bound = 10000) {
  mpq_class q(uniform(-num_bound, num_bound), uniform(1, den_bound));
  q.canonicalize();
  return q;
}

inline mpq_class random_unit() {
  mpq_class q(uniform(0, 1000000), 1000000);
  q.canonicalize();
  return q;
}

/// Interval enclosing [a, b] (a <= b) at `digits`.
inline Interval enclose(const mpq_class& a, const mpq_class& b, int digits) {
  return Interval(Interval::from_rational(a, digits).lo(), Interval::from_rational(b, digits).hi(), digits);
}

/// Exact membership test: lo <= q <= hi, compared as rationals.
inline bool holds(const Interval& v, const mpq_class& q) { return v.lo().to_rational() <= q && q <= v.hi().to_rational(); }

/// q^2 lies on the correct side of both endpoints' squares, i.e. sqrt(q2) in v.
inline bool holds_sqrt(const Interval& v, const mpq_class& q2) {
  const mpq_class lo = v.lo().to_rational(), hi = v.hi().to_rational();
  return (lo <= 0 || lo * lo <= q2) && hi >= 0 && hi * hi >= q2;
}

/// A real interval [a, b] with exact bounds and its enclosure.
struct Operand {
  mpq_class a, b;  // exact bounds of the underlying real interval
  Interval v;
  mpq_class pick() const { return a + (b - a) * testing::random_unit(); }
};

inline Operand random_operand(int digits, bool positive = false, bool nonzero = false) {
  mpq_class a = random_rational(), b = random_rational();
  if (positive) a = abs(a), b = abs(b);
  if (a > b) std::swap(a, b);
  if (nonzero && a <= 0 && b >= 0) {
    a = abs(b) + mpq_class(1, 7);
    b = a + abs(random_rational());
    if (uniform(0, 1)) std::swap(a, b), a = -a, b = -b;
  }
  return {a, b, enclose(a, b, digits)};
}

}  // namespace testing
