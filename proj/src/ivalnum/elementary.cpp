#include "hypar/elementary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hypar::ival {

namespace {

// atan(1/x) * 10^scale as an integer enclosure [lo, hi].
//
// p_j = floor(10^scale / x^(2j+1)) is exact because nested floors of
// positive quotients compose; each term then loses at most one unit.
void atan_inv(unsigned long x, long scale, mpz_class& lo, mpz_class& hi) {
  const mpz_class x2 = mpz_class(x) * x;
  mpz_class p = pow10(scale) / x;
  lo = 0;
  hi = 0;
  mpz_class t;
  for (unsigned long j = 0; sgn(p) != 0; ++j) {
    const unsigned long d = 2 * j + 1;
    if (j % 2 == 0) {
      mpz_fdiv_q_ui(t.get_mpz_t(), p.get_mpz_t(), d);
      lo += t;
      mpz_class q = p + 1;
      mpz_cdiv_q_ui(t.get_mpz_t(), q.get_mpz_t(), d);
      hi += t;
    } else {
      mpz_class q = p + 1;
      mpz_cdiv_q_ui(t.get_mpz_t(), q.get_mpz_t(), d);
      lo -= t;
      mpz_fdiv_q_ui(t.get_mpz_t(), p.get_mpz_t(), d);
      hi -= t;
    }
    p /= x2;
  }
  // Alternating tail: the next term is below one unit.
  lo -= 1;
  hi += 1;
}

Interval pi_uncached(int digits) {
  const long scale = digits + 12;
  mpz_class a_lo, a_hi, b_lo, b_hi;
  atan_inv(5, scale, a_lo, a_hi);
  atan_inv(239, scale, b_lo, b_hi);
  mpz_class lo = 16 * a_lo - 4 * b_hi;
  mpz_class hi = 16 * a_hi - 4 * b_lo;
  return Interval(round(BigNum(lo, -scale), digits, Round::Down), round(BigNum(hi, -scale), digits, Round::Up), digits);
}

// sin and cos of x radians for x in [0, pi/4], by Taylor series with the
// Lagrange bound on the first omitted term.
std::pair<Interval, Interval> sincos_small(const Interval& x) {
  const int wp = x.digits();
  const Interval x2 = sqr(x);
  const BigNum eps = BigNum(mpz_class(1), -static_cast<std::int64_t>(wp) - 4);

  Interval s = x, c = Interval::exact(1, wp);
  Interval ts = x, tc = Interval::exact(1, wp);
  long m = 1;  // ts = x^m/m!, tc = x^(m-1)/(m-1)!
  for (int sign = -1;; sign = -sign) {
    tc = tc * x2 / ((m) * (m + 1));
    ts = ts * x2 / ((m + 1) * (m + 2));
    m += 2;
    if (sign < 0) {
      c = c - tc;
      s = s - ts;
    } else {
      c = c + tc;
      s = s + ts;
    }
    if (compare(ts.hi(), eps) < 0 && compare(tc.hi(), eps) < 0) break;
  }
  // |remainder| <= next term, which is smaller than the last one kept.
  const Interval rs(-ts.hi(), ts.hi(), wp);
  const Interval rc(-tc.hi(), tc.hi(), wp);
  return {s + rs, c + rc};
}

Interval clip_unit(const Interval& v) {
  const BigNum one = BigNum::from_int(1);
  const BigNum mone = BigNum::from_int(-1);
  return Interval(max(v.lo(), mone), min(v.hi(), one), v.digits());
}

}  // namespace

const Interval& pi(int digits) {
  thread_local std::map<int, Interval> cache;
  auto it = cache.find(digits);
  if (it != cache.end()) return it->second;
  return cache.emplace(digits, pi_uncached(digits)).first->second;
}

std::pair<Interval, Interval> sincos_deg(const mpq_class& theta_deg, int digits) {
  // Reduce to [0, 360).
  mpq_class t = theta_deg;
  mpz_class turns;
  mpz_fdiv_q(turns.get_mpz_t(), t.get_num_mpz_t(), mpz_class(t.get_den() * 360).get_mpz_t());
  t -= mpq_class(turns * 360);

  int sin_sign = 1, cos_sign = 1;
  if (t >= 180) {
    t -= 180;
    sin_sign = -sin_sign;
    cos_sign = -cos_sign;
  }
  if (t > 90) {
    t = 180 - t;
    cos_sign = -cos_sign;
  }
  // t in [0, 90]
  auto signed_pair = [&](Interval s, Interval c) {
    if (sin_sign < 0) s = -s;
    if (cos_sign < 0) c = -c;
    return std::pair{std::move(s), std::move(c)};
  };
  if (t == 0) return signed_pair(Interval::exact(0, digits), Interval::exact(1, digits));
  if (t == 90) return signed_pair(Interval::exact(1, digits), Interval::exact(0, digits));

  bool swap = false;
  if (t > 45) {
    t = 90 - t;
    swap = true;
  }
  const int wp = digits + 10 + static_cast<int>(std::log10(digits + 10.0));
  const Interval x = pi(wp) * Interval::from_rational(t / 180, wp);
  auto [s, c] = sincos_small(x);
  if (swap) std::swap(s, c);
  return signed_pair(clip_unit(s).with_digits(digits), clip_unit(c).with_digits(digits));
}

namespace {

// cos is decreasing on [0, 180], so acos(y) >= a iff cos(a) >= y.
mpq_class certified_acos_bound(const BigNum& y, bool lower, int digits) {
  const double yd = std::clamp(y.to_double(lower ? Round::Up : Round::Down), -1.0, 1.0);
  const double guess = std::acos(yd) * 180.0 / std::numbers::pi;
  for (double delta = 1e-12 * std::max(1.0, std::abs(guess)); delta < 360; delta *= 16) {
    const double cand = lower ? guess - delta : guess + delta;
    if (lower && cand <= 0) return 0;
    if (!lower && cand >= 180) return 180;
    const mpq_class a(cand);
    const Interval c = sincos_deg(a, digits).second;
    if (lower ? compare(c.lo(), y) >= 0 : compare(c.hi(), y) <= 0) return a;
  }
  return lower ? mpq_class(0) : mpq_class(180);
}

}  // namespace

Interval acos_deg(const Interval& c, int digits) {
  const BigNum one = BigNum::from_int(1);
  const BigNum mone = BigNum::from_int(-1);
  const BigNum ylo = max(c.lo(), mone);
  const BigNum yhi = min(c.hi(), one);
  if (compare(ylo, yhi) > 0) throw std::invalid_argument("acos_deg: argument outside [-1, 1]");
  mpq_class lo = compare(yhi, one) == 0 ? mpq_class(0) : certified_acos_bound(yhi, true, digits);
  mpq_class hi = compare(ylo, mone) == 0 ? mpq_class(180) : certified_acos_bound(ylo, false, digits);
  return Interval(from_rational(lo, digits, Round::Down), from_rational(hi, digits, Round::Up), digits);
}

}  // namespace hypar::ival
