#include "hypar/interval.hpp"

#include <algorithm>

namespace hypar::ival {

const char* to_string(SignVerdict s) {
  switch (s) {
    case SignVerdict::CertainlyNegative: return "CertainlyNegative";
    case SignVerdict::CertainlyZero: return "CertainlyZero";
    case SignVerdict::CertainlyPositive: return "CertainlyPositive";
    case SignVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Interval::Interval(BigNum lo, BigNum hi, int digits) : lo_(std::move(lo)), hi_(std::move(hi)), digits_(digits) {
  if (digits < 1) throw std::invalid_argument("Interval: digits must be positive");
  if (compare(lo_, hi_) > 0) throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::point(const BigNum& v, int digits) {
  return Interval(round(v, digits, Round::Down), round(v, digits, Round::Up), digits, Unchecked{});
}

Interval Interval::from_rational(const mpq_class& q, int digits) {
  return Interval(ival::from_rational(q, digits, Round::Down), ival::from_rational(q, digits, Round::Up), digits,
                  Unchecked{});
}

bool Interval::contains(const mpq_class& q) const { return lo_.to_rational() <= q && q <= hi_.to_rational(); }

Interval Interval::with_digits(int digits) const {
  return Interval(round(lo_, digits, Round::Down), round(hi_, digits, Round::Up), digits, Unchecked{});
}

Interval operator+(const Interval& a, const Interval& b) {
  const int d = std::max(a.digits_, b.digits_);
  return Interval(add(a.lo_, b.lo_, d, Round::Down), add(a.hi_, b.hi_, d, Round::Up), d, Interval::Unchecked{});
}

Interval operator-(const Interval& a, const Interval& b) {
  const int d = std::max(a.digits_, b.digits_);
  return Interval(sub(a.lo_, b.hi_, d, Round::Down), sub(a.hi_, b.lo_, d, Round::Up), d, Interval::Unchecked{});
}

namespace {

enum class Span { NonNegative, NonPositive, Mixed };

Span span_of(const BigNum& lo, const BigNum& hi) {
  if (lo.sign() >= 0) return Span::NonNegative;
  if (hi.sign() <= 0) return Span::NonPositive;
  return Span::Mixed;
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) {
  const int d = std::max(a.digits_, b.digits_);
  const BigNum &al = a.lo_, &ah = a.hi_, &bl = b.lo_, &bh = b.hi_;
  auto lo = [d](const BigNum& x, const BigNum& y) { return mul(x, y, d, Round::Down); };
  auto hi = [d](const BigNum& x, const BigNum& y) { return mul(x, y, d, Round::Up); };
  const Span sa = span_of(al, ah), sb = span_of(bl, bh);
  using enum Span;
  BigNum l, h;
  if (sa == NonNegative && sb == NonNegative) {
    l = lo(al, bl), h = hi(ah, bh);
  } else if (sa == NonNegative && sb == NonPositive) {
    l = lo(ah, bl), h = hi(al, bh);
  } else if (sa == NonPositive && sb == NonNegative) {
    l = lo(al, bh), h = hi(ah, bl);
  } else if (sa == NonPositive && sb == NonPositive) {
    l = lo(ah, bh), h = hi(al, bl);
  } else if (sa == NonNegative && sb == Mixed) {
    l = lo(ah, bl), h = hi(ah, bh);
  } else if (sa == NonPositive && sb == Mixed) {
    l = lo(al, bh), h = hi(al, bl);
  } else if (sa == Mixed && sb == NonNegative) {
    l = lo(al, bh), h = hi(ah, bh);
  } else if (sa == Mixed && sb == NonPositive) {
    l = lo(ah, bl), h = hi(al, bl);
  } else {
    l = min(lo(al, bh), lo(ah, bl));
    h = max(hi(al, bl), hi(ah, bh));
  }
  return Interval(std::move(l), std::move(h), d, Interval::Unchecked{});
}

Interval operator/(const Interval& a, const Interval& b) {
  const SignVerdict sb = sign(b);
  if (!is_certain_nonzero(sb))
    throw IntervalError(IntervalErrorKind::DivisorStraddlesZero, "interval division: divisor contains zero");
  const int d = std::max(a.digits_, b.digits_);
  const BigNum &al = a.lo_, &ah = a.hi_, &bl = b.lo_, &bh = b.hi_;
  auto lo = [d](const BigNum& x, const BigNum& y) { return div(x, y, d, Round::Down); };
  auto hi = [d](const BigNum& x, const BigNum& y) { return div(x, y, d, Round::Up); };
  const Span sa = span_of(al, ah);
  BigNum l, h;
  if (sb == SignVerdict::CertainlyPositive) {
    if (sa == Span::NonNegative)
      l = lo(al, bh), h = hi(ah, bl);
    else if (sa == Span::NonPositive)
      l = lo(al, bl), h = hi(ah, bh);
    else
      l = lo(al, bl), h = hi(ah, bl);
  } else {
    if (sa == Span::NonNegative)
      l = lo(ah, bh), h = hi(al, bl);
    else if (sa == Span::NonPositive)
      l = lo(ah, bl), h = hi(al, bh);
    else
      l = lo(ah, bh), h = hi(al, bh);
  }
  return Interval(std::move(l), std::move(h), d, Interval::Unchecked{});
}

Interval sqr(const Interval& a) {
  const int d = a.digits_;
  if (a.lo_.sign() >= 0)
    return Interval(mul(a.lo_, a.lo_, d, Round::Down), mul(a.hi_, a.hi_, d, Round::Up), d, Interval::Unchecked{});
  if (a.hi_.sign() <= 0)
    return Interval(mul(a.hi_, a.hi_, d, Round::Down), mul(a.lo_, a.lo_, d, Round::Up), d, Interval::Unchecked{});
  return Interval(BigNum(), max(mul(a.lo_, a.lo_, d, Round::Up), mul(a.hi_, a.hi_, d, Round::Up)), d,
                  Interval::Unchecked{});
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(min(a.lo_, b.lo_), max(a.hi_, b.hi_), std::max(a.digits_, b.digits_), Interval::Unchecked{});
}

SqrtOutcome sqrt_checked(const Interval& a, SqrtPolicy policy) {
  if (a.hi().sign() < 0)
    throw IntervalError(IntervalErrorKind::CertainlyNegativeRadicand, "interval sqrt: radicand certainly negative");
  SqrtOutcome out;
  BigNum lo = a.lo();
  if (lo.sign() < 0) {
    if (policy == SqrtPolicy::Strict)
      throw IntervalError(IntervalErrorKind::PartiallyNegativeRadicand, "interval sqrt: radicand straddles zero");
    lo = BigNum();
    out.negative_lower = true;
  }
  const int d = a.digits();
  out.root = Interval(ival::sqrt(lo, d, Round::Down), ival::sqrt(a.hi(), d, Round::Up), d);
  return out;
}

SignVerdict sign(const Interval& a) {
  if (a.lo().sign() > 0) return SignVerdict::CertainlyPositive;
  if (a.hi().sign() < 0) return SignVerdict::CertainlyNegative;
  if (a.lo().is_zero() && a.hi().is_zero()) return SignVerdict::CertainlyZero;
  return SignVerdict::Indeterminate;
}

BigNum width(const Interval& a) { return sub(a.hi(), a.lo(), a.digits(), Round::Up); }

BigNum mid(const Interval& a) {
  const int d = a.digits() + 1;
  return div(add(a.lo(), a.hi(), d, Round::Down), BigNum::from_int(2), a.digits(), Round::Down);
}

}  // namespace hypar::ival
