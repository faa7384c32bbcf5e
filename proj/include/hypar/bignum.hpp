#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypar::ival {

/// Rounding direction for a single floating operation.
enum class Round { Down, Up };

inline Round opposite(Round r) { return r == Round::Down ? Round::Up : Round::Down; }

/// Decimal floating-point number: value = mantissa * 10^exponent.
///
/// The mantissa is an arbitrary-size signed integer. Precision is not stored
/// here; every arithmetic routine takes the number of significant decimal
/// digits to keep and a rounding direction, so the caller (Interval) decides
/// which way each endpoint is rounded.
class BigNum {
 public:
  BigNum() = default;
  BigNum(mpz_class mantissa, std::int64_t exponent);

  static BigNum from_int(long value) { return BigNum(mpz_class(value), 0); }

  /// Parses "-1.2345e-10", "42", "0.5", "3E7". Throws std::invalid_argument.
  static BigNum parse(std::string_view text);

  /// Canonical "d.ddddde<exp>" form (or "0"); parse(to_string()) is exact.
  std::string to_string() const;

  int sign() const { return sgn(mant_); }
  bool is_zero() const { return sgn(mant_) == 0; }
  const mpz_class& mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  /// Significant decimal digits in the mantissa (0 for zero).
  std::int64_t digits() const;
  /// Decimal exponent of the leading digit: 10^top <= |value| < 10^(top+1).
  std::int64_t top() const { return exp_ + digits() - 1; }

  BigNum operator-() const { return BigNum(-mant_, exp_); }
  BigNum abs() const { return BigNum(::abs(mant_), exp_); }

  /// Outward conversion: the result is <= value for Down, >= value for Up.
  double to_double(Round dir) const;

  mpq_class to_rational() const;

  friend int compare(const BigNum& a, const BigNum& b);
  friend bool operator==(const BigNum& a, const BigNum& b) { return compare(a, b) == 0; }
  friend auto operator<=>(const BigNum& a, const BigNum& b) { return compare(a, b) <=> 0; }

 private:
  mpz_class mant_;
  std::int64_t exp_ = 0;
};

/// 10^n as a cached integer (per-thread cache).
const mpz_class& pow10(std::int64_t n);

/// Exact count of decimal digits of |m| (0 for m == 0).
std::int64_t decimal_digits(const mpz_class& m);

BigNum round(const BigNum& x, int digits, Round dir);
BigNum add(const BigNum& a, const BigNum& b, int digits, Round dir);
BigNum sub(const BigNum& a, const BigNum& b, int digits, Round dir);
BigNum mul(const BigNum& a, const BigNum& b, int digits, Round dir);
/// b must be nonzero.
BigNum div(const BigNum& a, const BigNum& b, int digits, Round dir);
/// a must be >= 0.
BigNum sqrt(const BigNum& a, int digits, Round dir);
BigNum from_rational(const mpq_class& q, int digits, Round dir);

/// floor(sqrt(n)) for n >= 0 by Newton iteration on integers.
mpz_class isqrt(const mpz_class& n);

inline const BigNum& min(const BigNum& a, const BigNum& b) { return compare(a, b) <= 0 ? a : b; }
inline const BigNum& max(const BigNum& a, const BigNum& b) { return compare(a, b) >= 0 ? a : b; }

}  // namespace hypar::ival
