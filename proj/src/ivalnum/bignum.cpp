#include "hypar/bignum.hpp"

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace hypar::ival {

const mpz_class& pow10(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("pow10: negative exponent");
  thread_local std::unordered_map<std::int64_t, mpz_class> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return cache.emplace(n, std::move(p)).first->second;
}

std::int64_t decimal_digits(const mpz_class& m) {
  if (sgn(m) == 0) return 0;
  // mpz_sizeinbase(.., 10) is exact or one too large.
  auto d = static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 10));
  if (d > 1 && mpz_cmpabs(m.get_mpz_t(), pow10(d - 1).get_mpz_t()) < 0) --d;
  return d;
}

BigNum::BigNum(mpz_class mantissa, std::int64_t exponent)
    : mant_(std::move(mantissa)), exp_(exponent) {
  if (sgn(mant_) == 0) exp_ = 0;
}

std::int64_t BigNum::digits() const { return decimal_digits(mant_); }

int compare(const BigNum& a, const BigNum& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const auto ta = a.top(), tb = b.top();
  if (ta != tb) return (ta < tb ? -1 : 1) * sa;
  int c;
  if (a.exp_ == b.exp_) {
    c = cmp(a.mant_, b.mant_);
  } else if (a.exp_ > b.exp_) {
    mpz_class scaled = a.mant_ * pow10(a.exp_ - b.exp_);
    c = cmp(scaled, b.mant_);
  } else {
    mpz_class scaled = b.mant_ * pow10(b.exp_ - a.exp_);
    c = cmp(a.mant_, scaled);
  }
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

BigNum BigNum::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("BigNum::parse: empty string");
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  std::int64_t exponent = 0;
  bool seen_point = false, seen_digit = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("BigNum::parse: no digits in '" + std::string(text) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E')
      throw std::invalid_argument("BigNum::parse: bad character in '" + std::string(text) + "'");
    ++i;
    std::string_view rest = s.substr(i);
    bool eneg = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
      eneg = rest.front() == '-';
      rest.remove_prefix(1);
    }
    if (rest.empty()) throw std::invalid_argument("BigNum::parse: empty exponent");
    std::int64_t e = 0;
    for (char ch : rest) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("BigNum::parse: bad exponent");
      e = e * 10 + (ch - '0');
      if (e > (std::int64_t{1} << 50)) throw std::invalid_argument("BigNum::parse: exponent overflow");
    }
    exponent += eneg ? -e : e;
  }
  mpz_class m(digits, 10);
  if (negative) m = -m;
  return BigNum(std::move(m), exponent);
}

std::string BigNum::to_string() const {
  if (is_zero()) return "0";
  mpz_class m = ::abs(mant_);
  std::int64_t e = exp_;
  while (mpz_divisible_ui_p(m.get_mpz_t(), 10)) {
    m /= 10;
    ++e;
  }
  const std::string s = m.get_str();
  std::string out;
  if (sign() < 0) out.push_back('-');
  out.push_back(s[0]);
  if (s.size() > 1) {
    out.push_back('.');
    out.append(s, 1, std::string::npos);
  }
  out.push_back('e');
  out += std::to_string(e + static_cast<std::int64_t>(s.size()) - 1);
  return out;
}

mpq_class BigNum::to_rational() const {
  if (exp_ >= 0) return mpq_class(mant_ * pow10(exp_));
  mpq_class q(mant_, pow10(-exp_));
  q.canonicalize();
  return q;
}

double BigNum::to_double(Round dir) const {
  if (is_zero()) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto t = top();
  if (t > 300) {
    if (sign() > 0) return dir == Round::Up ? inf : std::numeric_limits<double>::max();
    return dir == Round::Down ? -inf : std::numeric_limits<double>::lowest();
  }
  if (t < -300) {
    const double tiny = std::numeric_limits<double>::denorm_min();
    if (sign() > 0) return dir == Round::Up ? tiny : 0.0;
    return dir == Round::Down ? -tiny : 0.0;
  }
  // 15 digits fit exactly in a double mantissa; the power of ten and the
  // product each add at most a couple of ulps, absorbed by the nudges below.
  const BigNum r = round(*this, 15, dir);
  const long double m = static_cast<long double>(r.mantissa().get_si());
  double d = static_cast<double>(m * std::pow(10.0L, static_cast<long double>(r.exponent())));
  const double toward = dir == Round::Up ? inf : -inf;
  for (int k = 0; k < 3; ++k) d = std::nextafter(d, toward);
  return d;
}

BigNum round(const BigNum& x, int digits, Round dir) {
  if (digits < 1) throw std::invalid_argument("round: digits must be positive");
  const auto d = x.digits();
  if (d <= digits) return x;
  const auto shift = d - digits;
  const mpz_class& p = pow10(shift);
  mpz_class q;
  if (dir == Round::Down)
    mpz_fdiv_q(q.get_mpz_t(), x.mantissa().get_mpz_t(), p.get_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), x.mantissa().get_mpz_t(), p.get_mpz_t());
  std::int64_t e = x.exponent() + shift;
  // Carry out of the top digit (e.g. 9999.5 -> 10000) leaves digits+1 digits.
  if (mpz_cmpabs(q.get_mpz_t(), pow10(digits).get_mpz_t()) == 0) {
    q /= 10;
    ++e;
  }
  return BigNum(std::move(q), e);
}

BigNum add(const BigNum& a, const BigNum& b, int digits, Round dir) {
  if (a.is_zero()) return round(b, digits, dir);
  if (b.is_zero()) return round(a, digits, dir);
  const BigNum* big = &a;
  const BigNum* small = &b;
  if (small->top() > big->top()) std::swap(big, small);

  // Every representable neighbour of big (at `digits`) and big itself are
  // multiples of 10^grid, so any |small| < 10^grid rounds identically to a
  // stand-in of the same sign and magnitude 10^(grid-1).
  const std::int64_t grid = std::min(big->top() - digits, big->exponent());
  BigNum stand_in;
  if (small->top() < grid - 1) {
    stand_in = BigNum(mpz_class(small->sign()), grid - 1);
    small = &stand_in;
  }
  const std::int64_t e = std::min(big->exponent(), small->exponent());
  mpz_class m = big->mantissa();
  if (big->exponent() > e) m *= pow10(big->exponent() - e);
  if (small->exponent() > e)
    m += small->mantissa() * pow10(small->exponent() - e);
  else
    m += small->mantissa();
  return round(BigNum(std::move(m), e), digits, dir);
}

BigNum sub(const BigNum& a, const BigNum& b, int digits, Round dir) { return add(a, -b, digits, dir); }

BigNum mul(const BigNum& a, const BigNum& b, int digits, Round dir) {
  if (a.is_zero() || b.is_zero()) return BigNum();
  return round(BigNum(a.mantissa() * b.mantissa(), a.exponent() + b.exponent()), digits, dir);
}

BigNum div(const BigNum& a, const BigNum& b, int digits, Round dir) {
  if (b.is_zero()) throw std::domain_error("BigNum div: division by zero");
  if (a.is_zero()) return BigNum();
  const std::int64_t shift = std::max<std::int64_t>(0, digits + 1 + b.digits() - a.digits());
  mpz_class num = a.mantissa() * pow10(shift);
  mpz_class q;
  if (dir == Round::Down)
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  return round(BigNum(std::move(q), a.exponent() - b.exponent() - shift), digits, dir);
}

mpz_class isqrt(const mpz_class& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt: negative argument");
  if (sgn(n) == 0) return mpz_class(0);
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  mpz_class x;
  if (bits <= 96) {
    x = mpz_class(std::sqrt(n.get_d())) + 2;
  } else {
    // sqrt(n) < (isqrt(n >> 2t) + 1) << t, so x starts above the root.
    const std::size_t t = bits / 4;
    mpz_class hi = n >> (2 * t);
    x = (isqrt(hi) + 1) << t;
  }
  while (x * x < n) x *= 2;
  // Newton from above decreases monotonically to floor(sqrt(n)).
  for (;;) {
    mpz_class y = (x + n / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  return x;
}

BigNum sqrt(const BigNum& a, int digits, Round dir) {
  if (a.sign() < 0) throw std::domain_error("BigNum sqrt: negative argument");
  if (a.is_zero()) return BigNum();
  std::int64_t shift = 2 * static_cast<std::int64_t>(digits) + 2 - a.digits();
  if ((a.exponent() - shift) % 2 != 0) ++shift;
  mpz_class n;
  if (shift >= 0) {
    n = a.mantissa() * pow10(shift);
  } else if (dir == Round::Down) {
    mpz_fdiv_q(n.get_mpz_t(), a.mantissa().get_mpz_t(), pow10(-shift).get_mpz_t());
  } else {
    mpz_cdiv_q(n.get_mpz_t(), a.mantissa().get_mpz_t(), pow10(-shift).get_mpz_t());
  }
  mpz_class r = isqrt(n);
  if (dir == Round::Up && r * r != n) r += 1;
  return round(BigNum(std::move(r), (a.exponent() - shift) / 2), digits, dir);
}

BigNum from_rational(const mpq_class& q, int digits, Round dir) {
  return div(BigNum(q.get_num(), 0), BigNum(q.get_den(), 0), digits, dir);
}

}  // namespace hypar::ival
