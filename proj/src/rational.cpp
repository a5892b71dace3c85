#include "sofic/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sofic {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(s));
}

BigInt pow10(unsigned k) {
  BigInt p = 1;
  for (unsigned i = 0; i < k; ++i) p *= 10;
  return p;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      BigInt ev = parse_integer(exp_part, text);
      if (ev > 4000) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
      exponent = ev.convert_to<long>();
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      frac_digits = static_cast<long>(s.size() - dot - 1);
      if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    } else {
      digits = std::string(s);
    }
    BigInt num = parse_integer(digits, text);
    long shift = exponent - frac_digits;
    if (shift >= 0) {
      value = Rational(num * pow10(static_cast<unsigned>(shift)));
    } else {
      value = Rational(num, pow10(static_cast<unsigned>(-shift)));
    }
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational &r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const BigInt &n) { return n.str(); }

double to_double(const Rational &r) {
  const BigInt &num = numerator(r);
  const BigInt &den = denominator(r);
  if (num == 0) return 0.0;
  // Scale into range before converting so huge terms do not overflow.
  double sign = num < 0 ? -1.0 : 1.0;
  double lr = log_big(abs(num)) - log_big(den);
  if (std::abs(lr) < 700.0 && msb(abs(num)) < 1000 && msb(den) < 1000) {
    return num.convert_to<double>() / den.convert_to<double>();
  }
  return sign * std::exp(lr);
}

double log_big(const BigInt &n) {
  if (n <= 0) throw std::domain_error("log of non-positive integer");
  unsigned bits = static_cast<unsigned>(msb(n)) + 1;
  if (bits <= 60) return std::log(n.convert_to<double>());
  unsigned shift = bits - 60;
  BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt partial_permutation_count(unsigned d) {
  BigInt total = 0;
  for (unsigned k = 0; k <= d; ++k) {
    BigInt c = binomial(d, k);
    total += c * c * factorial(k);
  }
  return total;
}

bool fraction_below(std::int64_t count, std::int64_t d, const Rational &delta) {
  // count/d < num/den  <=>  count*den < num*d
  return BigInt(count) * denominator(delta) < numerator(delta) * BigInt(d);
}

} // namespace sofic
