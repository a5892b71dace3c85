#ifndef SOFIC_RATIONAL_HPP_
#define SOFIC_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sofic {

// Exact arithmetic. Both types are always kept in lowest terms by the
// backend, so equality is structural.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "3/5", "-2", "0.05", "1e-3". Decimals are converted exactly.
Rational parse_rational(std::string_view text);

// "num" when the denominator is 1, otherwise "num/den".
std::string to_string(const Rational &r);
std::string to_string(const BigInt &n);

double to_double(const Rational &r);

// Natural log of a positive big integer without overflowing double.
double log_big(const BigInt &n);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

// |[[d]]| = sum_k C(d,k)^2 k!
BigInt partial_permutation_count(unsigned d);

// Strict comparison helpers used on the hot path of the exact checks:
// is count/d < delta ?
bool fraction_below(std::int64_t count, std::int64_t d, const Rational &delta);

} // namespace sofic

#endif // SOFIC_RATIONAL_HPP_
