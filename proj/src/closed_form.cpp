#include <cmath>
#include <functional>
#include <limits>

#include "sofic/sofic.hpp"

namespace sofic {

BigInt closed_form_count(std::size_t m, std::size_t d, const Rational &delta) {
  if (m == 0) throw std::invalid_argument("closed_form_count: m must be positive");
  if (delta <= 0) throw std::invalid_argument("closed_form_count: delta must be positive");
  std::vector<std::size_t> lengths;  // cycle lengths dividing m
  for (std::size_t l = 1; l <= m; ++l) {
    if (m % l == 0) lengths.push_back(l);
  }
  const BigInt dfact = factorial(static_cast<unsigned>(d));
  const BigInt bound_num = numerator(delta) * BigInt(static_cast<unsigned long long>(d));
  const BigInt bound_den = denominator(delta);

  // fix(pi^j) = sum of l c_l over l dividing j; it must stay below delta d.
  auto admissible = [&](const std::vector<std::size_t> &c) {
    for (std::size_t j = 1; j < m; ++j) {
      std::size_t fixed = 0;
      for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (j % lengths[i] == 0) fixed += lengths[i] * c[i];
      }
      if (BigInt(static_cast<unsigned long long>(fixed)) * bound_den >= bound_num) return false;
    }
    return true;
  };

  BigInt total = 0;
  std::vector<std::size_t> c(lengths.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
    if (idx + 1 == lengths.size()) {
      if (left % lengths[idx] != 0) return;
      c[idx] = left / lengths[idx];
      if (admissible(c)) {
        BigInt denom = 1;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
          denom *= pow(BigInt(static_cast<unsigned long long>(lengths[i])), static_cast<unsigned>(c[i])) *
                   factorial(static_cast<unsigned>(c[i]));
        }
        total += dfact / denom;
      }
      return;
    }
    for (std::size_t k = 0; k * lengths[idx] <= left; ++k) {
      c[idx] = k;
      rec(idx + 1, left - k * lengths[idx]);
    }
  };
  rec(0, d);
  return total;
}

double closed_form_statistic(std::size_t m, std::size_t d, const Rational &delta) {
  BigInt n = closed_form_count(m, d, delta);
  if (n == 0) return -std::numeric_limits<double>::infinity();
  if (n == 1) return 0.0;
  const double dd = static_cast<double>(d);
  return log_big(n) / (dd * std::log(dd));
}

} // namespace sofic
