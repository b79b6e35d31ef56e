#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "r2opuc/recurrence.hpp"

namespace r2opuc::testing {

inline constexpr double kPi = 3.14159265358979323846;

/// c ~ U[-5, 5]; l_{k+1} ~ U(0.05, 0.95); d_{k+1} = (1 - l_k) l_{k+1}.
inline CoefficientData random_cd(std::mt19937_64& rng, std::size_t n, std::size_t chain_extra = 1) {
  std::uniform_real_distribution<double> uc(-5.0, 5.0);
  std::uniform_real_distribution<double> ul(0.05, 0.95);
  std::vector<double> c(n);
  for (auto& v : c) v = uc(rng);
  std::vector<double> ell(n + chain_extra + 1);
  ell[0] = 0.0;
  for (std::size_t k = 1; k < ell.size(); ++k) ell[k] = ul(rng);
  ChainSequence d;
  for (std::size_t k = 1; k < ell.size(); ++k) d.d.push_back((1.0 - ell[k - 1]) * ell[k]);
  return make_coefficient_data(std::move(c), std::move(d));
}

inline ChainSequence constant_chain(double first, double rest, std::size_t len) {
  ChainSequence d;
  d.d.assign(len, rest);
  d.d[0] = first;
  return d;
}

/// c = 0, d_2 = 1/2, d_{n+1} = 1/4.
inline CoefficientData example1(std::size_t n, std::size_t chain_len = 0) {
  return make_coefficient_data(std::vector<double>(n, 0.0), constant_chain(0.5, 0.25, std::max(n + 1, chain_len)));
}

/// c = 0, d = 1/4.
inline CoefficientData example3(std::size_t n, std::size_t chain_len = 0) {
  return make_coefficient_data(std::vector<double>(n, 0.0), constant_chain(0.25, 0.25, std::max(n + 1, chain_len)));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace r2opuc::testing
