#include "doctest.h"

#include <cmath>
#include <random>

#include "r2opuc/chain.hpp"
#include "r2opuc/errors.hpp"
#include "support.hpp"

using namespace r2opuc;
using r2opuc::testing::constant_chain;

namespace {

// Example 4 chain: d_{n+1} = n(2 lambda + n + 1) / (4 (lambda + n)(lambda + n + 1)).
ChainSequence jacobi_type_chain(double lambda, std::size_t len) {
  ChainSequence d;
  for (std::size_t k = 1; k <= len; ++k) {
    const double n = static_cast<double>(k);
    d.d.push_back(n * (2.0 * lambda + n + 1.0) / (4.0 * (lambda + n) * (lambda + n + 1.0)));
  }
  return d;
}

}  // namespace

TEST_CASE("minimal parameters of the constant chains") {
  const ChainParams ex1 = minimal_params(constant_chain(0.5, 0.25, 50), 40);
  CHECK(ex1.l(1) == 0.0);
  for (std::size_t n = 2; n <= 40; ++n) CHECK(ex1.l(n) == doctest::Approx(0.5).epsilon(1e-14));

  const ChainParams ex3 = minimal_params(constant_chain(0.25, 0.25, 50), 40);
  for (std::size_t n = 1; n < 40; ++n) {
    CHECK(ex3.l(n + 1) == doctest::Approx(n / (2.0 * (n + 1))).epsilon(1e-13));
  }
}

TEST_CASE("d_2 = 1 is not a chain sequence") {
  try {
    minimal_params(ChainSequence{{1.0}}, 2);
    FAIL("expected NotAChainSequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAChainSequence);
  }
}

TEST_CASE("forward identity on random chains") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ul(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ell(41);
    for (std::size_t k = 1; k < ell.size(); ++k) ell[k] = ul(rng);
    ChainSequence d;
    for (std::size_t k = 1; k < ell.size(); ++k) d.d.push_back((1.0 - ell[k - 1]) * ell[k]);
    const ChainParams p = minimal_params(d, 41);
    for (std::size_t n = 1; n <= 40; ++n) {
      CHECK(std::abs((1.0 - p.l(n)) * p.l(n + 1) - d.at(n)) <= 1e-12 * d.at(n));
    }
  }
}

TEST_CASE("maximal parameters, d = 1/4") {
  const ChainSequence d = constant_chain(0.25, 0.25, 400001);
  const MaximalParams plain = maximal_params(d, 4, 10000);
  for (double m : plain.values) CHECK(std::abs(m - 0.5) < 1e-4);
  CHECK_FALSE(plain.converged);

  const MaximalParams extra = maximal_params_extrapolated(d, 4);
  CHECK(extra.extrapolated);
  for (double m : extra.values) CHECK(std::abs(m - 0.5) < 1e-10);
  for (std::size_t n = 1; n < 4; ++n) {
    CHECK(std::abs((1.0 - extra.values[n - 1]) * extra.values[n] - 0.25) < 1e-15);
  }
}

TEST_CASE("maximal parameters, Example 4 chain with lambda = 1") {
  const ChainSequence d = jacobi_type_chain(1.0, 400001);
  const MaximalParams plain = maximal_params(d, 10, 10000);
  CHECK(plain.stability < 1e-10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(std::abs(plain.values[n] - (n + 3.0) / (2.0 * (n + 2.0))) < 1e-9);
  const MaximalParams m = maximal_params_extrapolated(d, 10);
  for (std::size_t n = 0; n < 10; ++n) {
    const double expect = (n + 3.0) / (2.0 * (n + 2.0));
    CHECK(m.values[n] == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("single-parameter chain: maximal equals minimal") {
  const ChainSequence d = constant_chain(0.5, 0.25, 400001);
  const ChainParams minimal = minimal_params(d, 4);
  const MaximalParams plain = maximal_params(d, 4, 100000);
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(plain.values[n] - minimal.ell[n]) < 1e-4);
  const MaximalParams extra = maximal_params_extrapolated(d, 4);
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(extra.values[n] - minimal.ell[n]) < 1e-10);
}

TEST_CASE("maximal dominance and forward propagation from g_1 in (0, M_1]") {
  const ChainSequence d = jacobi_type_chain(2.0, 50000);
  const ChainParams minimal = minimal_params(d, 31);
  const MaximalParams m = maximal_params(d, 31, 10000);
  for (std::size_t n = 1; n < 31; ++n) CHECK(m.values[n] > minimal.ell[n]);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    double g = u(rng) * m.values[0];
    if (g == 0.0) continue;
    for (std::size_t n = 1; n <= 30; ++n) {
      g = d.at(n) / (1.0 - g);
      REQUIRE(g > 0.0);
      REQUIRE(g < 1.0);
    }
  }
}

TEST_CASE("classification") {
  const WallSeries ex3 = classify(constant_chain(0.25, 0.25, 5000), 4000);
  CHECK(ex3.classification == Classification::MultipleParameter);
  // Partial sums of 2 / ((n + 1)(n + 2)) telescope to 1 - 2 / (N + 2).
  CHECK(ex3.partial_sum == doctest::Approx(1.0 - 2.0 / 4002.0).epsilon(1e-12));

  CHECK(classify(constant_chain(0.5, 0.25, 5000), 4000).classification == Classification::SingleParameter);
  CHECK(classify(jacobi_type_chain(-0.75, 5000), 4000).classification == Classification::SingleParameter);
  CHECK(classify(jacobi_type_chain(1.0, 5000), 4000).classification == Classification::MultipleParameter);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(classify(constant_chain(0.25, 0.25, 10), 3), Error);
  try {
    maximal_params(constant_chain(0.25, 0.25, 100), 4, 1000);
    FAIL("expected DepthInsufficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthInsufficient);
  }
}
