#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "r2opuc/errors.hpp"
#include "r2opuc/opuc.hpp"
#include "support.hpp"

using namespace r2opuc;
using namespace r2opuc::testing;

namespace {

/// Verblunsky coefficients from the moments m_k = int zeta^k d mu by the
/// Szegő recursion with orthogonality against 1.
std::vector<cplx> levinson(const std::function<cplx(int)>& m, int N) {
  std::vector<cplx> phi{1.0};
  std::vector<cplx> alpha;
  for (int n = 0; n < N; ++n) {
    cplx num{};
    cplx den{};
    for (int j = 0; j <= n; ++j) {
      num += phi[j] * m(j + 1);
      den += std::conj(phi[n - j]) * m(j);
    }
    const cplx conj_alpha = num / den;
    alpha.push_back(std::conj(conj_alpha));
    std::vector<cplx> next(n + 2, 0.0);
    for (int j = 0; j <= n; ++j) {
      next[j + 1] += phi[j];
      next[j] -= conj_alpha * std::conj(phi[n - j]);
    }
    phi = next;
  }
  return alpha;
}

ExampleSpec ex(ExampleId id, double s = 0.0) {
  ExampleSpec e;
  e.id = id;
  e.s = s;
  return e;
}

}  // namespace

TEST_CASE("Verblunsky coefficients of Examples 1, 3 and 4") {
  const VerblunskyData v1 = verblunsky_from_cd(example1(31), 30);
  for (const cplx a : v1.alpha) CHECK(std::abs(a) <= 1e-12);

  const VerblunskyData v3 = verblunsky_from_cd(example3(31), 30);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(std::abs(v3.alpha_at(n - 1) + 1.0 / (n + 1.0)) <= 1e-11);

  ExampleSpec e4{ExampleId::Ex4, 0.5, 1.0, 1.0, {}};
  const VerblunskyData v4 = verblunsky_from_cd(example_sequences(e4, 21), 20);
  const cplx b{1.0, 1.0};
  for (std::size_t n = 1; n <= 20; ++n) {
    const cplx expect = -pochhammer(b + 1.0, n) / pochhammer(std::conj(b) + 2.0, n);
    CHECK(std::abs(v4.alpha_at(n - 1) - expect) <= 1e-10);
  }
}

TEST_CASE("Example 2: Verblunsky coefficients agree with the moment oracle for every s") {
  const double kappa = 0.4;
  const auto moments = [kappa](int k) {
    cplx m = kappa * std::pow(cplx{0.0, 1.0}, k);
    if (k == 0) m += 1.0 - kappa;
    return m;
  };
  const std::vector<cplx> oracle = levinson(moments, 20);
  for (const double s : {0.0, 0.3, -1.1, 2.5}) {
    ExampleSpec e{ExampleId::Ex2, kappa, 0.0, 0.0, s};
    const VerblunskyData v = verblunsky_from_cd(example_sequences(e, 21), 20);
    for (std::size_t k = 0; k < 20; ++k) CHECK(std::abs(v.alpha[k] - oracle[k]) <= 1e-12);
  }
}

TEST_CASE("cd_from_verblunsky: zero coefficients give Example 1") {
  const ReciprocalData r = cd_from_verblunsky(std::vector<cplx>(10, cplx{}), cplx{1.0, 0.0}, 10);
  for (std::size_t n = 1; n <= 11; ++n) CHECK(std::abs(r.c[n - 1]) <= 1e-15);
  CHECK(r.cd.d_at(1) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::size_t n = 2; n <= 10; ++n) CHECK(r.cd.d_at(n) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("round trip (c, d) -> (alpha, tau_1) -> (c, d), N = 20") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const CoefficientData cd = random_cd(rng, 21);
    const VerblunskyData v = verblunsky_from_cd(cd, 20);
    const ReciprocalData r = cd_from_verblunsky(v, 20);
    const ReciprocalData rd = cd_from_verblunsky(v.alpha, v.tau_at(1), 20);
    for (std::size_t n = 1; n <= 20; ++n) {
      CHECK(rel_err(r.cd.c_at(n), cd.c_at(n)) <= 1e-10);
      CHECK(rel_err(r.cd.d_at(n), cd.d_at(n)) <= 1e-10);
    }
    for (std::size_t n = 1; n <= 20; ++n) CHECK(rel_err(rd.cd.c_at(n), cd.c_at(n)) <= 1e-8);
    CHECK(r.alternative_gap <= 1e-11);
    CHECK(r.consistency_gap <= 1e-12);
    CHECK(tau_convention_gap(cd, v) <= 1e-10);
    for (const cplx a : v.alpha) CHECK(std::abs(a) < 1.0);
  }
}

TEST_CASE("cd_from_verblunsky rejects degenerate rotations") {
  const std::vector<cplx> alpha{cplx{0.5, 0.0}, cplx{}};
  CHECK_THROWS_AS(cd_from_verblunsky(alpha, cplx{-1.0, 0.0}, 2), Error);
  CHECK_THROWS_AS(cd_from_verblunsky(alpha, cplx{0.5, 0.0}, 2), Error);
  try {
    cd_from_verblunsky(std::vector<cplx>{cplx{-1.0, 0.0}, cplx{}}, cplx{1.0, 0.0}, 2);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
  try {
    cd_from_verblunsky(std::vector<cplx>{cplx{-(1.0 - 1e-15), 0.0}}, cplx{1.0, 0.0}, 1);
    FAIL("expected TauCollision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TauCollision);
  }
}

TEST_CASE("nu_data: Examples 3 and 4, Example 1 rejected") {
  const NuData n3 = nu_data(example3(12, 400000), 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(n3.M[n - 1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(n3.gamma[n] == doctest::Approx(std::ldexp(1.0, -static_cast<int>(n))).epsilon(1e-8));
    CHECK(std::abs(n3.beta[n - 1]) <= 1e-9);
  }
  CHECK(n3.gamma_recurrence_gap <= 1e-11);

  for (const double lambda : {0.0, 1.0, 2.0}) {
    ExampleSpec e{ExampleId::Ex4, 0.5, lambda, 0.7, {}};
    const NuData nd = nu_data(example_sequences(e, 12, 400000), 12);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(nd.M[n - 1] == doctest::Approx(closed_form_M(e, n)).epsilon(1e-9));
    CHECK(nd.gamma_recurrence_gap <= 1e-11);
    CHECK(nd.reciprocal_gap <= 1e-12);
    CHECK(nd.tau_moebius_gap <= 1e-12);
  }

  try {
    nu_data(example1(12, 400000), 12);
    FAIL("expected RequiresMultipleParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RequiresMultipleParameter);
  }
}

TEST_CASE("s-family: Example 1 rotations and Example 3 closed forms") {
  const std::vector<cplx> zero(12, cplx{});
  for (const double s : {0.5, -2.0}) {
    const SFamily f = s_family(zero, cplx{0.5, 0.0}, s, 12);
    CHECK(f.c[0] == doctest::Approx(-2.0 * s).epsilon(1e-15));
    CHECK(f.d[0] == doctest::Approx(0.5).epsilon(1e-14));
    for (std::size_t n = 1; n < 12; ++n) {
      CHECK(std::abs(f.c[n]) <= 1e-14);
      CHECK(f.d[n] == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(std::abs(f.tau[n] - cplx{1.0, 2.0 * s} / cplx{1.0, -2.0 * s}) <= 1e-14);
    }
  }

  std::vector<cplx> alpha3(16);
  for (std::size_t k = 0; k < alpha3.size(); ++k) alpha3[k] = cplx{-1.0 / (k + 2.0), 0.0};
  for (const double s : {0.1, 1.0, -2.0}) {
    const SFamily f = s_family(alpha3, cplx{0.5, 0.0}, s, 15);
    for (std::size_t n = 0; n <= 15; ++n) {
      const double q = (n + 1.0) * (n + 2.0) * s;
      CHECK(std::abs(f.tau[n] - cplx{1.0, q} / cplx{1.0, -q}) <= 1e-12);
    }
    for (std::size_t n = 1; n <= 15; ++n) {
      const double ell = n / (2.0 * (n + 1.0)) * (1.0 + std::pow((n + 1.0) * (n + 2.0) * s, 2)) /
                         (1.0 + n * (n + 1.0) * (n + 1.0) * (n + 2.0) * s * s);
      CHECK(f.ell[n] == doctest::Approx(ell).epsilon(1e-11));
    }
  }

  const SFamily f0 = s_family(alpha3, cplx{0.5, 0.0}, 0.0, 15);
  for (std::size_t n = 0; n < 15; ++n) {
    CHECK(std::abs(f0.c[n]) <= 1e-15);
    CHECK(f0.d[n] == doctest::Approx(0.25).epsilon(1e-14));
  }
  CHECK_THROWS_AS(s_family(alpha3, cplx{0.4, 0.0}, 1.0, 5), Error);
}

TEST_CASE("s-family reproduces the example sequences from I(mu)") {
  for (const ExampleId id : {ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3}) {
    const VerblunskyData v0 = verblunsky_from_cd(example_sequences(ex(id), 22), 20);
    const cplx I = principal_value_I(ex(id));
    CHECK(I.real() == doctest::Approx(0.5).epsilon(1e-12));
    for (const double s : {0.3, -0.7}) {
      const SFamily f = s_family(v0.alpha, I, s, 19);
      const CoefficientData direct = example_sequences(ex(id, s), 20);
      for (std::size_t n = 1; n <= 20; ++n) CHECK(std::abs(f.c[n - 1] - direct.c_at(n)) <= 1e-12);
      for (std::size_t n = 1; n <= 19; ++n) CHECK(std::abs(f.d[n - 1] - direct.d_at(n)) <= 1e-12);
    }
  }
}

TEST_CASE("Szegő recursion against the R-based Phi") {
  std::mt19937_64 rng(21);
  const std::vector<cplx> points{cplx{0.3, 0.4}, std::polar(1.0, 0.7), cplx{-1.2, 0.5}, cplx{0.0, 0.0}};
  for (int trial = 0; trial < 50; ++trial) {
    const CoefficientData cd = random_cd(rng, 14);
    const VerblunskyData v = verblunsky_from_cd(cd, 13);
    for (std::size_t m = 0; m <= 12; ++m) {
      for (const cplx z : points) {
        const cplx a = phi_from_verblunsky(v.alpha, m, z);
        const cplx b = eval_Phi(cd, m, z);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
      }
    }
  }
  ExampleSpec e4{ExampleId::Ex4, 0.5, 0.5, -0.3, {}};
  std::vector<cplx> alpha4(12);
  for (std::size_t k = 0; k < 12; ++k) alpha4[k] = closed_form_alpha(e4, k);
  for (std::size_t m = 0; m <= 12; ++m) {
    for (const cplx z : points) {
      CHECK(std::abs(phi_from_verblunsky(alpha4, m, z) - closed_form_Phi(e4, m, z)) <= 1e-11);
    }
  }
}

TEST_CASE("para-orthogonal polynomials are multiples of R_n") {
  std::mt19937_64 rng(5);
  const std::vector<cplx> points{cplx{0.2, -0.9}, std::polar(1.0, 2.0), cplx{1.5, 0.25}};
  for (int trial = 0; trial < 50; ++trial) {
    const CoefficientData cd = random_cd(rng, 13);
    const VerblunskyData v = verblunsky_from_cd(cd, 12);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(para_orthogonal_gap(cd, v, n, points) <= 1e-10);
  }
}

TEST_CASE("principal value integrals") {
  CHECK(principal_value_integral([](double x) { return 1.0 / (1.0 + x * x); }) ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(principal_value_integral([](double x) { return x / (1.0 + x * x); })) <= 1e-14);
  CHECK(principal_value_integral([](double x) { return (1.0 + x) / std::pow(1.0 + x * x, 2); }) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("PV orthogonality, Examples 1 to 3") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const PvReport r = pv_checks(ex(ExampleId::Ex1, 0.5), n);
    CHECK(r.passed);
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(std::abs(r.lhs[k]) <= 1e-6);
    CHECK(r.lhs[n - 1] == doctest::Approx(2.0 * 0.5 * std::ldexp(1.0, -static_cast<int>(n - 1))).epsilon(1e-6));
  }
  for (const ExampleId id : {ExampleId::Ex2, ExampleId::Ex3}) {
    for (const double s : {0.0, 0.5, -1.5}) {
      for (std::size_t n = 1; n <= 8; ++n) CHECK(pv_checks(ex(id, s), n).passed);
    }
  }
  ExampleSpec e2{ExampleId::Ex2, 0.3, 0.0, 0.0, 0.0};
  CHECK(pv_checks(e2, 1).first_moment == doctest::Approx(0.3).epsilon(1e-10));
  CHECK_THROWS_AS(pv_checks(ExampleSpec{ExampleId::Ex4, 0.5, 1.0, 1.0, 0.0}, 3), Error);
  CHECK_THROWS_AS(pv_checks(ex(ExampleId::Ex1, 0.5), 13), Error);
}
