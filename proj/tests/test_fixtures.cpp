#include "doctest.h"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "r2opuc/errors.hpp"
#include "r2opuc/fixtures.hpp"
#include "r2opuc/opuc.hpp"
#include "r2opuc/spectral.hpp"
#include "support.hpp"

using namespace r2opuc;
using namespace r2opuc::testing;

namespace {

ExampleSpec make(ExampleId id, double s = 0.0) {
  ExampleSpec e;
  e.id = id;
  e.s = s;
  return e;
}

ExampleSpec ex4(double lambda, double eta) { return ExampleSpec{ExampleId::Ex4, 0.5, lambda, eta, {}}; }

double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-13);
}

}  // namespace

TEST_CASE("hypergeometric polynomial, Pochhammer and log Gamma") {
  // 2F1(-2, a; c; w) = 1 - 2 a w / c + a (a + 1) w^2 / (c (c + 1)).
  const cplx a{0.5, 1.0};
  const cplx c{2.5, 0.0};
  const cplx w{0.3, -0.2};
  CHECK(std::abs(eval_2f1_poly(2, a, c, w) - (1.0 - 2.0 * a * w / c + a * (a + 1.0) * w * w / (c * (c + 1.0)))) <= 1e-15);
  CHECK(std::abs(eval_2f1_poly(0, a, c, w) - 1.0) == 0.0);
  CHECK_THROWS_AS(eval_2f1_poly(3, a, cplx{-1.0, 0.0}, w), Error);
  CHECK(eval_2f1_poly(1, a, cplx{-1.0, 0.0}, w) == eval_2f1_poly(1, a, cplx{-1.0, 0.0}, w));

  CHECK(std::abs(pochhammer(cplx{3.0, 0.0}, 4) - 360.0) == 0.0);
  for (const double x : {0.5, 1.0, 3.7, 12.0}) CHECK(log_gamma(cplx{x, 0.0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  for (const double y : {0.3, 1.0, 2.5}) {
    // |Gamma(1 + i y)|^2 = pi y / sinh(pi y).
    CHECK(2.0 * log_gamma(cplx{1.0, y}).real() == doctest::Approx(std::log(kPi * y / std::sinh(kPi * y))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(log_gamma(cplx{-0.5, 0.0}), Error);
}

TEST_CASE("parameter validation and names") {
  CHECK(parse_example_id("ex3").id == ExampleId::Ex3);
  CHECK(std::string(to_string(ExampleId::Ex2)) == "ex2");
  CHECK_THROWS_AS(parse_example_id("ex5"), Error);
  ExampleSpec bad{ExampleId::Ex2, 1.5, 0.0, 0.0, {}};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(example_sequences(ex4(-1.0, 0.0), 3), Error);
  CHECK_THROWS_AS(closed_form_P(make(ExampleId::Ex2), 2, 0.5), Error);
  CHECK_THROWS_AS(closed_form_alpha(make(ExampleId::Ex3, 0.5), 2), Error);
  CHECK_THROWS_AS(closed_form_M(make(ExampleId::Ex1), 2), Error);
}

TEST_CASE("sequences are positive chain sequences") {
  for (const ExampleId id : {ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3}) {
    for (const double s : {0.0, 0.5, -3.0}) {
      const CoefficientData cd = example_sequences(make(id, s), 40);
      for (std::size_t n = 2; n <= 41; ++n) {
        CHECK(cd.l(n) > 0.0);
        CHECK(cd.l(n) < 1.0);
      }
    }
  }
  const CoefficientData cd4 = example_sequences(ExampleSpec{ExampleId::Ex4, 0.5, 0.5, 1.0, 0.7}, 20);
  for (std::size_t n = 2; n <= 21; ++n) CHECK((cd4.l(n) > 0.0 && cd4.l(n) < 1.0));
}

TEST_CASE("Example 3 s-family: Wall series stays single for s != 0") {
  const CoefficientData cd0 = example_sequences(make(ExampleId::Ex3), 10, 20000);
  CHECK(classify(cd0.d, 20000).classification == Classification::MultipleParameter);
  const CoefficientData cd = example_sequences(make(ExampleId::Ex3, 0.5), 10, 20000);
  CHECK(classify(cd.d, 20000).classification == Classification::SingleParameter);
}

TEST_CASE("Example 2: Verblunsky coefficients do not depend on s") {
  ExampleSpec e{ExampleId::Ex2, 0.65, 0.0, 0.0, 0.0};
  const VerblunskyData base = verblunsky_from_cd(example_sequences(e, 17), 16);
  for (const double s : {-1.0, 0.3, 0.2, -0.9, 4.0}) {
    e.s = s;
    const VerblunskyData v = verblunsky_from_cd(example_sequences(e, 17), 16);
    for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(v.alpha[k] - base.alpha[k]) <= 1e-12);
  }
}

TEST_CASE("closed forms agree with the recurrences") {
  const std::vector<double> xs{-3.5, -0.4, 0.0, 0.9, 6.0};
  const std::vector<cplx> zs{cplx{0.3, 0.4}, std::polar(1.0, 2.2), cplx{1.0005, 0.0002}, cplx{-1.5, 0.7}};
  for (const ExampleSpec& e : {make(ExampleId::Ex1), make(ExampleId::Ex3), ex4(0.0, 0.8), ex4(1.5, -1.0), ex4(-0.7, 0.4)}) {
    const CoefficientData cd = example_sequences(e, 13);
    for (std::size_t n = 0; n <= 12; ++n) {
      const double lead = leading_coeff(cd, n);
      for (const double x : xs) {
        const cplx p = closed_form_P(e, n, x);
        const double scale = std::max(1.0, lead) * std::pow(x * x + 1.0, n / 2.0);
        CHECK(std::abs(p.imag()) <= 1e-12 * scale);
        CHECK(std::abs(p.real() - eval_P(cd, n, x).value.value()) <= 1e-12 * scale);
      }
      for (const cplx z : zs) {
        const cplx r = eval_R(cd, n, z).value();
        const double scale = std::max(1.0, std::abs(r)) * std::pow(1.0 + std::abs(z), n);
        CHECK(std::abs(closed_form_R(e, n, z) - r) <= 1e-12 * scale);
        const cplx phi = eval_Phi(cd, n, z);
        CHECK(std::abs(closed_form_Phi(e, n, z) - phi) <= 1e-11 * std::max(1.0, std::abs(phi)) * std::pow(1.0 + std::abs(z), n));
      }
    }
  }
}

TEST_CASE("closed forms of R^_n, u_n and u^_n") {
  const std::vector<double> xs{-2.0, 0.3, 5.0};
  for (const ExampleId id : {ExampleId::Ex1, ExampleId::Ex3}) {
    const ExampleSpec e = make(id);
    const CoefficientData cd = example_sequences(e, 13);
    for (std::size_t n = 1; n <= 12; ++n) {
      for (const cplx z : {cplx{0.1, 0.8}, cplx{1.0002, 0.0}, cplx{-2.0, 1.0}}) {
        const cplx r = eval_R_hat(cd, n, z).value();
        CHECK(std::abs(closed_form_R_hat(e, n, z) - r) <= 1e-11 * std::pow(1.0 + std::abs(z), n));
      }
      for (const double x : xs) {
        CHECK(std::abs(closed_form_u(e, n, x) - eval_u(cd, n, x).value()) <= 1e-12);
        CHECK(std::abs(closed_form_u_hat(e, n, x) - eval_u_hat_direct(cd, n, x)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("measures are probability measures; I(mu) for Example 4") {
  for (const ExampleSpec& e : {make(ExampleId::Ex1), make(ExampleId::Ex2), make(ExampleId::Ex3), ex4(0.0, 1.0), ex4(2.0, -0.5), ex4(-0.5, 0.3)}) {
    CHECK(circle_mass(e) == doctest::Approx(1.0).epsilon(1e-8));
    double masses = 0.0;
    for (const PointMass& m : point_masses(e)) masses += m.mass;
    CHECK(principal_value_integral([&e](double x) { return psi_density(e, x); }) ==
          doctest::Approx(1.0 - masses).epsilon(1e-8));
  }
  for (const double lambda : {0.0, 1.0, 2.5}) {
    const cplx I = principal_value_I(ex4(lambda, 1.3));
    CHECK(I.real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(I.imag() == doctest::Approx(-1.3 / (2.0 * (lambda + 1.0))).epsilon(1e-9));
  }
  const cplx I2 = principal_value_I(ExampleSpec{ExampleId::Ex2, 0.3, 0.0, 0.0, {}});
  CHECK(std::abs(I2 - cplx{0.5, -0.15}) <= 1e-10);
}

TEST_CASE("phi densities are probability measures") {
  for (const ExampleSpec& e : {make(ExampleId::Ex3), ex4(0.0, 0.5), ex4(1.0, -1.0), ex4(2.0, 0.0)}) {
    CHECK(principal_value_integral([&e](double x) { return phi_density(e, x); }) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(phi_density(make(ExampleId::Ex1), 0.0), Error);
  CHECK_THROWS_AS(phi_density(ex4(-0.7, 0.0), 0.0), Error);
}

TEST_CASE("quadrature moments match the density moments") {
  for (const ExampleSpec& e : {make(ExampleId::Ex2), make(ExampleId::Ex3), ex4(1.0, 0.6)}) {
    const std::size_t n = 10;
    const CircleQuadrature q = quadrature(example_sequences(e, n), n);
    for (int k = -(static_cast<int>(n) - 1); k < static_cast<int>(n); ++k) {
      const double re = integrate([&](double t) { return std::cos(k * t) * circle_density(e, t); }, 0.0, 2.0 * kPi);
      const double im = integrate([&](double t) { return std::sin(k * t) * circle_density(e, t); }, 0.0, 2.0 * kPi);
      cplx expect{re, im};
      for (const PointMass& m : point_masses(e)) expect += m.mass * std::pow(m.zeta, k);
      const Moment got = discrete_moment(q, k);
      CHECK(got.measure_exact);
      CHECK(std::abs(got.value - expect) <= 1e-9);
    }
  }
}

TEST_CASE("fixture JSON export") {
  const auto j = nlohmann::json::parse(export_fixture_json(make(ExampleId::Ex3), 5));
  CHECK(j["example"] == "ex3");
  CHECK(j["c"].size() == 5);
  CHECK(j["d"].size() == 5);
  CHECK(j["ell"].size() == 6);
  CHECK(j["alpha"][2][0].get<double>() == doctest::Approx(-0.25));
  const auto j2 = nlohmann::json::parse(export_fixture_json(ExampleSpec{ExampleId::Ex2, 0.2, 0.0, 0.0, 1.0}, 4));
  CHECK(j2["c"][0].get<double>() == doctest::Approx(0.2 - 2.0));
  CHECK_FALSE(j2.contains("alpha"));
}

TEST_CASE("worked values") {
  CHECK(std::abs(closed_form_P(make(ExampleId::Ex1), 2, 0.0) + 0.5) <= 1e-15);
  CHECK(std::abs(closed_form_P(make(ExampleId::Ex3), 1, 0.0)) <= 1e-15);
  CHECK(std::abs(closed_form_P(ex4(1.0, 0.0), 1, 3.0) - 3.0) <= 1e-14);
  const cplx a2{0.7, -0.2};
  const cplx c{1.3, 0.4};
  const cplx w{0.5, 0.5};
  CHECK(std::abs(eval_2f1_poly(1, a2, c, w) - (1.0 - a2 / c * w)) <= 1e-15);
  CHECK(std::abs(eval_2f1_poly(5, a2, c, cplx{}) - 1.0) == 0.0);

  const CoefficientData e4 = example_sequences(ex4(1.0, 2.0), 1);
  CHECK(e4.c_at(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e4.d_at(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const CoefficientData e3 = example_sequences(make(ExampleId::Ex3), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(e3.c_at(n) == 0.0);
    CHECK(e3.d_at(n) == 0.25);
  }
}

TEST_CASE("Example 2 at s = 0: the four residues for m = 0 and m = 1") {
  // 1 + j kappa with kappa = 1/2.
  const auto a = [](double j) { return 1.0 + 0.5 * j; };
  const CoefficientData cd = example_sequences(ExampleSpec{ExampleId::Ex2, 0.5, 0.0, 0.0, 0.0}, 9);
  CHECK(cd.c_at(1) == doctest::Approx(0.5));
  for (const int m : {0, 1}) {
    const double k = 4.0 * m;
    CHECK(cd.c_at(4 * m + 2) == doctest::Approx(-0.5 / a(k)).epsilon(1e-15));
    CHECK(std::abs(cd.c_at(4 * m + 3)) <= 1e-16);
    CHECK(cd.c_at(4 * m + 4) == doctest::Approx(0.5 / a(k + 2)).epsilon(1e-15));
    CHECK(cd.c_at(4 * m + 5) == doctest::Approx(-0.5 / (a(k + 3) * a(k + 3))).epsilon(1e-15));
    CHECK(cd.l(4 * m + 2) == doctest::Approx(a(k - 1) * a(k + 1) / (2.0 * a(k) * a(k))).epsilon(1e-15));
    CHECK(cd.l(4 * m + 3) == doctest::Approx(a(k) / (2.0 * a(k + 1))).epsilon(1e-15));
    CHECK(cd.l(4 * m + 4) == doctest::Approx((0.25 + a(k + 2) * a(k + 2)) / (2.0 * a(k + 2) * a(k + 2))).epsilon(1e-15));
    CHECK(cd.l(4 * m + 5) ==
          doctest::Approx(a(k + 2) * (0.25 + a(k + 4) * a(k + 4)) / (2.0 * std::pow(a(k + 3), 3))).epsilon(1e-15));
  }
  CHECK(cd.c_at(2) == doctest::Approx(-0.5));
  CHECK(cd.l(2) == doctest::Approx(0.375));
}
