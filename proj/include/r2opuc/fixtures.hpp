#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "r2opuc/recurrence.hpp"

namespace r2opuc {

enum class ExampleId { Ex1, Ex2, Ex3, Ex4 };

/// One of the four worked families.  kappa is used by Ex2, lambda and eta by
/// Ex4; s selects a member of the s-family (Ex1..Ex3 always, Ex4 optionally).
struct ExampleSpec {
  ExampleId id = ExampleId::Ex1;
  double kappa = 0.5;   ///< (0, 1)
  double lambda = 0.0;  ///< > -1
  double eta = 0.0;
  std::optional<double> s;

  double s_or_zero() const { return s.value_or(0.0); }
  /// Throws ParameterOutOfDomain.
  void validate() const;
};

ExampleSpec parse_example_id(const std::string& name);  ///< "ex1".."ex4"
const char* to_string(ExampleId id) noexcept;

/// sum_{k<=n} (-n)_k (a2)_k / ((c)_k k!) w^k.  Throws PoleInC when one of
/// c, c + 1, ..., c + n - 1 vanishes.
cplx eval_2f1_poly(std::size_t n, cplx a2, cplx c, cplx w);

/// (a)_n = a (a + 1) ... (a + n - 1).
cplx pochhammer(cplx a, std::size_t n);

/// log Gamma(z) for Re(z) > 0 (Lanczos, g = 7).
cplx log_gamma(cplx z);

/// c_1..c_N and d_2..d_{L+1} with L = max(N + 1, chain_len).
CoefficientData example_sequences(const ExampleSpec& ex, std::size_t N, std::size_t chain_len = 0);

/// Closed forms at s = 0.  Throw UnsupportedExample where none is displayed.
cplx closed_form_P(const ExampleSpec& ex, std::size_t n, double x);
cplx closed_form_R(const ExampleSpec& ex, std::size_t n, cplx z);
cplx closed_form_R_hat(const ExampleSpec& ex, std::size_t n, cplx z);
cplx closed_form_Phi(const ExampleSpec& ex, std::size_t n, cplx z);
cplx closed_form_alpha(const ExampleSpec& ex, std::size_t n);  ///< alpha_n, n >= 0
cplx closed_form_u(const ExampleSpec& ex, std::size_t n, double x);
cplx closed_form_u_hat(const ExampleSpec& ex, std::size_t n, double x);
/// Maximal parameter M_n, n >= 1 (Ex3; Ex4 with lambda > -1/2).
double closed_form_M(const ExampleSpec& ex, std::size_t n);

struct PointMass {
  cplx zeta;
  double x = 0.0;  ///< preimage under x -> (x + i)/(x - i)
  double mass = 0.0;
};

/// Density of mu in theta on (0, 2 pi), without point masses.
double circle_density(const ExampleSpec& ex, double theta);
std::vector<PointMass> point_masses(const ExampleSpec& ex);

/// Real-line pushforward d psi(x) = -d mu((x + i)/(x - i)), absolutely
/// continuous part.
double psi_density(const ExampleSpec& ex, double x);

/// d phi(x) = -d nu((x + i)/(x - i)) for the measure nu of the maximal
/// parameters (Ex3; Ex4 with lambda > -1/2).
double phi_density(const ExampleSpec& ex, double x);

/// Total mass of mu by adaptive quadrature plus point masses.
double circle_mass(const ExampleSpec& ex);

/// I(mu) = PV int zeta / (zeta - 1) d mu, by quadrature.
cplx principal_value_I(const ExampleSpec& ex);

/// Sequences, minimal parameters and the displayed Verblunsky coefficients
/// as a JSON document.
std::string export_fixture_json(const ExampleSpec& ex, std::size_t N);

}  // namespace r2opuc
