#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "r2opuc/fixtures.hpp"
#include "r2opuc/poly.hpp"
#include "r2opuc/recurrence.hpp"

namespace r2opuc {

/// How the rotations tau_n were produced.
enum class TauConvention {
  Product,  ///< tau_0 = 1, tau_n = tau_{n-1} (1 - i c_n) / (1 + i c_n)
  Moebius,  ///< tau_1 given, tau_{n+1} = (tau_n + conj(a_{n-1})) / (1 + tau_n a_{n-1})
};

using cplx_ext = std::complex<long double>;

/// Verblunsky coefficients and rotations.  alpha[k] holds alpha_k and
/// tau[k] holds tau_{k+1}.  The map back to (c, d) amplifies rounding in
/// alpha by up to prod (1 - l_k)/l_k, so the extended copies are kept when
/// the producer has them.
struct VerblunskyData {
  std::vector<cplx> alpha;
  std::vector<cplx> tau;
  std::vector<cplx_ext> alpha_ext;  ///< empty when not computed
  std::vector<cplx_ext> tau_ext;
  TauConvention convention = TauConvention::Product;

  cplx alpha_at(std::size_t n) const { return alpha.at(n); }  ///< alpha_n, n >= 0
  cplx tau_at(std::size_t n) const { return tau.at(n - 1); }  ///< tau_n, n >= 1
};

/// alpha_0..alpha_{N-1} and tau_1..tau_N from
///   alpha_{n-1} = -(1/tau_n) (1 - 2 l_{n+1} - i c_{n+1}) / (1 - i c_{n+1}).
/// Needs c_1..c_{N+1}.
VerblunskyData verblunsky_from_cd(const CoefficientData& cd, std::size_t N);

/// Result of the reciprocal map (alpha, tau_1) -> (c, d).
struct ReciprocalData {
  CoefficientData cd;        ///< c_1..c_N, d_2..d_{N+1}
  std::vector<double> c;     ///< c_1..c_{N+1}
  std::vector<double> ell;   ///< l_1..l_{N+1}
  VerblunskyData verblunsky; ///< input alpha with the Moebius tau_1..tau_{N+1}
  double alternative_gap = 0.0;   ///< max gap between the tau_n and tau_{n+1} forms of c and l
  double consistency_gap = 0.0;   ///< max |(1 - tau_{n+1} a)(1 + tau_n a) - (1 - |a|^2)|
};

/// c_1 = i (tau_1 - 1)/(tau_1 + 1), c_{n+1} = Im(w) / (1 + Re(w)),
/// l_{n+1} = |1 + w|^2 / (2 (1 + Re(w))) with w = tau_n alpha_{n-1}, for
/// n = 1..N.  Throws TauCollision when |1 + w| < 1e-14 and DegenerateTau when
/// |tau_1| != 1 or tau_1 = -1.
ReciprocalData cd_from_verblunsky(const std::vector<cplx>& alpha, cplx tau1, std::size_t N);

/// Same map seeded by v.tau_at(1), in long double when v carries the
/// extended coefficients.
ReciprocalData cd_from_verblunsky(const VerblunskyData& v, std::size_t N);

/// Converts product-convention rotations of (c, d) to the Moebius update
/// seeded by tau_1 and returns the largest discrepancy.  Runs in long double
/// on the extended coefficients when present.
double tau_convention_gap(const CoefficientData& cd, const VerblunskyData& v);

/// Coefficients of the measure nu of the maximal parameters.
struct NuData {
  std::vector<cplx> beta;     ///< beta_0..beta_{N-1}
  std::vector<double> M;      ///< M_1..M_{N+1}
  std::vector<double> gamma;  ///< gamma_0..gamma_N
  std::vector<cplx> tau;      ///< tau_0..tau_N (product convention)
  double gamma_recurrence_gap = 0.0;  ///< max |gamma_{n+1} - gamma_n + d_{n+1} gamma_{n-1}| / gamma_{n-1}
  double reciprocal_gap = 0.0;        ///< regenerated c_n and M_n against the inputs
  double tau_moebius_gap = 0.0;       ///< tau_n = (tau_{n-1} - conj(b))/(1 - tau_{n-1} b) against the product
  bool extrapolated = false;
};

/// Maximal parameters, beta_{n-1} = (1/tau_{n-1}) (1 - 2 M_n - i c_n)/(1 - i c_n)
/// and gamma_n = (1 - M_n) gamma_{n-1}.  The chain in cd must be long enough
/// for the classification and the extrapolated maximal parameters (depth is a
/// quarter of its length).  Throws RequiresMultipleParameter unless the chain
/// classifies as MultipleParameter.
NuData nu_data(const CoefficientData& cd, std::size_t N);

/// The s-parameterised family with tau_1(s) = (I + i s)/(conj(I) - i s).
struct SFamily {
  double s = 0.0;
  cplx I_value;
  std::vector<double> c;    ///< c_1(s)..c_{N+1}(s)
  std::vector<double> d;    ///< d_2(s)..d_{N+1}(s)
  std::vector<double> ell;  ///< l_1(s)..l_{N+1}(s)
  std::vector<cplx> tau;    ///< tau_1(s)..tau_{N+1}(s)
  CoefficientData cd;       ///< c_1(s)..c_N(s) with d_2(s)..d_{N+1}(s)
};

/// Throws ParameterOutOfDomain unless |Re(I) - 1/2| <= 1e-12.
SFamily s_family(const std::vector<cplx>& alpha, cplx I_value, double s, std::size_t N);

/// Monic Phi_N by the Szegő recursion Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*.
ComplexPoly phi_coeffs_from_verblunsky(const std::vector<cplx>& alpha, std::size_t N);
cplx phi_from_verblunsky(const std::vector<cplx>& alpha, std::size_t N, cplx z);

/// z Phi_{n-1}(z) + tau_n Phi_{n-1}^*(z).
cplx para_orthogonal(const std::vector<cplx>& alpha, const std::vector<cplx>& tau, std::size_t n, cplx z);

/// ((1 + tau_1)/2) prod_{k<n} (1 + Re(tau_k a_{k-1})) / (1 + tau_k a_{k-1}),
/// the factor taking R_n to the para-orthogonal polynomial.
cplx para_orthogonal_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& tau, std::size_t n);

/// Largest |R_n(z) factor - (z Phi_{n-1} + tau_n Phi_{n-1}^*)| relative to the
/// right side over the given points.
double para_orthogonal_gap(const CoefficientData& cd, const VerblunskyData& v, std::size_t n,
                           const std::vector<cplx>& points);

/// int_a^b f by adaptive Gauss-Kronrod; each panel stops once its error
/// estimate is below tolerance (int |f| + width).
double integrate_interval(const std::function<double(double)>& f, double a, double b, double tolerance = 1e-12);

/// lim_{y -> inf} int_{-y}^{y} f(x) dx by folding x and -x onto [0, inf) and
/// substituting x = tan(t), with adaptive Gauss-Kronrod.  Integrals that
/// vanish by symmetry terminate through the width term.
double principal_value_integral(const std::function<double(double)>& f, double tolerance = 1e-12);

/// PV int x^j P_n(x) (x^2 + 1)^{lift - n} w(x) dx.
double p_moment(const CoefficientData& cd, std::size_t n, std::size_t j, std::size_t lift,
                const std::function<double(double)>& w);

struct PvReport {
  std::size_t n = 0;
  double s = 0.0;
  double first_moment = 0.0;  ///< PV int x d psi
  std::vector<double> lhs;    ///< k = 0..n-1
  std::vector<double> rhs;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// PV int x^k P_n(s; x) / (x^2 + 1)^n (x^2 + 1) d psi(x) against
/// -[c_1 - PV int x d psi] p_n delta_{n-1,k} for k = 0..n-1.  Ex1..Ex3 only
/// (UnsupportedExample otherwise); n <= 12.
PvReport pv_checks(const ExampleSpec& ex, std::size_t n, double tolerance = 1e-6);

}  // namespace r2opuc
