#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "r2opuc/chain.hpp"
#include "r2opuc/poly.hpp"
#include "r2opuc/scaled.hpp"

namespace r2opuc {

/// The pair ({c_n}, {d_{n+1}}) driving
///   P_{n+1}(x) = (x - c_{n+1}) P_n(x) - d_{n+1} (x^2 + 1) P_{n-1}(x).
///
/// c[k] holds c_{k+1}; the chain d may run past the usable degree N (longer
/// chains feed the maximal-parameter machinery).  `ell` carries the minimal
/// parameters l_1..l_{d.size()+1}.
struct CoefficientData {
  std::vector<double> c;
  ChainSequence d;
  ChainParams ell;
  std::size_t N = 0;

  double c_at(std::size_t n) const { return c.at(n - 1); }  ///< c_n, n >= 1
  double d_at(std::size_t n) const { return d.at(n); }      ///< d_{n+1}, n >= 1
  double l(std::size_t n) const { return ell.l(n); }        ///< l_n, n >= 1
};

/// Validates the input and derives the minimal parameters.  N = c.size();
/// d must hold at least d_2..d_{N+1}.
CoefficientData make_coefficient_data(std::vector<double> c, ChainSequence d);

struct PolyEval {
  PolyValue value;
  PolyValue derivative;
};

/// P_n(x) and P_n'(x) through the recurrence and its derivative.
PolyEval eval_P(const CoefficientData& cd, std::size_t n, double x);

/// Leading coefficient p_n = prod_{j<=n} (1 - l_j).
double leading_coeff(const CoefficientData& cd, std::size_t n);

/// Wronskian P_n' P_{n-1} - P_{n-1}' P_n, positive on the real line for n >= 1.
PolyValue wronskian_G(const CoefficientData& cd, std::size_t n, double x);

/// (P_n(x) P_{n-1}(y) - P_{n-1}(x) P_n(y)) / (x - y).
PolyValue kernel_G(const CoefficientData& cd, std::size_t n, double x, double y);

/// u_n(x) = (-1)^n P_n(x) / ((x - i)^n prod_{j<=n} sqrt(d_{j+1})).
ComplexPolyValue eval_u(const CoefficientData& cd, std::size_t n, double x);

/// The vector [u_0(x), ..., u_{n-1}(x)].
std::vector<cplx> eval_u_vector(const CoefficientData& cd, std::size_t n, double x);

/// sqrt(l_{k+1}) u_k(x) + sqrt(1 - l_k) u_{k-1}(x), k >= 1.
cplx eval_u_hat(const CoefficientData& cd, std::size_t k, double x);

/// Same function through P_k - (1 - l_k)(x - i) P_{k-1}; no cancellation
/// between two separately rounded u's.
cplx eval_u_hat_direct(const CoefficientData& cd, std::size_t k, double x);

/// R_n(z) from R_{k+1} = [(1 + i c_{k+1}) z + (1 - i c_{k+1})] R_k - 4 d_{k+1} z R_{k-1}.
ComplexPolyValue eval_R(const CoefficientData& cd, std::size_t n, cplx z);

/// R^_k(z) = R_k(z) - 2 (1 - l_k) R_{k-1}(z), k >= 1.  Vanishes at z = 1.
ComplexPolyValue eval_R_hat(const CoefficientData& cd, std::size_t k, cplx z);

inline constexpr std::size_t kMaxCoefficientDegree = 512;

ComplexPoly coeffs_R(const CoefficientData& cd, std::size_t n);
ComplexPoly coeffs_R_hat(const CoefficientData& cd, std::size_t k);

/// Monic Phi_m = R^_{m+1}(z) / ((z - 1) prod_{j<=m+1} (1 + i c_j)), obtained
/// by synthetic division of the coefficients of R^_{m+1} by (z - 1).
/// Throws DeflationResidual when the remainder exceeds 1e-10 ||R^_{m+1}||.
ComplexPoly coeffs_Phi(const CoefficientData& cd, std::size_t m);

/// Phi_m(z): coefficient form up to degree 512, pointwise quotient beyond.
cplx eval_Phi(const CoefficientData& cd, std::size_t m, cplx z);

/// Phi_m(z) as the pointwise quotient R^_{m+1}(z) / ((z - 1) prod (1 + i c_j));
/// requires z away from 1.
cplx eval_Phi_pointwise(const CoefficientData& cd, std::size_t m, cplx z);

/// Cayley map x -> (x + i)/(x - i) onto the unit circle minus 1.
cplx cayley(double x);

}  // namespace r2opuc
