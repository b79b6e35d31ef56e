#pragma once

#include <cstddef>
#include <vector>

#include "r2opuc/pencil.hpp"
#include "r2opuc/recurrence.hpp"

namespace r2opuc {

/// Nodes and weights of the discrete measures on the real line and the circle.
struct CircleQuadrature {
  std::size_t n = 0;
  std::vector<double> x;           ///< zeros of P_n, descending
  std::vector<cplx> zeta;          ///< (x_r + i)/(x_r - i), renormalised to |zeta| = 1
  std::vector<double> lambda;      ///< (x_r^2 + 1)^{n-1} d_2...d_n / G_n(x_r)
  std::vector<double> lambda_hat;  ///< (1 + c_1^2) |zeta_r - 1|^2 lambda_r / 4, summing to 1
};

/// Zeros from the pencil, weights from the Wronskian.
CircleQuadrature quadrature(const CoefficientData& cd, std::size_t n);

/// Weights read off the B-normalised eigenvectors: lambda_r = |v_r[0]|^2.
std::vector<double> eigenvector_weights(const CoefficientData& cd, std::size_t n);

struct Moment {
  cplx value;
  bool measure_exact = true;  ///< false when |k| >= n
};

/// sum_r lambda^_r zeta_r^k.
Moment discrete_moment(const CircleQuadrature& q, int k);

struct OrthogonalityReport {
  std::size_t size = 0;
  double max_offdiag = 0.0;  ///< max |G_mk| / sqrt(D_m D_k), m != k
  double max_diag = 0.0;     ///< max |G_kk / D_k - 1|
  double tolerance = 0.0;
  bool passed = false;
};

/// sum_r lambda_r conj(R^_m(zeta_r)) R^_k(zeta_r) against
/// delta_mk 2^{2k} d_2...d_{k+1} / l_{k+1}, 1 <= m, k <= n.
OrthogonalityReport verify_discrete_orthogonality(const CoefficientData& cd, std::size_t n,
                                                  double tolerance = 1e-9);

/// sum_r lambda^_r conj(Phi_m(zeta_r)) Phi_k(zeta_r) against
/// delta_mk (1 + c_1^2) 2^{2k} d_2...d_{k+2} / (l_{k+2} prod_{j<=k+1} (1 + c_j^2)),
/// 0 <= m, k <= n - 1.
OrthogonalityReport verify_phi_orthogonality(const CoefficientData& cd, std::size_t n,
                                             double tolerance = 1e-9);

/// sum_r lambda_r conj(u^_m(x_r)) u^_k(x_r) against delta_mk, 1 <= m, k <= n.
OrthogonalityReport verify_u_hat_orthonormality(const CoefficientData& cd, std::size_t n,
                                                double tolerance = 1e-10);

/// b_k = -1 / (2^k (1 - l_1)...(1 - l_k)), k = 1..n.
std::vector<double> combination_coefficients(const ChainParams& ell, std::size_t n);

/// |1 - sum_{k<n} b_k R^_k(z) + 2 b_n (1 - l_n) R_{n-1}(z)| divided by the
/// sum of the magnitudes of the terms.
double combination_residual(const CoefficientData& cd, std::size_t n, cplx z);

struct WallPartialSum {
  double weight_sum = 0.0;  ///< sum_r lambda_r
  double series = 0.0;      ///< 1 + sum_{k=2..n} prod_{j=2..k} l_j / (1 - l_j)
  double rel_error = 0.0;
};

WallPartialSum wall_partial_sum(const CoefficientData& cd, std::size_t n);

}  // namespace r2opuc
