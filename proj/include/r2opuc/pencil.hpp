#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "r2opuc/recurrence.hpp"

namespace r2opuc {

/// Tridiagonal pencil (A_n, B_n) whose eigenvalues are the zeros of P_n:
///   A_n = tridiag(-i sqrt(d_{k+1}), c_k, +i sqrt(d_{k+1}))   (Hermitian)
///   B_n = tridiag(sqrt(d_{k+1}), 1, sqrt(d_{k+1}))           (real SPD)
/// A's off-diagonal is stored by magnitude; +i above, -i below.
struct Pencil {
  std::size_t n = 0;
  std::vector<double> a_diag;
  std::vector<double> a_off;
  std::vector<double> b_diag;
  std::vector<double> b_off;
  std::vector<double> d;  ///< d_2..d_n; the off-diagonals are their square roots

  Eigen::MatrixXcd dense_a() const;
  Eigen::MatrixXd dense_b() const;
  /// A v and B v without forming dense matrices.
  Eigen::VectorXcd apply_a(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd apply_b(const Eigen::VectorXcd& v) const;
};

Pencil build_pencil(const CoefficientData& cd, std::size_t n);

/// Real symmetric 2n x 2n pencil [[Re A, -Im A], [Im A, Re A]],
/// [[B, 0], [0, B]].  Each eigenvalue of (A_n, B_n) appears twice; an
/// eigenvector v maps to [Re v; Im v].
struct RealPencil {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

RealPencil realify(const Pencil& p);

/// Lower bidiagonal L with L L^T = B_n.
struct CholeskyFactor {
  std::vector<double> diag;
  std::vector<double> sub;

  Eigen::MatrixXd dense() const;
};

/// Closed form diag sqrt(1 - l_k), subdiagonal sqrt(l_{k+1}).
CholeskyFactor cholesky(const Pencil& p, const ChainParams& ell);

/// Plain bidiagonal Cholesky of B_n; NotPositiveDefinite on a failed pivot.
CholeskyFactor cholesky(const Pencil& p);

struct SpectralData {
  std::vector<double> x;      ///< strictly decreasing
  Eigen::MatrixXcd vectors;   ///< column r solves A v = x_r B v with v^H B v = 1; empty unless requested
  double residual = 0.0;      ///< max_r ||A v_r - x_r B v_r|| / ||v_r||
  double min_gap = 0.0;
  std::vector<std::string> diagnostics;
};

/// All eigenvalues of A_n u = x B_n u, descending.  Congruence by the Cholesky
/// factor of B_n turns the pencil into the Hermitian matrix L^{-1} A L^{-T},
/// which is diagonalised densely.  Each eigenpair is then refined by inverse
/// iteration with Rayleigh quotient shifts on the tridiagonal pencil itself,
/// in extended precision.
SpectralData solve(const Pencil& p, bool with_vectors = false);

/// Zeros of P_n by bisection on the Sturm count of P_0(x), ..., P_n(x), which
/// interlacing makes equal to the number of zeros above x.  The count runs in
/// extended precision.  The outer bracket
/// grows geometrically; bisection runs to 1e-13 absolute-or-relative width.
std::vector<double> zeros_by_bisection(const CoefficientData& cd, std::size_t n);

enum class SignCondition { AllPositive, AllNegative, NoConclusion };

const char* to_string(SignCondition s) noexcept;

/// Gershgorin test on A_n: AllPositive if c_1 > sqrt(d_2),
/// c_j > sqrt(d_j) + sqrt(d_{j+1}) and c_n > sqrt(d_n); mirrored for AllNegative.
SignCondition sign_condition_check(const CoefficientData& cd, std::size_t n);

}  // namespace r2opuc
