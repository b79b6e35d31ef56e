#include "r2opuc/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "r2opuc/errors.hpp"

namespace r2opuc {

namespace {

constexpr cplx kI{0.0, 1.0};

using wide = boost::multiprecision::cpp_bin_float_50;

template <class R>
struct ComplexOf {
  using type = std::complex<R>;
};
template <>
struct ComplexOf<wide> {
  using type = boost::multiprecision::cpp_complex_50;
};

template <class R>
using Vec = std::vector<typename ComplexOf<R>::type>;

// Off-diagonal magnitude sqrt(d_{k+2}) at the working precision when d is known.
template <class R>
R off_ext(const Pencil& p, std::size_t k) {
  using std::sqrt;
  return p.d.size() == p.n - 1 ? R(sqrt(R(p.d[k]))) : R(p.a_off[k]);
}

template <class R>
Vec<R> apply_a_ext(const Pencil& p, const Vec<R>& v) {
  using C = typename ComplexOf<R>::type;
  Vec<R> out(p.n);
  for (std::size_t k = 0; k < p.n; ++k) {
    C acc = v[k] * R(p.a_diag[k]);
    if (k + 1 < p.n) acc += C(R(0), off_ext<R>(p, k)) * v[k + 1];
    if (k > 0) acc -= C(R(0), off_ext<R>(p, k - 1)) * v[k - 1];
    out[k] = acc;
  }
  return out;
}

template <class R>
Vec<R> apply_b_ext(const Pencil& p, const Vec<R>& v) {
  using C = typename ComplexOf<R>::type;
  Vec<R> out(p.n);
  for (std::size_t k = 0; k < p.n; ++k) {
    C acc = v[k] * R(p.b_diag[k]);
    if (k + 1 < p.n) acc += v[k + 1] * off_ext<R>(p, k);
    if (k > 0) acc += v[k - 1] * off_ext<R>(p, k - 1);
    out[k] = acc;
  }
  return out;
}

template <class R>
R dot_real(const Vec<R>& a, const Vec<R>& b) {
  using std::conj;
  typename ComplexOf<R>::type acc(R(0), R(0));
  for (std::size_t k = 0; k < a.size(); ++k) acc += conj(a[k]) * b[k];
  return R(acc.real());
}

// Solves (A - sigma B) y = rhs by tridiagonal elimination with partial pivoting.
template <class R>
Vec<R> shifted_solve(const Pencil& p, const R& sigma, Vec<R> rhs) {
  using std::abs;
  using C = typename ComplexOf<R>::type;
  const std::size_t n = p.n;
  const C zero(R(0), R(0));
  Vec<R> diag(n, zero), upper(n, zero), upper2(n, zero), lower(n, zero);
  for (std::size_t k = 0; k < n; ++k) {
    diag[k] = C(R(p.a_diag[k]) - sigma * R(p.b_diag[k]), R(0));
    if (k + 1 < n) {
      const R off = off_ext<R>(p, k);
      upper[k] = C(R(-sigma * off), off);
      lower[k] = C(R(-sigma * off), R(-off));
    }
  }
  R scale = 0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max<R>(scale, R(abs(diag[k]) + abs(upper[k])));
  const R tiny = std::max<R>(scale, R(1)) * std::numeric_limits<R>::epsilon();

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (abs(lower[k]) > abs(diag[k])) {
      std::swap(diag[k], lower[k]);
      std::swap(upper[k], diag[k + 1]);
      std::swap(upper2[k], upper[k + 1]);
      std::swap(rhs[k], rhs[k + 1]);
    }
    if (abs(diag[k]) < tiny) diag[k] = C(tiny, R(0));
    const C f = lower[k] / diag[k];
    diag[k + 1] -= f * upper[k];
    if (k + 2 < n) upper[k + 1] -= f * upper2[k];
    rhs[k + 1] -= f * rhs[k];
  }
  if (abs(diag[n - 1]) < tiny) diag[n - 1] = C(tiny, R(0));
  Vec<R> y(n, zero);
  for (std::size_t k = n; k-- > 0;) {
    C acc = rhs[k];
    if (k + 1 < n) acc -= upper[k] * y[k + 1];
    if (k + 2 < n) acc -= upper2[k] * y[k + 2];
    y[k] = acc / diag[k];
  }
  return y;
}

// Inverse iteration with Rayleigh quotient updates at precision R; y comes
// in as a start vector and leaves B-normalised.
template <class R>
R rayleigh_refine(const Pencil& p, R sigma, Vec<R>& y) {
  using std::abs;
  using std::sqrt;
  for (int iter = 0; iter < 4; ++iter) {
    y = shifted_solve<R>(p, sigma, apply_b_ext<R>(p, y));
    const R norm = sqrt(dot_real<R>(y, apply_b_ext<R>(p, y)));
    for (auto& e : y) e /= norm;
    const R next = dot_real<R>(y, apply_a_ext<R>(p, y));
    const bool settled = abs(next - sigma) <= 16 * std::numeric_limits<R>::epsilon() * (1 + abs(next));
    sigma = next;
    if (settled) break;
  }
  return sigma;
}

// First-order error of an eigenvalue of the pencil under relative
// perturbations of size eps in A and B: eps |y|^2 (|A| + |x| |B|).
double eigenvalue_error_bound(const Pencil& p, double x, double y_norm2, double eps) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t k = 0; k < p.n; ++k) {
    const double off = (k > 0 ? p.a_off[k - 1] : 0.0) + (k + 1 < p.n ? p.a_off[k] : 0.0);
    a = std::max(a, std::abs(p.a_diag[k]) + off);
    b = std::max(b, std::abs(p.b_diag[k]) + off);
  }
  return eps * y_norm2 * (a + std::abs(x) * b);
}

// Refines an eigenpair in long double, and again in 50 digits when the long
// double result cannot be trusted to 1e-13 (1 + |x|).  Returns false when the
// shift wanders outside (floor, ceiling).
bool refine_pair(const Pencil& p, double& x, Eigen::VectorXcd& v, double floor, double ceiling) {
  using xreal = long double;
  Vec<xreal> y(p.n);
  for (std::size_t k = 0; k < p.n; ++k) {
    const cplx e = v[static_cast<Eigen::Index>(k)];
    y[k] = {e.real(), e.imag()};
  }
  xreal sigma = rayleigh_refine<xreal>(p, x, y);
  double norm2 = 0.0;
  for (const auto& e : y) norm2 += static_cast<double>(std::norm(e));
  const double estimate = static_cast<double>(sigma);
  std::vector<cplx> out(p.n);
  for (std::size_t k = 0; k < p.n; ++k) out[k] = {static_cast<double>(y[k].real()), static_cast<double>(y[k].imag())};

  if (eigenvalue_error_bound(p, estimate, norm2, std::numeric_limits<xreal>::epsilon()) > 1e-13 * (1.0 + std::abs(estimate))) {
    Vec<wide> w(p.n);
    for (std::size_t k = 0; k < p.n; ++k) w[k] = {wide(y[k].real()), wide(y[k].imag())};
    const wide s = rayleigh_refine<wide>(p, wide(sigma), w);
    sigma = static_cast<xreal>(s);
    for (std::size_t k = 0; k < p.n; ++k) out[k] = {static_cast<double>(w[k].real()), static_cast<double>(w[k].imag())};
  }
  if (!(sigma > floor && sigma < ceiling)) return false;
  x = static_cast<double>(sigma);
  for (std::size_t k = 0; k < p.n; ++k) v[static_cast<Eigen::Index>(k)] = out[k];
  return true;
}

}  // namespace

Eigen::MatrixXcd Pencil::dense_a() const {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) a(k, k) = a_diag[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a(k, k + 1) = kI * a_off[k];
    a(k + 1, k) = -kI * a_off[k];
  }
  return a;
}

Eigen::MatrixXd Pencil::dense_b() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) b(k, k) = b_diag[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    b(k, k + 1) = b_off[k];
    b(k + 1, k) = b_off[k];
  }
  return b;
}

Eigen::VectorXcd Pencil::apply_a(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = a_diag[k] * v[k];
    if (k + 1 < n) acc += kI * a_off[k] * v[k + 1];
    if (k > 0) acc -= kI * a_off[k - 1] * v[k - 1];
    out[k] = acc;
  }
  return out;
}

Eigen::VectorXcd Pencil::apply_b(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = b_diag[k] * v[k];
    if (k + 1 < n) acc += b_off[k] * v[k + 1];
    if (k > 0) acc += b_off[k - 1] * v[k - 1];
    out[k] = acc;
  }
  return out;
}

Pencil build_pencil(const CoefficientData& cd, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "pencil needs n >= 2");
  if (n > cd.N) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "pencil of size " + std::to_string(n) + " exceeds data degree " + std::to_string(cd.N));
  }
  Pencil p;
  p.n = n;
  p.a_diag.assign(cd.c.begin(), cd.c.begin() + static_cast<std::ptrdiff_t>(n));
  p.b_diag.assign(n, 1.0);
  p.a_off.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) p.a_off[k - 1] = std::sqrt(cd.d_at(k));
  p.b_off = p.a_off;
  p.d.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) p.d[k - 1] = cd.d_at(k);
  return p;
}

RealPencil realify(const Pencil& p) {
  const Eigen::MatrixXcd a = p.dense_a();
  const Eigen::MatrixXd b = p.dense_b();
  const auto n = static_cast<Eigen::Index>(p.n);
  RealPencil out;
  out.a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.b = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.a.topLeftCorner(n, n) = a.real();
  out.a.bottomRightCorner(n, n) = a.real();
  out.a.topRightCorner(n, n) = -a.imag();
  out.a.bottomLeftCorner(n, n) = a.imag();
  out.b.topLeftCorner(n, n) = b;
  out.b.bottomRightCorner(n, n) = b;
  return out;
}

Eigen::MatrixXd CholeskyFactor::dense() const {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) l(k, k) = diag[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k + 1 < n; ++k) l(k + 1, k) = sub[static_cast<std::size_t>(k)];
  return l;
}

CholeskyFactor cholesky(const Pencil& p, const ChainParams& ell) {
  if (ell.size() < p.n) {
    throw Error(ErrorCode::DegreeOutOfRange, "minimal parameters shorter than the pencil");
  }
  CholeskyFactor f;
  f.diag.resize(p.n);
  f.sub.resize(p.n - 1);
  for (std::size_t k = 1; k <= p.n; ++k) {
    const double pivot = 1.0 - ell.l(k);
    if (!(pivot > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "1 - l_" + std::to_string(k) + " <= 0");
    f.diag[k - 1] = std::sqrt(pivot);
    if (k < p.n) f.sub[k - 1] = std::sqrt(ell.l(k + 1));
  }
  return f;
}

CholeskyFactor cholesky(const Pencil& p) {
  CholeskyFactor f;
  f.diag.resize(p.n);
  f.sub.resize(p.n > 0 ? p.n - 1 : 0);
  double prev = 0.0;
  for (std::size_t k = 0; k < p.n; ++k) {
    double pivot = p.b_diag[k];
    if (k > 0) {
      f.sub[k - 1] = p.b_off[k - 1] / prev;
      pivot -= f.sub[k - 1] * f.sub[k - 1];
    }
    if (!(pivot > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "Cholesky pivot " + std::to_string(k + 1) + " <= 0");
    }
    prev = std::sqrt(pivot);
    f.diag[k] = prev;
  }
  return f;
}

SpectralData solve(const Pencil& p, bool with_vectors) {
  if (p.n < 2) throw Error(ErrorCode::DimensionTooSmall, "solve needs n >= 2");
  const auto n = static_cast<Eigen::Index>(p.n);
  const CholeskyFactor f = cholesky(p);

  // X = L^{-1} A, then C = L^{-1} X^H = (L^{-1} A L^{-T})^H.
  const auto forward = [&](Eigen::MatrixXcd m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k > 0) m.row(k) -= f.sub[static_cast<std::size_t>(k - 1)] * m.row(k - 1);
      m.row(k) /= f.diag[static_cast<std::size_t>(k)];
    }
    return m;
  };
  const Eigen::MatrixXcd x = forward(p.dense_a());
  Eigen::MatrixXcd c = forward(x.adjoint());
  c = (0.5 * (c + c.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }

  SpectralData out;
  out.x.resize(p.n);
  Eigen::MatrixXcd vectors(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    out.x[static_cast<std::size_t>(r)] = es.eigenvalues()[n - 1 - r];
    // v = L^{-T} w by back substitution; v^H B v = w^H w = 1.
    const Eigen::VectorXcd w = es.eigenvectors().col(n - 1 - r);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      cplx acc = w[k];
      if (k + 1 < n) acc -= f.sub[static_cast<std::size_t>(k)] * vectors(k + 1, r);
      vectors(k, r) = acc / f.diag[static_cast<std::size_t>(k)];
    }
  }

  // The congruence costs accuracy when L is badly conditioned; each pair is
  // refined against the tridiagonal pencil, kept inside its neighbours' gaps.
  const std::vector<double> dense = out.x;
  for (std::size_t r = 0; r < p.n; ++r) {
    const double ceiling = r == 0 ? std::numeric_limits<double>::infinity() : 0.5 * (dense[r - 1] + dense[r]);
    const double floor = r + 1 == p.n ? -std::numeric_limits<double>::infinity() : 0.5 * (dense[r] + dense[r + 1]);
    Eigen::VectorXcd v = vectors.col(static_cast<Eigen::Index>(r));
    if (refine_pair(p, out.x[r], v, floor, ceiling)) {
      vectors.col(static_cast<Eigen::Index>(r)) = v;
    } else {
      out.diagnostics.push_back("refinement of eigenvalue " + std::to_string(r + 1) + " left its bracket");
    }
  }

  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::VectorXcd v = vectors.col(r);
    const double xr = out.x[static_cast<std::size_t>(r)];
    out.residual = std::max(out.residual, (p.apply_a(v) - xr * p.apply_b(v)).norm() / v.norm());
  }
  if (with_vectors) out.vectors = std::move(vectors);

  const double spread = out.x.front() - out.x.back();
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r + 1 < p.n; ++r) out.min_gap = std::min(out.min_gap, out.x[r] - out.x[r + 1]);
  if (out.min_gap <= 1e-12 * spread) {
    out.diagnostics.push_back("eigenvalues closer than 1e-12 * spread; zeros of P_n are simple, check the input");
  }
  return out;
}

namespace {

// Sign changes along P_0(x), ..., P_n(x): the number of zeros of P_n above x.
// A vanishing P_k takes the sign opposite to P_{k-1}.  Sets uncertain when a
// value is within its running rounding bound of zero.
template <class R>
std::size_t sturm_count_at(const CoefficientData& cd, std::size_t n, double xd, bool& uncertain) {
  using std::abs;
  const R x = xd;
  const R q = x * x + 1;
  const R eps = std::numeric_limits<R>::epsilon();
  R prev = 1;
  R cur = x - cd.c_at(1);
  // Magnitude bounds of the same recurrence with absolute values.
  R mprev = 1;
  R mcur = abs(x) + abs(R(cd.c_at(1)));
  int last = 1;
  std::size_t changes = 0;
  uncertain = false;
  const auto step = [&](const R& v, const R& m, std::size_t k) {
    if (abs(v) <= 8 * (k + 1) * eps * m) uncertain = true;
    const int s = v > 0 ? 1 : (v < 0 ? -1 : -last);
    if (s != last) ++changes;
    last = s;
  };
  step(cur, mcur, 1);
  for (std::size_t k = 1; k < n; ++k) {
    const R a = x - cd.c_at(k + 1);
    const R dq = cd.d_at(k) * q;
    const R next = a * cur - dq * prev;
    const R mnext = abs(a) * mcur + dq * mprev;
    prev = cur;
    cur = next;
    mprev = mcur;
    mcur = mnext;
    int e = 0;
    frexp(mcur, &e);
    cur = ldexp(cur, -e);
    prev = ldexp(prev, -e);
    mcur = ldexp(mcur, -e);
    mprev = ldexp(mprev, -e);
    step(cur, mcur, k + 1);
  }
  return changes;
}

// Long double count, repeated in 50 digits when a sign is in doubt.
std::size_t sturm_count(const CoefficientData& cd, std::size_t n, double x) {
  bool uncertain = false;
  const std::size_t count = sturm_count_at<long double>(cd, n, x, uncertain);
  if (!uncertain) return count;
  return sturm_count_at<wide>(cd, n, x, uncertain);
}

}  // namespace

std::vector<double> zeros_by_bisection(const CoefficientData& cd, std::size_t n) {
  if (n < 1 || n > cd.N) {
    throw Error(ErrorCode::DegreeOutOfRange, "zeros_by_bisection degree " + std::to_string(n));
  }
  double radius = 1.0;
  for (std::size_t j = 1; j <= n; ++j) radius = std::max(radius, std::abs(cd.c_at(j)));
  int growth = 0;
  while (sturm_count(cd, n, radius) != 0 || sturm_count(cd, n, -radius) != n) {
    if (++growth > 200) throw Error(ErrorCode::BracketFailure, "outer bracket never encloses all zeros");
    radius *= 2.0;
  }

  // Zero r (descending) sits where the count steps from r - 1 to r; the
  // search for zero r + 1 starts below the bracket left by zero r.
  std::vector<double> zeros(n);
  double upper = radius;
  for (std::size_t r = 1; r <= n; ++r) {
    double lo = -radius;
    double hi = upper;
    for (int iter = 0; iter < 2000; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
      if (sturm_count(cd, n, mid) >= r) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    zeros[r - 1] = 0.5 * (lo + hi);
    if (r > 1 && zeros[r - 1] > zeros[r - 2]) {
      throw Error(ErrorCode::BracketFailure, "Sturm counts are not monotone; zeros are not simple");
    }
    upper = hi;
  }
  return zeros;
}

const char* to_string(SignCondition s) noexcept {
  switch (s) {
    case SignCondition::AllPositive: return "AllPositive";
    case SignCondition::AllNegative: return "AllNegative";
    case SignCondition::NoConclusion: return "NoConclusion";
  }
  return "NoConclusion";
}

SignCondition sign_condition_check(const CoefficientData& cd, std::size_t n) {
  if (n < 2 || n > cd.N) throw Error(ErrorCode::DegreeOutOfRange, "sign_condition_check needs 2 <= n <= N");
  bool positive = true;
  bool negative = true;
  for (std::size_t j = 1; j <= n; ++j) {
    double radius = 0.0;
    if (j > 1) radius += std::sqrt(cd.d_at(j - 1));
    if (j < n) radius += std::sqrt(cd.d_at(j));
    positive = positive && cd.c_at(j) > radius;
    negative = negative && cd.c_at(j) < -radius;
  }
  if (positive) return SignCondition::AllPositive;
  if (negative) return SignCondition::AllNegative;
  return SignCondition::NoConclusion;
}

}  // namespace r2opuc
