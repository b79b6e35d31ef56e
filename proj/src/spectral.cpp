#include "r2opuc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "r2opuc/errors.hpp"

namespace r2opuc {

namespace {

// prod_{j=1..k} d_{j+1} as a scaled value.
struct GramAccumulator {
  std::size_t size;
  std::vector<cplx> entries;

  explicit GramAccumulator(std::size_t s) : size(s), entries(s * s) {}

  // Adds w conj(f_m) f_k for all pairs; f holds already-normalised values.
  void add(double w, const std::vector<cplx>& f) {
    for (std::size_t m = 0; m < size; ++m) {
      for (std::size_t k = 0; k < size; ++k) entries[m * size + k] += w * std::conj(f[m]) * f[k];
    }
  }

  OrthogonalityReport report(double tolerance) const {
    OrthogonalityReport out;
    out.size = size;
    out.tolerance = tolerance;
    for (std::size_t m = 0; m < size; ++m) {
      for (std::size_t k = 0; k < size; ++k) {
        const cplx g = entries[m * size + k];
        if (m == k) {
          out.max_diag = std::max(out.max_diag, std::abs(g - 1.0));
        } else {
          out.max_offdiag = std::max(out.max_offdiag, std::abs(g));
        }
      }
    }
    out.passed = out.max_diag <= tolerance && out.max_offdiag <= tolerance;
    return out;
  }
};

// Wronskian weight with the node polished by Newton on P_n at working
// precision Real.  Returns false when the two Wronskian terms still cancel
// beyond what Real can resolve.
template <typename Real>
bool wronskian_weight_at_precision(const CoefficientData& cd, std::size_t n, double x0, double& weight) {
  using std::abs;
  Real x = x0;
  const auto run = [&](const Real& t, Real& p, Real& dp, Real& pm, Real& dpm) {
    const Real q = t * t + 1;
    Real p_prev = 1, dp_prev = 0;
    p = t - cd.c_at(1);
    dp = 1;
    for (std::size_t k = 1; k < n; ++k) {
      const Real a = t - cd.c_at(k + 1);
      const Real d = cd.d_at(k);
      const Real next = a * p - d * q * p_prev;
      const Real dnext = p + a * dp - d * (2 * t * p_prev + q * dp_prev);
      p_prev = p;
      dp_prev = dp;
      p = next;
      dp = dnext;
    }
    pm = p_prev;
    dpm = dp_prev;
  };
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real p, dp, pm, dpm;
  for (int iter = 0; iter < 50; ++iter) {
    run(x, p, dp, pm, dpm);
    const Real step = p / dp;
    x -= step;
    if (abs(step) <= 16 * eps * (1 + abs(x))) break;
  }
  run(x, p, dp, pm, dpm);
  const Real t1 = dp * pm;
  const Real t2 = dpm * p;
  const Real g = t1 - t2;
  if (!(g > 0) || (abs(t1) + abs(t2)) * eps > 1e-14 * g) return false;
  Real num = 1;
  const Real s = x * x + 1;
  for (std::size_t j = 1; j < n; ++j) num *= s * cd.d_at(j);
  weight = static_cast<double>(num / g);
  return true;
}

constexpr std::size_t kPolishedWeightMaxDegree = 400;

// lambda_r = (x^2 + 1)^{n-1} d_2...d_n / G_n(x).  The value is very
// sensitive to the node: large zeros are ill-conditioned, and near-coincident
// zeros of P_n and P_{n-1} make the two Wronskian terms cancel.  Up to
// kPolishedWeightMaxDegree the node is polished and the formula evaluated in
// 100-digit arithmetic (300 on cancellation); beyond it the double evaluation
// is used unless the terms cancel.
double wronskian_weight(const CoefficientData& cd, std::size_t n, double x) {
  if (n > kPolishedWeightMaxDegree) {
    const PolyEval pn = eval_P(cd, n, x);
    const PolyEval pm = eval_P(cd, n - 1, x);
    const PolyValue t1 = pn.derivative * pm.value;
    const PolyValue t2 = pm.derivative * pn.value;
    const PolyValue g = t1 - t2;
    const double terms = (PolyValue{std::abs(t1.mantissa), t1.exp2} + PolyValue{std::abs(t2.mantissa), t2.exp2}).value();
    const double magnitude = PolyValue{std::abs(g.mantissa), g.exp2}.value();
    if (g.mantissa > 0.0 && terms < 1e3 * magnitude) {
      PolyValue num = PolyValue::from(1.0);
      const PolyValue s = PolyValue::from(x * x + 1.0);
      for (std::size_t j = 1; j < n; ++j) num = num * s * PolyValue::from(cd.d_at(j));
      return (num / g).value();
    }
  }
  namespace mp = boost::multiprecision;
  double weight = 0.0;
  if (wronskian_weight_at_precision<mp::cpp_bin_float_100>(cd, n, x, weight)) return weight;
  if (wronskian_weight_at_precision<mp::number<mp::cpp_bin_float<300>>>(cd, n, x, weight)) return weight;
  throw Error(ErrorCode::ConvergenceFailure, "Wronskian cancellation unresolved at x = " + std::to_string(x));
}

// R^_1..R^_n (index k holds R^_k) at z = (x + i)/(x - i) from the R
// recurrence in extended precision with running rescaling; the difference
// forming R^_k cancels where the value is small.
std::vector<ComplexPolyValue> r_hat_extended(const CoefficientData& cd, std::size_t n, double x) {
  using lcplx = std::complex<long double>;
  const long double xl = x;
  const lcplx zl = lcplx(xl * xl - 1.0L, 2.0L * xl) / (xl * xl + 1.0L);
  lcplx prev = 0.0L;
  lcplx cur = 1.0L;
  int e = 0;
  std::vector<ComplexPolyValue> out(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const long double c = cd.c_at(k + 1);
    lcplx next = (lcplx(1.0L, -c) + lcplx(1.0L, c) * zl) * cur;
    if (k > 0) next -= 4.0L * static_cast<long double>(cd.d_at(k)) * zl * prev;
    prev = cur;
    cur = next;
    const lcplx rh = cur - 2.0L * (1.0L - static_cast<long double>(cd.l(k + 1))) * prev;
    out[k + 1] = ComplexPolyValue{cplx(static_cast<double>(rh.real()), static_cast<double>(rh.imag())), e}.normalized();
    int s = 0;
    std::frexp(std::max({std::abs(cur.real()), std::abs(cur.imag()), std::abs(prev.real()), std::abs(prev.imag())}), &s);
    if (s > 64 || s < -64) {
      cur = lcplx(std::ldexp(cur.real(), -s), std::ldexp(cur.imag(), -s));
      prev = lcplx(std::ldexp(prev.real(), -s), std::ldexp(prev.imag(), -s));
      e += s;
    }
  }
  return out;
}

void require_size(const CoefficientData& cd, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "quadrature needs n >= 2");
  if (n > cd.N) throw Error(ErrorCode::DegreeOutOfRange, "quadrature size exceeds data degree");
}

}  // namespace

CircleQuadrature quadrature(const CoefficientData& cd, std::size_t n) {
  require_size(cd, n);
  CircleQuadrature q;
  q.n = n;
  q.x = solve(build_pencil(cd, n)).x;
  const double c1 = cd.c_at(1);
  for (double x : q.x) {
    const double s = x * x + 1.0;
    const double lambda = wronskian_weight(cd, n, x);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorCode::ConvergenceFailure, "non-positive quadrature weight at x = " + std::to_string(x));
    }
    q.zeta.push_back(cayley(x));
    q.lambda.push_back(lambda);
    // |zeta - 1|^2 = 4 / (x^2 + 1).
    q.lambda_hat.push_back((1.0 + c1 * c1) * lambda / s);
  }
  return q;
}

std::vector<double> eigenvector_weights(const CoefficientData& cd, std::size_t n) {
  require_size(cd, n);
  const SpectralData s = solve(build_pencil(cd, n), true);
  std::vector<double> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = std::norm(s.vectors(0, static_cast<Eigen::Index>(r)));
  return out;
}

Moment discrete_moment(const CircleQuadrature& q, int k) {
  Moment out;
  out.measure_exact = static_cast<std::size_t>(std::abs(k)) < q.n;
  for (std::size_t r = 0; r < q.n; ++r) out.value += q.lambda_hat[r] * std::pow(q.zeta[r], k);
  return out;
}

OrthogonalityReport verify_discrete_orthogonality(const CoefficientData& cd, std::size_t n, double tolerance) {
  const CircleQuadrature q = quadrature(cd, n);
  // R^_k / sqrt(D_k), D_k = 2^{2k} d_2...d_{k+1} / l_{k+1}.
  std::vector<PolyValue> root_norm(n + 1);
  PolyValue dprod = PolyValue::from(1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    dprod = dprod * PolyValue::from(cd.d_at(k));
    const PolyValue dk = dprod / PolyValue::from(cd.l(k + 1));
    // sqrt of a scaled value: even exponent split.
    const int e = dk.exp2 % 2 == 0 ? dk.exp2 : dk.exp2 - 1;
    root_norm[k] = PolyValue{std::sqrt(std::ldexp(dk.mantissa, dk.exp2 - e)), e / 2 + static_cast<int>(k)}.normalized();
  }
  GramAccumulator gram(n);
  std::vector<cplx> f(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<ComplexPolyValue> r_hat = r_hat_extended(cd, n, q.x[r]);
    for (std::size_t k = 1; k <= n; ++k) {
      const ComplexPolyValue& v = r_hat[k];
      f[k - 1] = ComplexPolyValue{v.mantissa / root_norm[k].mantissa, v.exp2 - root_norm[k].exp2}.value();
    }
    gram.add(q.lambda[r], f);
  }
  return gram.report(tolerance);
}

OrthogonalityReport verify_phi_orthogonality(const CoefficientData& cd, std::size_t n, double tolerance) {
  const CircleQuadrature q = quadrature(cd, n);
  const double c1 = cd.c_at(1);
  std::vector<double> root_norm(n);
  double dprod = 1.0;
  double cprod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    dprod *= 4.0 * cd.d_at(k + 1);
    cprod *= 1.0 + cd.c_at(k + 1) * cd.c_at(k + 1);
    // 2^{2k} d_2...d_{k+2} = (4 d_2)...(4 d_{k+2}) / 4.
    root_norm[k] = std::sqrt((1.0 + c1 * c1) * dprod / 4.0 / (cd.l(k + 2) * cprod));
  }
  GramAccumulator gram(n);
  std::vector<cplx> f(n);
  for (std::size_t r = 0; r < n; ++r) {
    // The monomial expansion cancels badly where |Phi_k| is small, so the
    // quotient R^_{k+1} / ((z - 1)(1 + i c_1)...(1 + i c_{k+1})) is used,
    // with z - 1 = 2i / (x - i).
    const std::vector<ComplexPolyValue> r_hat = r_hat_extended(cd, n, q.x[r]);
    ComplexPolyValue den = ComplexPolyValue::from(cplx{0.0, 2.0} / cplx{q.x[r], -1.0});
    for (std::size_t k = 0; k < n; ++k) {
      den = ComplexPolyValue{den.mantissa * cplx{1.0, cd.c_at(k + 1)}, den.exp2}.normalized();
      f[k] = (r_hat[k + 1] / den).value() / root_norm[k];
    }
    gram.add(q.lambda_hat[r], f);
  }
  return gram.report(tolerance);
}

OrthogonalityReport verify_u_hat_orthonormality(const CoefficientData& cd, std::size_t n, double tolerance) {
  const CircleQuadrature q = quadrature(cd, n);
  GramAccumulator gram(n);
  std::vector<cplx> f(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 1; k <= n; ++k) f[k - 1] = eval_u_hat_direct(cd, k, q.x[r]);
    gram.add(q.lambda[r], f);
  }
  return gram.report(tolerance);
}

std::vector<double> combination_coefficients(const ChainParams& ell, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "combination_coefficients needs n >= 2");
  if (n > ell.size()) throw Error(ErrorCode::DegreeOutOfRange, "not enough minimal parameters");
  std::vector<double> b(n);
  double denom = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    denom *= 2.0 * (1.0 - ell.l(k));
    b[k - 1] = -1.0 / denom;
  }
  return b;
}

double combination_residual(const CoefficientData& cd, std::size_t n, cplx z) {
  const std::vector<double> b = combination_coefficients(cd.ell, n);
  cplx sum{};
  double scale = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const cplx term = b[k - 1] * eval_R_hat(cd, k, z).value();
    sum += term;
    scale += std::abs(term);
  }
  const cplx last = 2.0 * b[n - 1] * (1.0 - cd.l(n)) * eval_R(cd, n - 1, z).value();
  sum -= last;
  scale += std::abs(last);
  return std::abs(1.0 - sum) / scale;
}

WallPartialSum wall_partial_sum(const CoefficientData& cd, std::size_t n) {
  const CircleQuadrature q = quadrature(cd, n);
  WallPartialSum out;
  for (double w : q.lambda) out.weight_sum += w;
  out.series = 1.0;
  double term = 1.0;
  for (std::size_t k = 2; k <= n; ++k) {
    term *= cd.l(k) / (1.0 - cd.l(k));
    out.series += term;
  }
  out.rel_error = std::abs(out.weight_sum - out.series) / out.series;
  return out;
}

}  // namespace r2opuc
