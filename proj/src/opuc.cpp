#include "r2opuc/opuc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "r2opuc/errors.hpp"

namespace r2opuc {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx unimodular(cplx z) { return z / std::abs(z); }

// (1 - i c)/(1 + i c)
cplx rotation(double c) { return unimodular(cplx{1.0, -c} / cplx{1.0, c}); }

void require_alpha(const std::vector<cplx>& alpha, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::DimensionTooSmall, "need N >= 1");
  if (alpha.size() < N) throw Error(ErrorCode::DegreeOutOfRange, "not enough Verblunsky coefficients");
  for (std::size_t k = 0; k < N; ++k) {
    if (!(std::abs(alpha[k]) < 1.0)) {
      throw Error(ErrorCode::InvalidInput, "|alpha_" + std::to_string(k) + "| >= 1");
    }
  }
}

}  // namespace

VerblunskyData verblunsky_from_cd(const CoefficientData& cd, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::DimensionTooSmall, "verblunsky_from_cd needs N >= 1");
  if (cd.c.size() < N + 1 || cd.ell.size() < N + 1) {
    throw Error(ErrorCode::DegreeOutOfRange, "verblunsky_from_cd needs c_1..c_{N+1} and l_1..l_{N+1}");
  }
  using R = long double;
  VerblunskyData out;
  out.convention = TauConvention::Product;
  cplx_ext tau{1.0L, 0.0L};
  for (std::size_t n = 1; n <= N; ++n) {
    const R cn = cd.c_at(n);
    tau *= cplx_ext{1.0L, -cn} / cplx_ext{1.0L, cn};
    tau /= std::abs(tau);
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
      throw Error(ErrorCode::DegenerateTau, "tau_" + std::to_string(n) + " is not finite");
    }
    const R c = cd.c_at(n + 1);
    const R l = cd.l(n + 1);
    const cplx_ext a = -std::conj(tau) * cplx_ext{1.0L - 2.0L * l, -c} / cplx_ext{1.0L, -c};
    out.tau_ext.push_back(tau);
    out.alpha_ext.push_back(a);
    out.tau.push_back(cplx(tau));
    out.alpha.push_back(cplx(a));
  }
  return out;
}

namespace {

template <class R>
ReciprocalData reciprocal(const std::vector<std::complex<R>>& alpha, std::complex<R> tau1, std::size_t N) {
  using C = std::complex<R>;
  const R one = 1;
  if (N == 0) throw Error(ErrorCode::DimensionTooSmall, "need N >= 1");
  if (alpha.size() < N) throw Error(ErrorCode::DegreeOutOfRange, "not enough Verblunsky coefficients");
  for (std::size_t k = 0; k < N; ++k) {
    if (!(std::abs(alpha[k]) < one)) throw Error(ErrorCode::InvalidInput, "|alpha_" + std::to_string(k) + "| >= 1");
  }
  if (std::abs(std::abs(tau1) - one) > R(1e-12)) throw Error(ErrorCode::DegenerateTau, "|tau_1| != 1");
  if (std::abs(tau1 + one) < R(1e-14)) throw Error(ErrorCode::DegenerateTau, "tau_1 = -1");

  ReciprocalData out;
  out.verblunsky.convention = TauConvention::Moebius;
  out.c.push_back(static_cast<double>((C{0, 1} * (tau1 - one) / (tau1 + one)).real()));
  out.ell.push_back(0.0);

  C tau = tau1 / std::abs(tau1);
  out.verblunsky.tau.push_back(cplx(tau));
  out.verblunsky.tau_ext.push_back(cplx_ext(tau));
  for (std::size_t n = 1; n <= N; ++n) {
    const C a = alpha[n - 1];
    out.verblunsky.alpha.push_back(cplx(a));
    out.verblunsky.alpha_ext.push_back(cplx_ext(a));
    const C w = tau * a;
    if (std::abs(one + w) < R(1e-14)) {
      throw Error(ErrorCode::TauCollision, "1 + tau_" + std::to_string(n) + " alpha_" + std::to_string(n - 1) + " = 0");
    }
    const R c = w.imag() / (one + w.real());
    const R l = std::norm(one + w) / (2 * (one + w.real()));
    if (!(l > 0 && l < one)) {
      throw Error(ErrorCode::NotAChainSequence, "l_" + std::to_string(n + 1) + " outside (0, 1)");
    }
    C next = (tau + std::conj(a)) / (one + w);
    next /= std::abs(next);
    const C w_next = next * a;
    const R c_alt = w_next.imag() / (one - w_next.real());
    const R l_alt = (one - std::norm(w_next)) / (2 * (one - w_next.real()));
    out.alternative_gap = std::max({out.alternative_gap, static_cast<double>(std::abs(c - c_alt) / (one + std::abs(c))),
                                    static_cast<double>(std::abs(l - l_alt))});
    out.consistency_gap = std::max(
        out.consistency_gap, static_cast<double>(std::abs((one - w_next) * (one + w) - (one - std::norm(a)))));
    out.c.push_back(static_cast<double>(c));
    out.ell.push_back(static_cast<double>(l));
    out.verblunsky.tau.push_back(cplx(next));
    out.verblunsky.tau_ext.push_back(cplx_ext(next));
    tau = next;
  }

  std::vector<double> d(N);
  for (std::size_t n = 1; n <= N; ++n) d[n - 1] = (1.0 - out.ell[n - 1]) * out.ell[n];
  out.cd = make_coefficient_data(std::vector<double>(out.c.begin(), out.c.begin() + static_cast<std::ptrdiff_t>(N)),
                                 ChainSequence{std::move(d)});
  return out;
}

}  // namespace

ReciprocalData cd_from_verblunsky(const std::vector<cplx>& alpha, cplx tau1, std::size_t N) {
  return reciprocal<double>(alpha, tau1, N);
}

ReciprocalData cd_from_verblunsky(const VerblunskyData& v, std::size_t N) {
  if (v.alpha_ext.size() >= N && !v.tau_ext.empty()) return reciprocal<long double>(v.alpha_ext, v.tau_ext.front(), N);
  if (v.tau.empty()) throw Error(ErrorCode::DegreeOutOfRange, "no tau_1");
  return reciprocal<double>(v.alpha, v.tau.front(), N);
}

double tau_convention_gap(const CoefficientData& cd, const VerblunskyData& v) {
  double gap = std::abs(v.tau_at(1) - rotation(cd.c_at(1)));
  const bool ext = v.alpha_ext.size() + 1 >= v.tau_ext.size() && v.tau_ext.size() == v.tau.size() && !v.tau.empty();
  cplx_ext tau = ext ? v.tau_ext.front() : cplx_ext(v.tau_at(1));
  for (std::size_t n = 1; n < v.tau.size(); ++n) {
    const cplx_ext a = ext ? v.alpha_ext.at(n - 1) : cplx_ext(v.alpha_at(n - 1));
    tau = (tau + std::conj(a)) / (1.0L + tau * a);
    tau /= std::abs(tau);
    gap = std::max(gap, static_cast<double>(std::abs(tau - cplx_ext(v.tau_at(n + 1)))));
  }
  return gap;
}

NuData nu_data(const CoefficientData& cd, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::DimensionTooSmall, "nu_data needs N >= 1");
  if (cd.c.size() < N) throw Error(ErrorCode::DegreeOutOfRange, "nu_data needs c_1..c_N");
  const std::size_t len = cd.d.size();
  const WallSeries wall = classify(cd.d, len);
  if (wall.classification != Classification::MultipleParameter) {
    throw Error(ErrorCode::RequiresMultipleParameter,
                std::string("chain classifies as ") + to_string(wall.classification));
  }
  const std::size_t depth = len / 4;
  if (depth < N + 1) throw Error(ErrorCode::DepthInsufficient, "chain too short for the maximal parameters");
  const MaximalParams mp = maximal_params_extrapolated(cd.d, N + 1, depth);

  NuData out;
  out.M = mp.values;
  out.extrapolated = mp.extrapolated;
  out.gamma.push_back(1.0);
  out.tau.push_back(cplx{1.0, 0.0});
  for (std::size_t n = 1; n <= N; ++n) {
    const double c = cd.c_at(n);
    const double m = out.M[n - 1];
    const cplx prev = out.tau.back();
    const cplx beta = std::conj(prev) * cplx{1.0 - 2.0 * m, -c} / cplx{1.0, -c};
    const cplx tau = unimodular(prev * rotation(c));
    out.beta.push_back(beta);
    out.tau.push_back(tau);
    out.gamma.push_back((1.0 - m) * out.gamma.back());

    const cplx v = prev * beta;
    const double c_regen = -v.imag() / (1.0 - v.real());
    const double g_regen = 0.5 * std::norm(1.0 - v) / (1.0 - v.real());
    out.reciprocal_gap = std::max({out.reciprocal_gap, std::abs(c_regen - c) / (1.0 + std::abs(c)), std::abs(g_regen - m)});
    const cplx moebius = unimodular((prev - std::conj(beta)) / (1.0 - v));
    out.tau_moebius_gap = std::max(out.tau_moebius_gap, std::abs(moebius - tau));
  }
  for (std::size_t n = 1; n < N; ++n) {
    const double lhs = out.gamma[n + 1];
    const double rhs = out.gamma[n] - cd.d_at(n) * out.gamma[n - 1];
    out.gamma_recurrence_gap = std::max(out.gamma_recurrence_gap, std::abs(lhs - rhs) / out.gamma[n - 1]);
  }
  return out;
}

SFamily s_family(const std::vector<cplx>& alpha, cplx I_value, double s, std::size_t N) {
  if (std::abs(I_value.real() - 0.5) > 1e-12) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Re(I) must equal 1/2");
  }
  const cplx tau1 = (I_value + kI * s) / (std::conj(I_value) - kI * s);
  ReciprocalData r = cd_from_verblunsky(alpha, tau1, N);
  SFamily out;
  out.s = s;
  out.I_value = I_value;
  out.c = std::move(r.c);
  out.ell = std::move(r.ell);
  for (std::size_t n = 1; n <= N; ++n) out.d.push_back((1.0 - out.ell[n - 1]) * out.ell[n]);
  out.tau = std::move(r.verblunsky.tau);
  out.cd = std::move(r.cd);
  return out;
}

ComplexPoly phi_coeffs_from_verblunsky(const std::vector<cplx>& alpha, std::size_t N) {
  if (alpha.size() < N) throw Error(ErrorCode::DegreeOutOfRange, "not enough Verblunsky coefficients");
  ComplexPoly phi{{cplx{1.0, 0.0}}};
  for (std::size_t n = 0; n < N; ++n) {
    const ComplexPoly star = phi.reversed();
    ComplexPoly next;
    next.coeffs.assign(n + 2, cplx{});
    const cplx a = std::conj(alpha[n]);
    for (std::size_t j = 0; j <= n; ++j) {
      next.coeffs[j + 1] += phi.coeffs[j];
      next.coeffs[j] -= a * star.coeffs[j];
    }
    phi = std::move(next);
  }
  return phi;
}

cplx phi_from_verblunsky(const std::vector<cplx>& alpha, std::size_t N, cplx z) {
  return phi_coeffs_from_verblunsky(alpha, N)(z);
}

cplx para_orthogonal(const std::vector<cplx>& alpha, const std::vector<cplx>& tau, std::size_t n, cplx z) {
  if (n == 0 || tau.size() < n) throw Error(ErrorCode::DegreeOutOfRange, "para_orthogonal needs tau_n");
  const ComplexPoly phi = phi_coeffs_from_verblunsky(alpha, n - 1);
  return z * phi(z) + tau[n - 1] * phi.reversed()(z);
}

cplx para_orthogonal_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& tau, std::size_t n) {
  if (n == 0 || tau.size() < n || alpha.size() + 1 < n) {
    throw Error(ErrorCode::DegreeOutOfRange, "para_orthogonal_factor needs tau_1..tau_n");
  }
  cplx f = 0.5 * (1.0 + tau[0]);
  for (std::size_t k = 1; k < n; ++k) {
    const cplx w = tau[k - 1] * alpha[k - 1];
    f *= (1.0 + w.real()) / (1.0 + w);
  }
  return f;
}

double para_orthogonal_gap(const CoefficientData& cd, const VerblunskyData& v, std::size_t n,
                           const std::vector<cplx>& points) {
  const cplx factor = para_orthogonal_factor(v.alpha, v.tau, n);
  double gap = 0.0;
  double scale = 0.0;
  for (cplx z : points) {
    const cplx rhs = para_orthogonal(v.alpha, v.tau, n, z);
    gap = std::max(gap, std::abs(eval_R(cd, n, z).value() * factor - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  return scale > 0.0 ? gap / scale : gap;
}

namespace {

double adaptive_kronrod(const std::function<double(double)>& f, double a, double b, double tolerance, int depth) {
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (err <= tolerance * (l1 + (b - a)) || depth == 0) return value;
  const double mid = 0.5 * (a + b);
  return adaptive_kronrod(f, a, mid, tolerance, depth - 1) + adaptive_kronrod(f, mid, b, tolerance, depth - 1);
}

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a, double b, double tolerance) {
  return adaptive_kronrod(f, a, b, tolerance, 30);
}

double principal_value_integral(const std::function<double(double)>& f, double tolerance) {
  const std::function<double(double)> folded = [&f](double t) {
    const double x = std::tan(t);
    const double sec = 1.0 / std::cos(t);
    return (f(x) + f(-x)) * sec * sec;
  };
  return adaptive_kronrod(folded, 0.0, std::numbers::pi / 2.0, tolerance, 30);
}

double p_moment(const CoefficientData& cd, std::size_t n, std::size_t j, std::size_t lift,
                const std::function<double(double)>& w) {
  const int power = static_cast<int>(lift) - static_cast<int>(n);
  const auto f = [&](double x) {
    PolyValue v = eval_P(cd, n, x).value;
    const PolyValue s = PolyValue::from(x * x + 1.0);
    for (int k = 0; k < std::abs(power); ++k) v = power > 0 ? v * s : v / s;
    return v.value() * std::pow(x, static_cast<double>(j)) * w(x);
  };
  return principal_value_integral(f);
}

PvReport pv_checks(const ExampleSpec& ex, std::size_t n, double tolerance) {
  ex.validate();
  if (ex.id == ExampleId::Ex4) throw Error(ErrorCode::UnsupportedExample, "PV checks cover Ex1..Ex3");
  if (n == 0 || n > 12) throw Error(ErrorCode::DegreeOutOfRange, "PV checks need 1 <= n <= 12");
  const CoefficientData cd = example_sequences(ex, n);
  const std::vector<PointMass> masses = point_masses(ex);
  const auto psi = [&ex](double x) { return psi_density(ex, x); };

  PvReport out;
  out.n = n;
  out.s = ex.s_or_zero();
  out.tolerance = tolerance;
  out.first_moment = principal_value_integral([&psi](double x) { return x * psi(x); });
  for (const PointMass& m : masses) out.first_moment += m.mass * m.x;

  const double pn = leading_coeff(cd, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lhs = p_moment(cd, n, k, 1, psi);
    for (const PointMass& m : masses) {
      PolyValue v = eval_P(cd, n, m.x).value;
      for (std::size_t e = 1; e < n; ++e) v = v / PolyValue::from(m.x * m.x + 1.0);
      lhs += m.mass * std::pow(m.x, static_cast<double>(k)) * v.value();
    }
    const double rhs = (k + 1 == n) ? -(cd.c_at(1) - out.first_moment) * pn : 0.0;
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.max_error = std::max(out.max_error, std::abs(lhs - rhs));
  }
  out.passed = out.max_error <= tolerance;
  return out;
}

}  // namespace r2opuc
