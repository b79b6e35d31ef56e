#include "r2opuc/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "r2opuc/errors.hpp"
#include "r2opuc/opuc.hpp"

namespace r2opuc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx b_param(const ExampleSpec& ex) { return cplx{ex.lambda, ex.eta}; }

bool has_nonzero_s(const ExampleSpec& ex) { return ex.s.has_value() && *ex.s != 0.0; }

void require_plain(const ExampleSpec& ex, const char* what) {
  ex.validate();
  if (has_nonzero_s(ex)) throw Error(ErrorCode::UnsupportedExample, std::string(what) + " is displayed for s = 0 only");
}

[[noreturn]] void unsupported(const ExampleSpec& ex, const char* what) {
  throw Error(ErrorCode::UnsupportedExample, std::string(what) + " has no closed form for " + to_string(ex.id));
}

// 1 + j kappa
double a_k(double kappa, double j) { return 1.0 + j * kappa; }

// c_n(s) of Ex2, n >= 2.
double ex2_c(double k, double s, std::size_t n) {
  const double m4 = 4.0 * static_cast<double>((n - 2) / 4);
  const double q = 1.0 - k;
  switch ((n - 2) % 4) {
    case 0: {  // c_{4m+2}
      const double num = q * q * a_k(k, m4 + 1) + 4.0 * s * k * q - 4.0 * s * s * a_k(k, m4 - 1);
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * s * a_k(k, m4 - 1);
      return -k / a_k(k, m4) * num / den;
    }
    case 1: {  // c_{4m+3}
      const double num = q * a_k(k, m4 + 1) + 2.0 * s * k;
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * k * q + 4.0 * s * s * a_k(k, m4 + 1);
      return -4.0 * s * k / a_k(k, m4 + 1) * num / den;
    }
    case 2: {  // c_{4m+4}
      const double num = q * q * a_k(k, m4 + 1) + 4.0 * s * k * q - 4.0 * s * s * a_k(k, m4 + 3);
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * s * a_k(k, m4 + 3);
      return k / a_k(k, m4 + 2) * num / den;
    }
    default: {  // c_{4m+5}
      const double num = q * k - 2.0 * s * a_k(k, m4 + 3);
      const double den = q * q * a_k(k, m4 + 3) - 4.0 * s * k * q + 4.0 * s * s * a_k(k, m4 + 3);
      return -2.0 * k * q / a_k(k, m4 + 3) * num / den;
    }
  }
}

// l_n(s) of Ex2, n >= 2.
double ex2_l(double k, double s, std::size_t n) {
  const double m4 = 4.0 * static_cast<double>((n - 2) / 4);
  const double q = 1.0 - k;
  const auto sq = [](double v) { return v * v; };
  switch ((n - 2) % 4) {
    case 0: {  // l_{4m+2}
      const double num = q * q * sq(a_k(k, m4 + 1)) + 4.0 * s * k * q * a_k(k, m4 + 1) +
                         4.0 * s * s * (k * k + sq(a_k(k, m4)));
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * s * a_k(k, m4 - 1);
      return a_k(k, m4 - 1) / (2.0 * sq(a_k(k, m4))) * num / den;
    }
    case 1: {  // l_{4m+3}
      const double num = q * q * sq(a_k(k, m4 + 1)) + 4.0 * s * k * q * a_k(k, m4 + 1) +
                         4.0 * s * s * (k * k + sq(a_k(k, m4 + 2)));
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * k * q + 4.0 * s * s * a_k(k, m4 + 1);
      return a_k(k, m4) / (2.0 * sq(a_k(k, m4 + 1))) * num / den;
    }
    case 2: {  // l_{4m+4}
      const double num = q * q * (k * k + sq(a_k(k, m4 + 2))) - 4.0 * s * k * q * a_k(k, m4 + 3) +
                         4.0 * s * s * sq(a_k(k, m4 + 3));
      const double den = q * q * a_k(k, m4 + 1) + 4.0 * s * s * a_k(k, m4 + 3);
      return a_k(k, m4 + 1) / (2.0 * sq(a_k(k, m4 + 2))) * num / den;
    }
    default: {  // l_{4m+5}
      const double num = q * q * (k * k + sq(a_k(k, m4 + 4))) - 4.0 * s * k * q * a_k(k, m4 + 3) +
                         4.0 * s * s * sq(a_k(k, m4 + 3));
      const double den = q * q * a_k(k, m4 + 3) - 4.0 * s * k * q + 4.0 * s * s * a_k(k, m4 + 3);
      return a_k(k, m4 + 2) / (2.0 * sq(a_k(k, m4 + 3))) * num / den;
    }
  }
}

std::vector<double> chain_from_ell(const std::vector<double>& ell, std::size_t len) {
  std::vector<double> d(len);
  for (std::size_t n = 1; n <= len; ++n) d[n - 1] = (1.0 - ell[n - 1]) * ell[n];
  return d;
}

double ex4_log_mu_constant(const ExampleSpec& ex) {
  const double lam = ex.lambda;
  return (2.0 * lam + 2.0) * std::log(2.0) + 2.0 * log_gamma(b_param(ex) + 2.0).real() - std::log(2.0 * kPi) -
         std::lgamma(2.0 * lam + 3.0);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  return integrate_interval(f, a, b, 1e-13);
}

}  // namespace

void ExampleSpec::validate() const {
  if (!std::isfinite(kappa) || !std::isfinite(lambda) || !std::isfinite(eta) || (s && !std::isfinite(*s))) {
    throw Error(ErrorCode::ParameterOutOfDomain, "non-finite example parameter");
  }
  if (id == ExampleId::Ex2 && !(kappa > 0.0 && kappa < 1.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Ex2 needs 0 < kappa < 1");
  }
  if (id == ExampleId::Ex4 && !(lambda > -1.0)) {
    throw Error(ErrorCode::ParameterOutOfDomain, "Ex4 needs lambda > -1");
  }
}

ExampleSpec parse_example_id(const std::string& name) {
  ExampleSpec ex;
  if (name == "ex1") ex.id = ExampleId::Ex1;
  else if (name == "ex2") ex.id = ExampleId::Ex2;
  else if (name == "ex3") ex.id = ExampleId::Ex3;
  else if (name == "ex4") ex.id = ExampleId::Ex4;
  else throw Error(ErrorCode::InvalidInput, "unknown example '" + name + "'");
  return ex;
}

const char* to_string(ExampleId id) noexcept {
  switch (id) {
    case ExampleId::Ex1: return "ex1";
    case ExampleId::Ex2: return "ex2";
    case ExampleId::Ex3: return "ex3";
    case ExampleId::Ex4: return "ex4";
  }
  return "?";
}

cplx pochhammer(cplx a, std::size_t n) {
  cplx out{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) out *= a + static_cast<double>(k);
  return out;
}

cplx eval_2f1_poly(std::size_t n, cplx a2, cplx c, cplx w) {
  const double dn = static_cast<double>(n);
  cplx term{1.0, 0.0};
  cplx sum = term;
  for (std::size_t k = 0; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const cplx ck = c + dk;
    if (std::abs(ck) < 1e-14 * (1.0 + std::abs(c))) {
      throw Error(ErrorCode::PoleInC, "(c)_k vanishes at k = " + std::to_string(k + 1));
    }
    term *= (dk - dn) * (a2 + dk) / (ck * (dk + 1.0)) * w;
    sum += term;
  }
  return sum;
}

cplx log_gamma(cplx z) {
  static constexpr std::array<double, 9> p{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!(z.real() > 0.0)) throw Error(ErrorCode::ParameterOutOfDomain, "log_gamma needs Re(z) > 0");
  z -= 1.0;
  cplx x = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) x += p[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

CoefficientData example_sequences(const ExampleSpec& ex, std::size_t N, std::size_t chain_len) {
  ex.validate();
  if (N == 0) throw Error(ErrorCode::DimensionTooSmall, "example_sequences needs N >= 1");
  const std::size_t len = std::max(N + 1, chain_len);
  const double s = ex.s_or_zero();
  std::vector<double> c(N, 0.0);
  std::vector<double> d(len, 0.25);
  std::vector<double> ell(len + 1, 0.0);

  switch (ex.id) {
    case ExampleId::Ex1:
      c[0] = -2.0 * s;
      d[0] = 0.5;
      break;
    case ExampleId::Ex2: {
      c[0] = ex.kappa - 2.0 * s;
      for (std::size_t n = 2; n <= N; ++n) c[n - 1] = ex2_c(ex.kappa, s, n);
      for (std::size_t n = 2; n <= len + 1; ++n) ell[n - 1] = ex2_l(ex.kappa, s, n);
      d = chain_from_ell(ell, len);
      break;
    }
    case ExampleId::Ex3: {
      if (s == 0.0) break;
      for (std::size_t n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        c[n - 1] = -2.0 * dn * s / (1.0 + (dn * dn - 1.0) * dn * dn * s * s);
      }
      for (std::size_t n = 1; n <= len; ++n) {
        const double dn = static_cast<double>(n);
        const double s2 = s * s;
        ell[n] = dn / (2.0 * (dn + 1.0)) * (1.0 + (dn + 1.0) * (dn + 1.0) * (dn + 2.0) * (dn + 2.0) * s2) /
                 (1.0 + dn * (dn + 1.0) * (dn + 1.0) * (dn + 2.0) * s2);
      }
      d = chain_from_ell(ell, len);
      break;
    }
    case ExampleId::Ex4: {
      if (ex.s.has_value()) {
        std::vector<cplx> alpha(len);
        for (std::size_t k = 0; k < len; ++k) alpha[k] = closed_form_alpha(ExampleSpec{ex.id, ex.kappa, ex.lambda, ex.eta, {}}, k);
        SFamily fam = s_family(alpha, principal_value_I(ex), s, len);
        c.assign(fam.c.begin(), fam.c.begin() + static_cast<std::ptrdiff_t>(N));
        d = std::move(fam.d);
        break;
      }
      const double lam = ex.lambda;
      for (std::size_t n = 1; n <= N; ++n) c[n - 1] = ex.eta / (lam + static_cast<double>(n));
      for (std::size_t n = 1; n <= len; ++n) {
        const double dn = static_cast<double>(n);
        d[n - 1] = dn * (2.0 * lam + dn + 1.0) / (4.0 * (lam + dn) * (lam + dn + 1.0));
      }
      break;
    }
  }
  return make_coefficient_data(std::move(c), ChainSequence{std::move(d)});
}

cplx closed_form_P(const ExampleSpec& ex, std::size_t n, double x) {
  require_plain(ex, "P_n");
  const cplx a = cplx{x, -1.0} / 2.0;
  const cplx b = cplx{x, 1.0} / 2.0;
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return n == 0 ? cplx{1.0, 0.0} : std::pow(a, dn) + std::pow(b, dn);
    case ExampleId::Ex3:
      return kI * std::pow(a, dn + 1.0) - kI * std::pow(b, dn + 1.0);
    case ExampleId::Ex4: {
      const cplx bb = b_param(ex);
      const double lam = ex.lambda;
      const cplx ratio = pochhammer(2.0 * lam + 2.0, n) / pochhammer(lam + 1.0, n);
      return ratio * std::pow(a, dn) * eval_2f1_poly(n, bb + 1.0, 2.0 * lam + 2.0, -2.0 * kI / cplx{x, -1.0});
    }
    default:
      unsupported(ex, "P_n");
  }
}

cplx closed_form_R(const ExampleSpec& ex, std::size_t n, cplx z) {
  require_plain(ex, "R_n");
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return n == 0 ? cplx{1.0, 0.0} : std::pow(z, dn) + 1.0;
    case ExampleId::Ex3: {
      if (std::abs(z - 1.0) > 1e-3) return (std::pow(z, dn + 1.0) - 1.0) / (z - 1.0);
      cplx sum{};
      for (std::size_t k = n + 1; k-- > 0;) sum = sum * z + 1.0;
      return sum;
    }
    case ExampleId::Ex4: {
      const double lam = ex.lambda;
      const cplx ratio = pochhammer(2.0 * lam + 2.0, n) / pochhammer(lam + 1.0, n);
      return ratio * eval_2f1_poly(n, b_param(ex) + 1.0, 2.0 * lam + 2.0, 1.0 - z);
    }
    default:
      unsupported(ex, "R_n");
  }
}

cplx closed_form_R_hat(const ExampleSpec& ex, std::size_t n, cplx z) {
  require_plain(ex, "R^_n");
  if (n == 0) throw Error(ErrorCode::DegreeOutOfRange, "R^_n needs n >= 1");
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return std::pow(z, dn) - std::pow(z, dn - 1.0);
    case ExampleId::Ex3:
      if (std::abs(z - 1.0) > 1e-3) {
        return (dn * (std::pow(z, dn + 1.0) - 1.0) - (dn + 1.0) * (std::pow(z, dn) - 1.0)) / (dn * (z - 1.0));
      }
      return (z - 1.0) * closed_form_Phi(ex, n - 1, z);
    default:
      unsupported(ex, "R^_n");
  }
}

cplx closed_form_Phi(const ExampleSpec& ex, std::size_t n, cplx z) {
  require_plain(ex, "Phi_n");
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return std::pow(z, dn);
    case ExampleId::Ex3: {
      // Phi_{m-1} with m = n + 1.
      const double m = dn + 1.0;
      if (std::abs(z - 1.0) > 1e-3) {
        return (m * (std::pow(z, m + 1.0) - 1.0) - (m + 1.0) * (std::pow(z, m) - 1.0)) / (m * (z - 1.0) * (z - 1.0));
      }
      cplx sum{};
      for (std::size_t k = n + 1; k-- > 0;) sum = sum * z + (static_cast<double>(k) + 1.0);
      return sum / m;
    }
    case ExampleId::Ex4: {
      const cplx b = b_param(ex);
      const cplx c = b + std::conj(b) + 3.0;
      return pochhammer(c, n) / pochhammer(b + 2.0, n) * eval_2f1_poly(n, b + 2.0, c, 1.0 - z);
    }
    default:
      unsupported(ex, "Phi_n");
  }
}

cplx closed_form_alpha(const ExampleSpec& ex, std::size_t n) {
  require_plain(ex, "alpha_n");
  switch (ex.id) {
    case ExampleId::Ex1:
      return cplx{};
    case ExampleId::Ex3:
      return cplx{-1.0 / (static_cast<double>(n) + 2.0), 0.0};
    case ExampleId::Ex4: {
      const cplx b = b_param(ex);
      return -pochhammer(b + 1.0, n + 1) / pochhammer(std::conj(b) + 2.0, n + 1);
    }
    default:
      unsupported(ex, "alpha_n");
  }
}

cplx closed_form_u(const ExampleSpec& ex, std::size_t n, double x) {
  require_plain(ex, "u_n");
  const cplx zeta = cplx{x, 1.0} / cplx{x, -1.0};
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return n == 0 ? cplx{1.0, 0.0} : sign / std::sqrt(2.0) * (1.0 + std::pow(zeta, dn));
    case ExampleId::Ex3:
      return sign * 0.5 * kI * cplx{x, -1.0} * (1.0 - std::pow(zeta, dn + 1.0));
    default:
      unsupported(ex, "u_n");
  }
}

cplx closed_form_u_hat(const ExampleSpec& ex, std::size_t n, double x) {
  require_plain(ex, "u^_n");
  if (n == 0) throw Error(ErrorCode::DegreeOutOfRange, "u^_n needs n >= 1");
  const cplx zeta = cplx{x, 1.0} / cplx{x, -1.0};
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double dn = static_cast<double>(n);
  switch (ex.id) {
    case ExampleId::Ex1:
      return sign / 2.0 * (std::pow(zeta, dn) - std::pow(zeta, dn - 1.0));
    case ExampleId::Ex3: {
      const double r = (dn + 1.0) / dn;
      const double l = dn / (2.0 * (dn + 1.0));
      return sign * std::sqrt(l) / 2.0 * kI * cplx{x, -1.0} *
             (1.0 - r - std::pow(zeta, dn + 1.0) + r * std::pow(zeta, dn));
    }
    default:
      unsupported(ex, "u^_n");
  }
}

double closed_form_M(const ExampleSpec& ex, std::size_t n) {
  require_plain(ex, "M_n");
  if (n == 0) throw Error(ErrorCode::DegreeOutOfRange, "M_n needs n >= 1");
  if (ex.id == ExampleId::Ex3) return 0.5;
  if (ex.id == ExampleId::Ex4 && ex.lambda > -0.5) {
    const double dn = static_cast<double>(n);
    return 0.5 * (2.0 * ex.lambda + dn) / (ex.lambda + dn);
  }
  throw Error(ErrorCode::RequiresMultipleParameter, std::string("no maximal parameters for ") + to_string(ex.id));
}

double circle_density(const ExampleSpec& ex, double theta) {
  ex.validate();
  const double half = std::sin(theta / 2.0);
  switch (ex.id) {
    case ExampleId::Ex1:
      return 1.0 / (2.0 * kPi);
    case ExampleId::Ex2:
      return (1.0 - ex.kappa) / (2.0 * kPi);
    case ExampleId::Ex3:
      return half * half / kPi;
    case ExampleId::Ex4:
      return std::exp(ex4_log_mu_constant(ex) + (kPi - theta) * ex.eta + (ex.lambda + 1.0) * std::log(half * half));
  }
  return 0.0;
}

std::vector<PointMass> point_masses(const ExampleSpec& ex) {
  ex.validate();
  if (ex.id == ExampleId::Ex2) return {PointMass{kI, 1.0, ex.kappa}};
  return {};
}

double psi_density(const ExampleSpec& ex, double x) {
  // theta = 2 arccot(x) in (0, 2 pi), |d theta / dx| = 2 / (x^2 + 1).
  const double theta = 2.0 * (kPi / 2.0 - std::atan(x));
  return circle_density(ex, theta) * 2.0 / (x * x + 1.0);
}

double phi_density(const ExampleSpec& ex, double x) {
  ex.validate();
  if (ex.id == ExampleId::Ex3) return 1.0 / (kPi * (x * x + 1.0));
  if (ex.id == ExampleId::Ex4 && ex.lambda > -0.5) {
    const double lam = ex.lambda;
    const double log_const = (2.0 * lam + 1.0) * std::log(2.0) + 2.0 * log_gamma(b_param(ex) + 1.0).real() -
                             std::log(2.0 * kPi) - std::lgamma(2.0 * lam + 1.0);
    const double arccot = kPi / 2.0 - std::atan(x);
    return std::exp(log_const + (kPi - 2.0 * arccot) * ex.eta - (lam + 1.0) * std::log1p(x * x));
  }
  throw Error(ErrorCode::RequiresMultipleParameter, std::string("no measure nu for ") + to_string(ex.id));
}

double circle_mass(const ExampleSpec& ex) {
  double total = integrate([&ex](double t) { return circle_density(ex, t); }, 0.0, 2.0 * kPi);
  for (const PointMass& m : point_masses(ex)) total += m.mass;
  return total;
}

cplx principal_value_I(const ExampleSpec& ex) {
  // zeta / (zeta - 1) = 1/2 - (i/2) cot(theta / 2); pair theta with 2 pi - theta.
  const auto w = [&ex](double t) { return circle_density(ex, t); };
  const double re = integrate([&w](double t) { return 0.5 * (w(t) + w(2.0 * kPi - t)); }, 0.0, kPi);
  const double im = integrate([&w](double t) { return -0.5 * (w(t) - w(2.0 * kPi - t)) / std::tan(t / 2.0); }, 0.0, kPi);
  cplx out{re, im};
  for (const PointMass& m : point_masses(ex)) out += m.mass * m.zeta / (m.zeta - 1.0);
  return out;
}

std::string export_fixture_json(const ExampleSpec& ex, std::size_t N) {
  const CoefficientData cd = example_sequences(ex, N);
  nlohmann::ordered_json j;
  j["example"] = to_string(ex.id);
  j["kappa"] = ex.kappa;
  j["lambda"] = ex.lambda;
  j["eta"] = ex.eta;
  j["s"] = ex.s_or_zero();
  j["N"] = N;
  j["c"] = cd.c;
  j["d"] = std::vector<double>(cd.d.d.begin(), cd.d.d.begin() + static_cast<std::ptrdiff_t>(N));
  j["ell"] = std::vector<double>(cd.ell.ell.begin(), cd.ell.ell.begin() + static_cast<std::ptrdiff_t>(N + 1));
  if (!has_nonzero_s(ex) && ex.id != ExampleId::Ex2) {
    nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < N; ++k) {
      const cplx a = closed_form_alpha(ex, k);
      alpha.push_back({a.real(), a.imag()});
    }
    j["alpha"] = alpha;
  }
  return j.dump(2);
}

}  // namespace r2opuc
