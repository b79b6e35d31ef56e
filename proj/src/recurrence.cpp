#include "r2opuc/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "r2opuc/errors.hpp"

namespace r2opuc {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_degree(const CoefficientData& cd, std::size_t n, std::size_t min = 0) {
  if (n < min || n > cd.N) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "degree " + std::to_string(n) + " outside [" + std::to_string(min) + ", " +
                    std::to_string(cd.N) + "]");
  }
}

void require_finite(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e150) {
    throw Error(ErrorCode::InvalidInput, "evaluation point must be finite and below 1e150");
  }
}

// Runs P_k, P_{k-1} and their derivatives forward with a shared exponent.
class PRecurrence {
 public:
  PRecurrence(const CoefficientData& cd, double x) : cd_(cd), x_(x), q_(x * x + 1.0) {}

  void advance() {
    if (degree_ == 0) {
      p_prev_ = p_;
      dp_prev_ = dp_;
      p_ = std::ldexp(x_ - cd_.c_at(1), -exp2_);
      dp_ = std::ldexp(1.0, -exp2_);
    } else {
      const double a = x_ - cd_.c_at(degree_ + 1);
      const double d = cd_.d_at(degree_);
      const double next = a * p_ - d * q_ * p_prev_;
      const double dnext = p_ + a * dp_ - d * (2.0 * x_ * p_prev_ + q_ * dp_prev_);
      p_prev_ = p_;
      dp_prev_ = dp_;
      p_ = next;
      dp_ = dnext;
    }
    ++degree_;
    rescale();
  }

  std::size_t degree() const noexcept { return degree_; }
  PolyValue p() const { return PolyValue{p_, exp2_}.normalized(); }
  PolyValue dp() const { return PolyValue{dp_, exp2_}.normalized(); }

  // Raw mantissas sharing exp2().
  double p_raw() const noexcept { return p_; }
  double p_prev_raw() const noexcept { return p_prev_; }
  double dp_raw() const noexcept { return dp_; }
  double dp_prev_raw() const noexcept { return dp_prev_; }
  int exp2() const noexcept { return exp2_; }

 private:
  void rescale() {
    const double m = std::max({std::abs(p_), std::abs(p_prev_), std::abs(dp_), std::abs(dp_prev_)});
    if (m == 0.0 || !std::isfinite(m)) return;
    int e = 0;
    std::frexp(m, &e);
    p_ = std::ldexp(p_, -e);
    p_prev_ = std::ldexp(p_prev_, -e);
    dp_ = std::ldexp(dp_, -e);
    dp_prev_ = std::ldexp(dp_prev_, -e);
    exp2_ += e;
  }

  const CoefficientData& cd_;
  double x_;
  double q_;
  std::size_t degree_ = 0;
  double p_ = 1.0, p_prev_ = 0.0, dp_ = 0.0, dp_prev_ = 0.0;
  int exp2_ = 0;
};

PRecurrence run_P(const CoefficientData& cd, std::size_t n, double x) {
  PRecurrence rec(cd, x);
  while (rec.degree() < n) rec.advance();
  return rec;
}

// R_k, R_{k-1} at a complex point with a shared exponent.
class RRecurrence {
 public:
  RRecurrence(const CoefficientData& cd, cplx z) : cd_(cd), z_(z) {}

  void advance() {
    const double c = cd_.c_at(degree_ + 1);
    const cplx factor = (1.0 + kI * c) * z_ + (1.0 - kI * c);
    cplx next = factor * r_;
    if (degree_ > 0) next -= 4.0 * cd_.d_at(degree_) * z_ * r_prev_;
    r_prev_ = r_;
    r_ = next;
    ++degree_;
    const double m = std::max(ComplexPolyValue::magnitude(r_), ComplexPolyValue::magnitude(r_prev_));
    if (m != 0.0 && std::isfinite(m)) {
      int e = 0;
      std::frexp(m, &e);
      r_ = ComplexPolyValue::scale(r_, -e);
      r_prev_ = ComplexPolyValue::scale(r_prev_, -e);
      exp2_ += e;
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  cplx r_raw() const noexcept { return r_; }
  cplx r_prev_raw() const noexcept { return r_prev_; }
  int exp2() const noexcept { return exp2_; }

 private:
  const CoefficientData& cd_;
  cplx z_;
  std::size_t degree_ = 0;
  cplx r_{1.0, 0.0};
  cplx r_prev_{};
  int exp2_ = 0;
};

RRecurrence run_R(const CoefficientData& cd, std::size_t n, cplx z) {
  RRecurrence rec(cd, z);
  while (rec.degree() < n) rec.advance();
  return rec;
}

// (x - i)^k prod_{j<=k} sqrt(d_{j+1}) as a scaled complex number.
ComplexPolyValue u_denominator(const CoefficientData& cd, std::size_t k, double x) {
  ComplexPolyValue den{cplx{1.0, 0.0}, 0};
  den = den.normalized();
  for (std::size_t j = 1; j <= k; ++j) {
    den = ComplexPolyValue{den.mantissa * (cplx{x, -1.0} * std::sqrt(cd.d_at(j))), den.exp2}.normalized();
  }
  return den;
}

}  // namespace

cplx cayley(double x) {
  const cplx z = cplx{x, 1.0} / cplx{x, -1.0};
  return z / std::abs(z);
}

CoefficientData make_coefficient_data(std::vector<double> c, ChainSequence d) {
  for (double v : c) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "c contains a non-finite entry");
  }
  if (d.size() < c.size()) {
    throw Error(ErrorCode::InvalidInput, "need d_2..d_" + std::to_string(c.size() + 1) + " for " +
                                             std::to_string(c.size()) + " values of c");
  }
  for (double v : d.d) {
    if (!std::isfinite(v) || !(v > 0.0)) throw Error(ErrorCode::NotAChainSequence, "d must be positive");
  }
  CoefficientData cd;
  cd.N = c.size();
  cd.c = std::move(c);
  cd.d = std::move(d);
  cd.ell = minimal_params(cd.d, cd.d.size() + 1);
  return cd;
}

PolyEval eval_P(const CoefficientData& cd, std::size_t n, double x) {
  require_degree(cd, n);
  require_finite(x);
  const PRecurrence rec = run_P(cd, n, x);
  return {rec.p(), rec.dp()};
}

double leading_coeff(const CoefficientData& cd, std::size_t n) {
  require_degree(cd, n);
  double p = 1.0;
  for (std::size_t j = 1; j <= n; ++j) p *= 1.0 - cd.l(j);
  return p;
}

PolyValue wronskian_G(const CoefficientData& cd, std::size_t n, double x) {
  require_degree(cd, n, 1);
  require_finite(x);
  const PRecurrence rec = run_P(cd, n, x);
  const double m = rec.dp_raw() * rec.p_prev_raw() - rec.dp_prev_raw() * rec.p_raw();
  return PolyValue{m, 2 * rec.exp2()}.normalized();
}

PolyValue kernel_G(const CoefficientData& cd, std::size_t n, double x, double y) {
  require_degree(cd, n, 1);
  require_finite(x);
  require_finite(y);
  if (std::abs(x - y) < 1e-13 * std::max({std::abs(x), std::abs(y), 1.0})) {
    throw Error(ErrorCode::CoincidentPoints, "kernel_G needs x != y; use wronskian_G on the diagonal");
  }
  const PRecurrence rx = run_P(cd, n, x);
  const PRecurrence ry = run_P(cd, n, y);
  const double m = (rx.p_raw() * ry.p_prev_raw() - rx.p_prev_raw() * ry.p_raw()) / (x - y);
  return PolyValue{m, rx.exp2() + ry.exp2()}.normalized();
}

ComplexPolyValue eval_u(const CoefficientData& cd, std::size_t n, double x) {
  require_degree(cd, n);
  require_finite(x);
  const PolyValue p = run_P(cd, n, x).p();
  const ComplexPolyValue num{cplx{(n % 2 == 0) ? p.mantissa : -p.mantissa, 0.0}, p.exp2};
  return num / u_denominator(cd, n, x);
}

std::vector<cplx> eval_u_vector(const CoefficientData& cd, std::size_t n, double x) {
  require_degree(cd, n > 0 ? n - 1 : 0);
  require_finite(x);
  std::vector<cplx> out;
  out.reserve(n);
  PRecurrence rec(cd, x);
  ComplexPolyValue den{cplx{1.0, 0.0}, 0};
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      rec.advance();
      den = ComplexPolyValue{den.mantissa * (cplx{x, -1.0} * std::sqrt(cd.d_at(k))), den.exp2}.normalized();
    }
    const PolyValue p = rec.p();
    const ComplexPolyValue num{cplx{(k % 2 == 0) ? p.mantissa : -p.mantissa, 0.0}, p.exp2};
    out.push_back((num / den).value());
  }
  return out;
}

cplx eval_u_hat(const CoefficientData& cd, std::size_t k, double x) {
  require_degree(cd, k, 1);
  const cplx uk = eval_u(cd, k, x).value();
  const cplx ukm1 = eval_u(cd, k - 1, x).value();
  return std::sqrt(cd.l(k + 1)) * uk + std::sqrt(1.0 - cd.l(k)) * ukm1;
}

cplx eval_u_hat_direct(const CoefficientData& cd, std::size_t k, double x) {
  require_degree(cd, k, 1);
  require_finite(x);
  const PRecurrence rec = run_P(cd, k, x);
  const cplx bracket = rec.p_raw() - (1.0 - cd.l(k)) * cplx{x, -1.0} * rec.p_prev_raw();
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const ComplexPolyValue num = ComplexPolyValue{sign * std::sqrt(cd.l(k + 1)) * bracket, rec.exp2()}.normalized();
  return (num / u_denominator(cd, k, x)).value();
}

ComplexPolyValue eval_R(const CoefficientData& cd, std::size_t n, cplx z) {
  require_degree(cd, n);
  const RRecurrence rec = run_R(cd, n, z);
  return ComplexPolyValue{rec.r_raw(), rec.exp2()}.normalized();
}

ComplexPolyValue eval_R_hat(const CoefficientData& cd, std::size_t k, cplx z) {
  require_degree(cd, k, 1);
  const RRecurrence rec = run_R(cd, k, z);
  const cplx v = rec.r_raw() - 2.0 * (1.0 - cd.l(k)) * rec.r_prev_raw();
  return ComplexPolyValue{v, rec.exp2()}.normalized();
}

ComplexPoly coeffs_R(const CoefficientData& cd, std::size_t n) {
  require_degree(cd, n);
  if (n > kMaxCoefficientDegree) {
    throw Error(ErrorCode::DegreeOutOfRange, "coefficient forms are kept only up to degree 512");
  }
  ComplexPoly prev{{cplx{}}};
  ComplexPoly cur{{cplx{1.0, 0.0}}};
  for (std::size_t k = 0; k < n; ++k) {
    const double c = cd.c_at(k + 1);
    const cplx lead = 1.0 + kI * c;
    const cplx tail = 1.0 - kI * c;
    ComplexPoly next;
    next.coeffs.assign(cur.coeffs.size() + 1, cplx{});
    for (std::size_t j = 0; j < cur.coeffs.size(); ++j) {
      next.coeffs[j] += tail * cur.coeffs[j];
      next.coeffs[j + 1] += lead * cur.coeffs[j];
    }
    if (k > 0) {
      const double w = 4.0 * cd.d_at(k);
      for (std::size_t j = 0; j < prev.coeffs.size(); ++j) next.coeffs[j + 1] -= w * prev.coeffs[j];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ComplexPoly coeffs_R_hat(const CoefficientData& cd, std::size_t k) {
  require_degree(cd, k, 1);
  ComplexPoly out = coeffs_R(cd, k);
  const ComplexPoly prev = coeffs_R(cd, k - 1);
  const double w = 2.0 * (1.0 - cd.l(k));
  for (std::size_t j = 0; j < prev.coeffs.size(); ++j) out.coeffs[j] -= w * prev.coeffs[j];
  return out;
}

ComplexPoly coeffs_Phi(const CoefficientData& cd, std::size_t m) {
  const ComplexPoly rhat = coeffs_R_hat(cd, m + 1);
  // Synthetic division by (z - 1), highest degree first.
  const std::size_t deg = rhat.degree();
  ComplexPoly q;
  q.coeffs.assign(deg, cplx{});
  cplx carry{};
  for (std::size_t j = deg; j >= 1; --j) {
    carry = rhat.coeffs[j] + carry;
    q.coeffs[j - 1] = carry;
  }
  const cplx remainder = rhat.coeffs[0] + carry;
  if (std::abs(remainder) > 1e-10 * rhat.norm()) {
    throw Error(ErrorCode::DeflationResidual,
                "R^_" + std::to_string(m + 1) + "(1) = " + std::to_string(std::abs(remainder)));
  }
  cplx lead{1.0, 0.0};
  for (std::size_t j = 1; j <= m + 1; ++j) lead *= 1.0 + kI * cd.c_at(j);
  for (cplx& a : q.coeffs) a /= lead;
  return q;
}

cplx eval_Phi_pointwise(const CoefficientData& cd, std::size_t m, cplx z) {
  if (std::abs(z - 1.0) < 1e-8) {
    throw Error(ErrorCode::CoincidentPoints, "pointwise Phi evaluation needs z away from 1");
  }
  const ComplexPolyValue rhat = eval_R_hat(cd, m + 1, z);
  ComplexPolyValue lead{cplx{1.0, 0.0}, 0};
  for (std::size_t j = 1; j <= m + 1; ++j) {
    lead = ComplexPolyValue{lead.mantissa * (1.0 + kI * cd.c_at(j)), lead.exp2}.normalized();
  }
  const ComplexPolyValue den = lead * ComplexPolyValue::from(z - 1.0);
  return (rhat / den).value();
}

cplx eval_Phi(const CoefficientData& cd, std::size_t m, cplx z) {
  if (m + 1 <= kMaxCoefficientDegree) return coeffs_Phi(cd, m)(z);
  return eval_Phi_pointwise(cd, m, z);
}

}  // namespace r2opuc
