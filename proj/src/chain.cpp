#include "r2opuc/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "r2opuc/errors.hpp"

namespace r2opuc {

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::SingleParameter: return "SingleParameter";
    case Classification::MultipleParameter: return "MultipleParameter";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ChainParams minimal_params(const ChainSequence& d, std::size_t count) {
  if (count == 0) return {};
  if (count > d.size() + 1) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "minimal_params needs d_2..d_" + std::to_string(count) + ", have " +
                    std::to_string(d.size()) + " entries");
  }
  ChainParams out;
  out.ell.resize(count);
  out.ell[0] = 0.0;
  for (std::size_t n = 1; n < count; ++n) {
    const double dn = d.at(n);
    const double next = dn / (1.0 - out.ell[n - 1]);
    if (!(dn > 0.0) || !(next > 0.0) || !(next < 1.0) || !std::isfinite(next)) {
      throw Error(ErrorCode::NotAChainSequence,
                  "l_" + std::to_string(n + 1) + " = " + std::to_string(next) +
                      " is outside (0, 1)");
    }
    out.ell[n] = next;
  }
  return out;
}

namespace {

// g_1..g_count from g_{start+1} = 1 and g_n = 1 - d_{n+1} / g_{n+1}.
std::vector<double> backward_iterate(const ChainSequence& d, std::size_t count, std::size_t start) {
  if (start + 1 > d.size() + 1 || start < count) {
    throw Error(ErrorCode::DepthInsufficient,
                "backward recursion from depth " + std::to_string(start) + " needs d_" +
                    std::to_string(start + 1) + "; chain has " + std::to_string(d.size()) +
                    " entries");
  }
  std::vector<double> out(count);
  double g = 1.0;
  for (std::size_t n = start; n >= 1; --n) {
    g = 1.0 - d.at(n) / g;
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw Error(ErrorCode::DepthInsufficient,
                  "backward iterate g_" + std::to_string(n) + " left (0, 1]");
    }
    if (n <= count) out[n - 1] = g;
  }
  return out;
}

void check_above_minimal(const ChainSequence& d, std::vector<double>& m) {
  const ChainParams minimal = minimal_params(d, m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double floor = minimal.ell[k];
    if (m[k] < floor - 1e-10) {
      throw Error(ErrorCode::DepthInsufficient,
                  "backward iterate M_" + std::to_string(k + 1) + " fell below l_" +
                      std::to_string(k + 1));
    }
    m[k] = std::clamp(m[k], floor, 1.0);
  }
}

}  // namespace

MaximalParams maximal_params(const ChainSequence& d, std::size_t count, std::size_t depth) {
  if (count == 0) throw Error(ErrorCode::InvalidInput, "maximal_params needs count >= 1");
  if (depth < count) throw Error(ErrorCode::DepthInsufficient, "depth must be >= count");
  constexpr std::size_t kProbe = 32;
  MaximalParams out;
  out.depth = depth;
  out.values = backward_iterate(d, count, depth);
  const std::vector<double> deeper = backward_iterate(d, count, depth + kProbe);
  for (std::size_t k = 0; k < count; ++k) {
    out.stability = std::max(out.stability, std::abs(out.values[k] - deeper[k]));
  }
  out.converged = out.stability <= 1e-12;
  check_above_minimal(d, out.values);
  return out;
}

MaximalParams maximal_params_extrapolated(const ChainSequence& d, std::size_t count,
                                          std::size_t depth) {
  if (count == 0) throw Error(ErrorCode::InvalidInput, "maximal_params needs count >= 1");
  if (depth < count) throw Error(ErrorCode::DepthInsufficient, "depth must be >= count");
  const std::vector<double> m1 = backward_iterate(d, count, depth);
  const std::vector<double> m2 = backward_iterate(d, count, 2 * depth);
  const std::vector<double> m4 = backward_iterate(d, count, 4 * depth);

  MaximalParams out;
  out.depth = 4 * depth;
  out.values = m4;
  for (std::size_t k = 0; k < count; ++k) out.stability = std::max(out.stability, std::abs(m4[k] - m2[k]));

  // Aitken step on the deepest slot only, then back down through
  // g_n = 1 - d_{n+1} / g_{n+1} so the chain relation holds to rounding.
  const std::size_t top = count - 1;
  const double delta1 = m2[top] - m1[top];
  const double delta2 = m4[top] - m2[top];
  if (std::abs(delta2) >= 1e-15 && delta1 * delta2 > 0.0 && std::abs(delta2) < std::abs(delta1)) {
    double g = m4[top] - delta2 * delta2 / (delta2 - delta1);
    out.values[top] = g;
    for (std::size_t n = count - 1; n >= 1; --n) {
      g = 1.0 - d.at(n) / g;
      out.values[n - 1] = g;
    }
    out.extrapolated = true;
  }
  out.converged = out.stability <= 1e-12;
  check_above_minimal(d, out.values);
  return out;
}

WallSeries classify(const ChainSequence& d, std::size_t terms) {
  if (terms < 4) throw Error(ErrorCode::InvalidInput, "classify needs at least 4 terms");
  const ChainParams minimal = minimal_params(d, terms + 1);

  WallSeries out;
  out.terms = terms;
  const std::size_t half = terms / 2;
  double log_term = 0.0;
  double sum = 0.0;
  bool unbounded = false;
  for (std::size_t n = 1; n <= terms; ++n) {
    const double l = minimal.l(n + 1);
    log_term += std::log(l) - std::log1p(-l);
    if (log_term > 600.0) {
      unbounded = true;
      sum = HUGE_VAL;
    } else if (!unbounded) {
      sum += std::exp(log_term);
    }
    if (n == half) out.half_partial_sum = sum;
  }
  out.partial_sum = sum;

  double raabe = 0.0;
  std::size_t samples = 0;
  for (std::size_t n = half; n < terms; ++n) {
    const double l = minimal.l(n + 2);
    raabe += static_cast<double>(n) * ((1.0 - l) / l - 1.0);
    ++samples;
  }
  out.raabe = raabe / static_cast<double>(samples);

  constexpr double kMargin = 0.05;
  if (unbounded) {
    out.classification = Classification::SingleParameter;
  } else if (std::abs(out.partial_sum - out.half_partial_sum) < 1e-10 * out.partial_sum ||
             out.raabe > 1.0 + kMargin) {
    out.classification = Classification::MultipleParameter;
  } else if (out.raabe < 1.0 - kMargin) {
    out.classification = Classification::SingleParameter;
  } else {
    out.classification = Classification::Inconclusive;
  }
  return out;
}

}  // namespace r2opuc
