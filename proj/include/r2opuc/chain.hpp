#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace r2opuc {

/// Positive chain sequence {d_{n+1}}_{n>=1}.  Slot k of `d` holds d_{k+2},
/// so d[0] = d_2.  All entries lie in (0, 1).
struct ChainSequence {
  std::vector<double> d;

  std::size_t size() const noexcept { return d.size(); }
  /// d_{n+1} for n >= 1.
  double at(std::size_t n) const { return d.at(n - 1); }
};

enum class Classification { SingleParameter, MultipleParameter, Inconclusive };

const char* to_string(Classification c) noexcept;

/// Parameter sequences of a chain sequence.  ell[k] holds l_{k+1}, so
/// ell[0] = l_1 = 0; maximal[k] (when present) holds M_{k+1}.
struct ChainParams {
  std::vector<double> ell;
  std::optional<std::vector<double>> maximal;
  Classification classification = Classification::Inconclusive;

  /// l_n for n >= 1.
  double l(std::size_t n) const { return ell.at(n - 1); }
  std::size_t size() const noexcept { return ell.size(); }
};

/// Minimal parameters l_1..l_count from (1 - l_n) l_{n+1} = d_{n+1}, l_1 = 0.
/// Throws NotAChainSequence as soon as some l_{n+1} leaves (0, 1).
ChainParams minimal_params(const ChainSequence& d, std::size_t count);

struct MaximalParams {
  std::vector<double> values;  ///< M_1..M_count
  std::size_t depth = 0;
  double stability = 0.0;      ///< max |M(depth) - M(depth + 32)|
  bool converged = false;      ///< stability <= 1e-12
  bool extrapolated = false;
};

inline constexpr std::size_t kDefaultMaximalDepth = 10000;

/// Maximal parameters M_1..M_count by the backward recursion
/// g_n = 1 - d_{n+1} / g_{n+1} started from g_{depth+1} = 1.  Requires
/// d_{n+1} up to n = depth + 32.  The iterates decrease monotonically towards
/// M_n; `converged` reports whether restarting 32 slots deeper moves them by
/// more than 1e-12.
MaximalParams maximal_params(const ChainSequence& d, std::size_t count,
                             std::size_t depth = kDefaultMaximalDepth);

inline constexpr std::size_t kDefaultExtrapolationDepth = 100000;

/// Backward recursion run from depth, 2 depth and 4 depth, an Aitken
/// delta-squared step on M_count, then the backward recursion from there down
/// to M_1.  The truncation error of the backward iterate decays only
/// algebraically in the depth when the Wall series converges slowly
/// (d = 1/4 gives M_n + 1/(2(depth - n + 2))).  Requires d_{n+1} up to
/// n = 4 depth.
MaximalParams maximal_params_extrapolated(const ChainSequence& d, std::size_t count,
                                          std::size_t depth = kDefaultExtrapolationDepth);

struct WallSeries {
  std::size_t terms = 0;
  double partial_sum = 0.0;       ///< S_N
  double half_partial_sum = 0.0;  ///< S_{N/2}
  double raabe = 0.0;             ///< mean of n (1/rho_{n+1} - 1) over the last N/2 terms
  Classification classification = Classification::Inconclusive;
};

/// Finite-truncation reading of Wall's criterion on
/// S_N = sum_{n<=N} prod_{j<=n} l_{j+1} / (1 - l_{j+1}).
///
/// MultipleParameter when S_N has stalled (|S_N - S_{N/2}| < 1e-10 S_N) or the
/// Raabe statistic of the terms exceeds 1.05; SingleParameter when it is
/// below 0.95 or the terms grow without bound; Inconclusive otherwise.
WallSeries classify(const ChainSequence& d, std::size_t terms);

}  // namespace r2opuc
