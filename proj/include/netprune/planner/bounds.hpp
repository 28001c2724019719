#pragma once

#include <cstdint>
#include <optional>

namespace netprune {

/// Principal branch of the Lambert W function (inverse of z e^z) for
/// x >= -1/e, by Halley iteration to a relative tolerance of 1e-12.
double lambert_w(double x);

/// Smallest d satisfying the randomized TOP N precondition d >= N e / ln(1/delta).
std::uint64_t topn_min_rows(std::uint64_t n, double delta);

/// Whether d satisfies the randomized TOP N guarantee precondition
/// d >= N e / ln(1/delta).
bool topn_precondition(std::uint64_t d, std::uint64_t n, double delta);

/// Columns for a d-row randomized TOP N matrix:
///   w = floor(1.3 ln(d/delta) / ln((d/(N e)) ln(d/delta))), at least 1.
/// Evaluated wherever the inner logarithm argument exceeds 1, including d
/// below topn_precondition (where the width carries no guarantee); throws
/// ConfigError naming the inequality otherwise.
std::uint64_t topn_width(std::uint64_t d, std::uint64_t n, double delta);

struct TopNShape {
  std::uint64_t d = 0;
  std::uint64_t w = 0;

  std::uint64_t cells() const noexcept { return d * w; }
  friend bool operator==(const TopNShape&, const TopNShape&) = default;
};

enum class TopNSearch : std::uint8_t {
  /// Continuous optimum d* = delta e^{W(N e^2 / delta)}; then the smallest d
  /// reaching floor(w(d*)) and its two neighbours, keeping the least d*w.
  Lambert,
  /// Exhaustive scan of d minimizing d * topn_width(d), ties to smaller d.
  Scan,
};

/// (d, w) minimizing the matrix size for TOP N at failure probability delta,
/// with d <= d_max when given. Throws ConfigError if no d is feasible.
TopNShape topn_optimize(std::uint64_t n, double delta, std::optional<std::uint64_t> d_max = std::nullopt,
                        TopNSearch method = TopNSearch::Lambert);

/// Expected number of unpruned entries of a random-order stream of m values:
/// w d ln(m e / (w d)), or m when m < w d.
double topn_expected_unpruned(double m, std::uint64_t w, std::uint64_t d);

/// Bound on the distinct keys any of d rows receives, with probability
/// 1 - delta/2, when D distinct keys are hashed.
double distinct_max_load(double distinct, std::uint64_t d, double delta);

/// Fingerprint width f = ceil(log2(d M^2 / delta)) for probabilistic DISTINCT.
unsigned fingerprint_bits(double distinct, std::uint64_t d, double delta);

/// Largest D whose fingerprint_bits is at most `bits`, or 0 if none.
std::uint64_t max_distinct_for_bits(unsigned bits, std::uint64_t d, double delta);

/// Expected pruned fraction of duplicate entries in a random-order stream,
/// 0.99 min(w d / (D e), 1). Empty outside the regime D > d ln(200 d).
std::optional<double> distinct_expected_prune_fraction(double distinct, std::uint64_t d, std::uint64_t w);

}  // namespace netprune
