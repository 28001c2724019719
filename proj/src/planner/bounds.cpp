#include "netprune/planner/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "netprune/core/errors.hpp"

namespace netprune {

namespace {

constexpr long double kE = std::numbers::e_v<long double>;
constexpr std::uint64_t kRowLimit = std::uint64_t{1} << 32;

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

// Real-valued width before flooring; nullopt where the formula is undefined.
std::optional<long double> width_real(long double d, std::uint64_t n, double delta) {
  const long double nd = static_cast<long double>(n);
  const long double l = std::log(d / delta);
  const long double inner = d / (nd * kE) * l;
  if (d < nd * kE / std::log(1.0L / delta) || inner <= 1.0L) return std::nullopt;  // outside the guarantee
  return 1.3L * l / std::log(inner);
}

std::uint64_t floor_width(long double w) { return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(w))); }

// Smallest d in [from, limit] with topn_width(d) <= target, or 0 if none.
// The width is nonincreasing in d, so gallop then bisect.
std::uint64_t min_rows_for_width(std::uint64_t from, std::uint64_t limit, std::uint64_t target, std::uint64_t n,
                                 double delta) {
  auto fits = [&](std::uint64_t d) {
    const auto w = width_real(static_cast<long double>(d), n, delta);
    return w && floor_width(*w) <= target;
  };
  if (fits(from)) return from;
  std::uint64_t lo = from, step = 1;
  std::uint64_t hi = from;
  while (true) {
    if (hi == limit) return 0;
    hi = limit - lo > step ? lo + step : limit;
    if (fits(hi)) break;
    lo = hi;
    step *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

TopNShape scan(std::uint64_t n, double delta, std::uint64_t from, std::optional<std::uint64_t> d_max) {
  TopNShape best;
  for (std::uint64_t d = from;; ++d) {
    if (d_max && d > *d_max) break;
    if (best.d != 0 && d >= best.cells()) break;  // w >= 1, so d*w >= d
    if (d > kRowLimit) break;
    const auto w = width_real(static_cast<long double>(d), n, delta);
    if (!w) continue;
    const TopNShape s{d, floor_width(*w)};
    if (best.d == 0 || s.cells() < best.cells()) best = s;
  }
  return best;
}

}  // namespace

double lambert_w(double x) {
  const double branch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < branch) throw std::domain_error("lambert_w: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == branch) return -1.0;
  double w;
  if (x < 1.0) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0;
  } else {
    const double l = std::log(x);
    w = l - (l > 1.0 ? std::log(l) : 0.0);
  }
  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::fabs(step) <= 1e-12 * std::fabs(w)) break;
  }
  return w;
}

std::uint64_t topn_min_rows(std::uint64_t n, double delta) {
  check_delta(delta);
  if (n == 0) throw std::invalid_argument("TOP N needs N >= 1");
  return static_cast<std::uint64_t>(std::ceil(static_cast<long double>(n) * kE / std::log(1.0L / delta)));
}

bool topn_precondition(std::uint64_t d, std::uint64_t n, double delta) {
  check_delta(delta);
  return static_cast<long double>(d) >= static_cast<long double>(n) * kE / std::log(1.0L / delta);
}

std::uint64_t topn_width(std::uint64_t d, std::uint64_t n, double delta) {
  check_delta(delta);
  if (n == 0) throw std::invalid_argument("TOP N needs N >= 1");
  const long double ld = static_cast<long double>(d);
  const long double l = std::log(ld / delta);
  const long double inner = ld / (static_cast<long double>(n) * kE) * l;
  if (!(inner > 1.0L)) {
    throw ConfigError("TOP N width needs (d/(N*e))*ln(d/delta) > 1, got " + std::to_string(static_cast<double>(inner)));
  }
  return floor_width(1.3L * l / std::log(inner));
}

TopNShape topn_optimize(std::uint64_t n, double delta, std::optional<std::uint64_t> d_max, TopNSearch method) {
  const std::uint64_t from = topn_min_rows(n, delta);
  const std::uint64_t limit = d_max ? std::min(*d_max, kRowLimit) : kRowLimit;
  if (from > limit) throw ConfigError("no feasible d: N*e/ln(1/delta) exceeds the row cap");

  TopNShape best;
  if (method == TopNSearch::Lambert) {
    const long double nd = static_cast<long double>(n);
    const long double star =
        delta * std::exp(static_cast<long double>(lambert_w(static_cast<double>(nd * kE * kE / delta))));
    auto w_star = width_real(star, n, delta);
    if (!w_star) w_star = width_real(static_cast<long double>(from), n, delta);
    if (w_star) {
      const std::uint64_t w0 = floor_width(*w_star);
      for (std::uint64_t target : {w0 + 1, w0, w0 - 1}) {
        if (target == 0) continue;
        const std::uint64_t d = min_rows_for_width(from, limit, target, n, delta);
        if (d == 0) continue;
        const TopNShape s{d, floor_width(*width_real(static_cast<long double>(d), n, delta))};
        if (best.d == 0 || s.cells() < best.cells() || (s.cells() == best.cells() && s.d < best.d)) best = s;
      }
    }
  }
  if (best.d == 0) best = scan(n, delta, from, limit);
  if (best.d == 0) throw ConfigError("no feasible d for randomized TOP N");
  return best;
}

double topn_expected_unpruned(double m, std::uint64_t w, std::uint64_t d) {
  const double cells = static_cast<double>(w) * static_cast<double>(d);
  if (m < cells) return m;
  return cells * std::log(m * std::numbers::e / cells);
}

double distinct_max_load(double distinct, std::uint64_t d, double delta) {
  check_delta(delta);
  if (d == 0 || !(distinct >= 1.0)) throw std::invalid_argument("distinct_max_load needs D, d >= 1");
  const long double e = kE;
  if (d == 1) return static_cast<double>(e * distinct);
  const long double dd = static_cast<long double>(d);
  const long double l2 = std::log(2.0L * dd / delta);
  if (distinct > dd * l2) return static_cast<double>(e * distinct / dd);
  const long double medium = e * l2;
  if (distinct >= dd * std::log(1.0L / delta) / e) return static_cast<double>(medium);
  const long double light = 1.3L * l2 / std::log(dd / (distinct * e) * l2);
  return static_cast<double>(std::min(light, medium));
}

unsigned fingerprint_bits(double distinct, std::uint64_t d, double delta) {
  const long double m = distinct_max_load(distinct, d, delta);
  const long double bits = std::log2(static_cast<long double>(d) * m * m / delta);
  return static_cast<unsigned>(std::max(1.0L, std::ceil(bits)));
}

std::uint64_t max_distinct_for_bits(unsigned bits, std::uint64_t d, double delta) {
  if (fingerprint_bits(1.0, d, delta) > bits) return 0;
  std::uint64_t lo = 1, hi = 2;
  while (hi < (std::uint64_t{1} << 62) && fingerprint_bits(static_cast<double>(hi), d, delta) <= bits) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fingerprint_bits(static_cast<double>(mid), d, delta) <= bits ? lo : hi) = mid;
  }
  return lo;
}

std::optional<double> distinct_expected_prune_fraction(double distinct, std::uint64_t d, std::uint64_t w) {
  const double dd = static_cast<double>(d);
  if (!(distinct > dd * std::log(200.0 * dd))) return std::nullopt;
  return 0.99 * std::min(static_cast<double>(w) * dd / (distinct * std::numbers::e), 1.0);
}

}  // namespace netprune
