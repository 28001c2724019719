#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "netprune/switchsim/aph.hpp"

using namespace netprune;

TEST_CASE("MSB TCAM") {
  const Tcam t = make_msb_tcam();
  CHECK(t.size() == 64);
  CHECK_FALSE(t.lookup(0).has_value());
  std::mt19937_64 rng(1);
  for (unsigned l = 0; l < 64; ++l) {
    const std::uint64_t z = (std::uint64_t{1} << l) | (rng() & ((std::uint64_t{1} << l) - 1));
    CHECK(msb_index(z) == l);
    CHECK(*t.lookup(z) == l);
  }
  CHECK_THROWS_AS(msb_index(0), std::domain_error);
  Tcam small(1);
  small.add({});
  CHECK_THROWS_AS(small.add({}), std::length_error);
}

TEST_CASE("log table") {
  const LogTable& t = LogTable::standard();
  CHECK(t.size() == kLogTableSize);
  CHECK(t[1] == 0);
  CHECK(t[2] == kDefaultBeta);
  CHECK(t[1024] == 10 * kDefaultBeta);
  CHECK(t[3] == static_cast<std::uint32_t>(std::llround(std::log2(3.0L) * kDefaultBeta)));
  CHECK_THROWS_AS(LogTable(std::uint64_t{1} << 30), std::invalid_argument);
}

TEST_CASE("approximate log error and monotonicity") {
  const LogTable& t = LogTable::standard();
  const long double beta = kDefaultBeta;
  const long double bound = beta * std::log2(1.0L + std::ldexp(1.0L, -15)) + 1.0L;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200000; ++i) {
    const std::uint64_t z = rng() >> (rng() % 64);
    if (z == 0) continue;
    const long double exact = beta * std::log2(static_cast<long double>(z));
    CHECK(std::fabs(static_cast<long double>(approx_log(z, t)) - exact) <= bound);
  }
  std::uint64_t prev = 0;
  for (std::uint64_t z = 1; z < (std::uint64_t{1} << 20); ++z) {
    const std::uint64_t v = approx_log(z, t);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(approx_log(UINT64_MAX, t) >= approx_log(UINT64_MAX - 1, t));
}

TEST_CASE("APH score") {
  const LogTable& t = LogTable::standard();
  const std::uint64_t a[] = {0, 8};
  const std::uint64_t b[] = {1, 8};
  CHECK(aph_score(a, t) == aph_score(b, t));
  CHECK(aph_score(b, t) == 3 * kDefaultBeta);
}

TEST_CASE("APH reference values") {
  const LogTable& t = LogTable::standard();
  CHECK(approx_log(std::uint64_t{1} << 40, t) == 40 * kDefaultBeta);
  CHECK(approx_log(1, t) == 0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t z = rng() | 2;
    const long double exact = std::log2(static_cast<long double>(z));
    const long double got = static_cast<long double>(approx_log(z, t)) / kDefaultBeta;
    CHECK(std::fabs(got - exact) / exact < std::ldexp(1.0L, -14));
  }
  const std::uint64_t pizza[] = {7, 5}, cheetos[] = {8, 6};
  CHECK(aph_score(cheetos, t) > aph_score(pizza, t));
}

TEST_CASE("APH score is monotone under dominance") {
  const LogTable& t = LogTable::standard();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100000; ++i) {
    std::uint64_t x[3], y[3];
    for (int k = 0; k < 3; ++k) {
      y[k] = rng() >> (rng() % 64);
      x[k] = y[k] == 0 ? 0 : rng() % (y[k] + 1);
    }
    CHECK(aph_score(x, t) <= aph_score(y, t));
  }
  for (std::uint64_t a = 1; a < kLogTableSize; ++a) CHECK(t[a] >= t[a - 1]);
}
