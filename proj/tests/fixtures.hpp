#pragma once

#include "netprune/core/dataset.hpp"

namespace fixtures {

inline netprune::Dataset products() {
  using netprune::Value;
  using K = netprune::ValueKind;
  return netprune::Dataset::from_rows({{"name", K::String}, {"seller", K::String}, {"price", K::UInt}},
                                      {{Value("Burger"), Value("McQuick"), 4},
                                       {Value("Pizza"), Value("Papizza"), 7},
                                       {Value("Fries"), Value("McQuick"), 2},
                                       {Value("Jello"), Value("JellyFish"), 5}});
}

inline netprune::Dataset ratings() {
  using netprune::Value;
  using K = netprune::ValueKind;
  return netprune::Dataset::from_rows({{"name", K::String}, {"taste", K::UInt}, {"texture", K::UInt}},
                                      {{Value("Pizza"), 7, 5},
                                       {Value("Cheetos"), 8, 6},
                                       {Value("Jello"), 9, 4},
                                       {Value("Burger"), 5, 7},
                                       {Value("Fries"), 3, 3}});
}

}  // namespace fixtures
