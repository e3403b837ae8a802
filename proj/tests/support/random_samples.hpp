#pragma once

// Random sample generators for property tests: continuous values plus
// injected ties, zeros and constant blocks, to exercise the degenerate
// branches of the curve code.

#include <cstddef>
#include <vector>

#include "lpp/rng.hpp"
#include "lpp/sample.hpp"

namespace testsupport {

inline std::vector<double> random_values(lpp::RngStream& rng, std::size_t n,
                                         bool allow_zeros = true) {
  std::vector<double> v(n);
  const double mode = static_cast<double>(rng.uniform_below(4));
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == 0.0) {
      v[i] = 10.0 * rng.uniform01();  // continuous
    } else if (mode == 1.0) {
      v[i] = static_cast<double>(rng.uniform_below(6));  // heavy ties, zeros
      if (!allow_zeros && v[i] == 0.0) v[i] = 6.0;
    } else if (mode == 2.0) {
      v[i] = 3.0;  // constant sample
    } else {
      v[i] = rng.uniform01() < 0.3 && allow_zeros
                 ? 0.0
                 : std::exp(2.0 * rng.uniform01());  // zeros + skew
    }
  }
  return v;
}

inline lpp::Sample random_sample(lpp::RngStream& rng, std::size_t max_n,
                                 bool allow_zeros = true) {
  const std::size_t n = 1 + rng.uniform_below(max_n);
  return lpp::Sample(random_values(rng, n, allow_zeros));
}

}  // namespace testsupport
