#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lpp {

// A finite set of non-negative observations. Keeps the insertion order
// (needed for paired resampling) together with a sorted copy and the mean.
// Immutable after construction.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Sample: empty sample");
    double sum = 0.0;
    for (double v : values_) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("Sample: values must be finite and >= 0");
      sum += v;
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
    mean_ = sum / static_cast<double>(values_.size());
  }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sorted() const { return sorted_; }
  double mean() const { return mean_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  double mean_ = 0.0;
};

// Jointly observed samples of equal size; pair i is (first[i], second[i]).
struct PairedSample {
  PairedSample(Sample x, Sample y) : first(std::move(x)), second(std::move(y)) {
    if (first.size() != second.size())
      throw std::invalid_argument("PairedSample: margins must have equal size");
  }
  Sample first;
  Sample second;
};

}  // namespace lpp
