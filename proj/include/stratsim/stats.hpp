#pragma once

#include <optional>
#include <span>

namespace stratsim::stats {

double mean(std::span<const double> xs);

/// Unbiased (n - 1) sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

/// Pearson correlation; nullopt when undefined (length < 2 or a constant
/// series).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  /// Two-sided.
  double p_value = 1.0;
};

/// Welch's unequal-variance t-test. Both samples need at least two values.
/// Zero variance on both sides gives t = 0, p = 1 for equal means and
/// t = ±inf, p = 0 otherwise.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace stratsim::stats
