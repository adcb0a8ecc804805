#pragma once

#include <span>
#include <vector>

namespace sdq {

double median(std::vector<double> v);

/// p in [0, 1]; linear interpolation between order statistics.
double percentile(std::vector<double> v, double p);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace sdq
