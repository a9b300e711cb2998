#pragma once

#include <vector>

namespace forksettle {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of y on x. Throws BadParams with fewer than two
/// points or mismatched lengths.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace forksettle
