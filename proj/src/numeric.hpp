#pragma once

#include <cmath>

#if defined(_OPENMP)
#define FORKSETTLE_OMP_FOR _Pragma("omp parallel for schedule(static)")
#define FORKSETTLE_OMP_FOR_DYNAMIC _Pragma("omp parallel for schedule(dynamic, 64)")
#else
#define FORKSETTLE_OMP_FOR
#define FORKSETTLE_OMP_FOR_DYNAMIC
#endif

namespace forksettle::detail {

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace forksettle::detail
