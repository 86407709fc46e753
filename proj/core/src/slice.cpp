#include "tvnet/slice.hpp"

#include <algorithm>
#include <cmath>

#include "tvnet/error.hpp"

namespace tvnet {

double slice_sample_bounded(const std::function<double(double)>& log_density, double lower,
                            double upper, double current, RngStream& rng,
                            const SliceOptions& options) {
  require(lower < upper, ErrorKind::kInvalidParameter, "slice bounds must satisfy lower < upper");
  require(current >= lower && current < upper, ErrorKind::kInvalidParameter,
          "current point must lie in [lower, upper)", "current");
  const double f0 = log_density(current);
  if (!std::isfinite(f0)) {
    fail(ErrorKind::kInvalidState, "log density is not finite at the current point");
  }
  const double level = f0 - rng.exponential(1.0);

  const double width = options.width_fraction * (upper - lower);
  double left = current - rng.uniform() * width;
  double right = left + width;
  left = std::max(left, lower);
  right = std::min(right, upper);

  int steps = options.max_step_out;
  while (left > lower && steps-- > 0 && log_density(left) > level) {
    left = std::max(left - width, lower);
  }
  steps = options.max_step_out;
  while (right < upper && steps-- > 0 && log_density(right) > level) {
    right = std::min(right + width, upper);
  }

  for (int i = 0; i < options.max_shrink; ++i) {
    double x = left + rng.uniform() * (right - left);
    if (x >= upper) x = std::nextafter(upper, lower);
    if (log_density(x) > level) return x;
    if (x < current) {
      left = x;
    } else {
      right = x;
    }
  }
  // The bracket has collapsed onto the current point.
  return current;
}

}  // namespace tvnet
