#pragma once

#include <functional>

#include "tvnet/rng.hpp"

namespace tvnet {

struct SliceOptions {
  /// Initial bracket width as a fraction of (upper - lower).
  double width_fraction = 0.25;
  int max_step_out = 64;
  int max_shrink = 200;
};

/// One univariate slice-sampling transition on [lower, upper): stepping out
/// with the bracket clipped to the bounds, then shrinkage. Leaves the density
/// exp(log_density) restricted to [lower, upper) invariant.
double slice_sample_bounded(const std::function<double(double)>& log_density, double lower,
                            double upper, double current, RngStream& rng,
                            const SliceOptions& options = {});

}  // namespace tvnet
