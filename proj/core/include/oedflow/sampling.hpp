#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "oedflow/forward_model.hpp"
#include "oedflow/types.hpp"

namespace oedflow {

/// Uniform over the model box; requires a channel-free model.
struct UniformBoxSpec {};

/// N split evenly across channels (remainder to the lowest channel indices),
/// uniform over the box within each channel.
struct PerChannelUniformSpec {};

/// Warm start from selected intervals: for each channel, a list of intervals
/// on coordinate 0, each receiving `samples_per_bin` uniform draws. The
/// ensemble size is samples_per_bin times the total number of intervals.
struct BinsSpec {
  struct Interval {
    double lo;
    double hi;
  };
  std::vector<std::vector<Interval>> bins_per_channel;
  int samples_per_bin = 1;
};

/// Diagonal stripe on a 2-D channel-free domain: coordinate 0 uniform,
/// coordinate 1 = coordinate 0 minus spread * N(0,1), clamped to the box.
struct DiagonalStripeSpec {
  double spread = 0.0;
};

using DistributionSpec =
    std::variant<UniformBoxSpec, PerChannelUniformSpec, BinsSpec,
                 DiagonalStripeSpec>;

/// Draw N design points and their frozen noise realizations deterministically
/// from the seed. Points come from the kSampling sub-stream and noise values
/// (noise_scale * N(0,1)) from the kNoise sub-stream, so neither perturbs the
/// other. For BinsSpec, N is derived from the spec and the argument must
/// either match it or be 0.
Ensemble sample_ensemble(const DistributionSpec& spec, int n,
                         std::uint64_t seed, const ForwardModel& model,
                         double noise_scale);

}  // namespace oedflow
