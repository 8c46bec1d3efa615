#include "oedflow/sampling.hpp"

#include <string>

#include "oedflow/errors.hpp"
#include "oedflow/rng.hpp"

namespace oedflow {

namespace {

Eigen::VectorXd uniform_in_box(const Box& box, RngStream& rng) {
  Eigen::VectorXd x(box.dim());
  for (int k = 0; k < box.dim(); ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
  return x;
}

std::vector<DesignPoint> draw_points(const DistributionSpec& spec, int n,
                                     const ForwardModel& model,
                                     RngStream& rng) {
  const Box box = model.domain();
  const int channels = model.channel_count();
  std::vector<DesignPoint> points;

  if (std::holds_alternative<UniformBoxSpec>(spec)) {
    if (channels > 0)
      throw ConfigError(
          "uniform-box requires a channel-free model; use "
          "per-channel-uniform");
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      points.push_back({uniform_in_box(box, rng), std::nullopt});
    return points;
  }

  if (std::holds_alternative<PerChannelUniformSpec>(spec)) {
    if (channels == 0)
      throw ConfigError("per-channel-uniform requires a model with channels");
    points.reserve(static_cast<std::size_t>(n));
    const int base = n / channels;
    const int rem = n % channels;
    for (int c = 0; c < channels; ++c) {
      const int count = base + (c < rem ? 1 : 0);
      for (int i = 0; i < count; ++i)
        points.push_back({uniform_in_box(box, rng), c});
    }
    return points;
  }

  if (const auto* bins = std::get_if<BinsSpec>(&spec)) {
    int total_bins = 0;
    for (const auto& ch : bins->bins_per_channel)
      total_bins += static_cast<int>(ch.size());
    if (total_bins == 0 || bins->samples_per_bin <= 0)
      throw ConfigError("bins spec with zero total samples");
    if (channels > 0 &&
        static_cast<int>(bins->bins_per_channel.size()) != channels)
      throw ConfigError("bins spec must list one bin set per channel (" +
                        std::to_string(channels) + " expected)");
    if (channels == 0 && bins->bins_per_channel.size() != 1)
      throw ConfigError(
          "bins spec on a channel-free model must use a single bin set");
    for (std::size_t c = 0; c < bins->bins_per_channel.size(); ++c) {
      for (const auto& b : bins->bins_per_channel[c]) {
        if (!(b.lo <= b.hi) || b.lo < box.lo[0] || b.hi > box.hi[0])
          throw ConfigError("bin interval outside the model domain");
        for (int i = 0; i < bins->samples_per_bin; ++i) {
          Eigen::VectorXd x = uniform_in_box(box, rng);
          x[0] = rng.uniform(b.lo, b.hi);
          DesignPoint p{x, std::nullopt};
          if (channels > 0) p.channel = static_cast<int>(c);
          points.push_back(std::move(p));
        }
      }
    }
    return points;
  }

  const auto& stripe = std::get<DiagonalStripeSpec>(spec);
  if (box.dim() != 2 || channels > 0)
    throw ConfigError(
        "diagonal-stripe requires a 2-D channel-free design domain");
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(2);
    x[0] = rng.uniform(box.lo[0], box.hi[0]);
    x[1] = x[0] - stripe.spread * rng.normal();
    points.push_back({box.clamp(x), std::nullopt});
  }
  return points;
}

}  // namespace

Ensemble sample_ensemble(const DistributionSpec& spec, int n,
                         std::uint64_t seed, const ForwardModel& model,
                         double noise_scale) {
  if (const auto* bins = std::get_if<BinsSpec>(&spec)) {
    int total_bins = 0;
    for (const auto& ch : bins->bins_per_channel)
      total_bins += static_cast<int>(ch.size());
    const int derived = total_bins * bins->samples_per_bin;
    if (n != 0 && n != derived)
      throw ConfigError("bins spec implies N=" + std::to_string(derived) +
                        " but N=" + std::to_string(n) + " was requested");
    n = derived;
  }
  if (n < 1) throw ConfigError("ensemble size must be at least 1");

  RngStream sampling = substream(seed, RngPurpose::kSampling);
  Ensemble ensemble;
  ensemble.points = draw_points(spec, n, model, sampling);

  RngStream noise = substream(seed, RngPurpose::kNoise);
  ensemble.noise.resize(ensemble.points.size());
  for (auto& eps : ensemble.noise) eps = noise_scale * noise.normal();
  return ensemble;
}

}  // namespace oedflow
