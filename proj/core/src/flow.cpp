#include "oedflow/flow.hpp"

#include <chrono>
#include <string>

#include "oedflow/errors.hpp"

namespace oedflow {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void validate(const FlowConfig& config) {
  if (config.outer_iterations < 0)
    throw ConfigError("flow iteration count must be non-negative");
  if (!(config.outer_step > 0.0))
    throw ConfigError("flow step must be positive");
  if (config.algorithm == FlowAlgorithm::BruteForce &&
      config.outer_iterations > 0 && config.inner_iterations < 1)
    throw ConfigError("brute-force flow requires at least one inner iteration");
}

HessianMode resolve_mode(const FlowConfig& config, const ForwardModel& model) {
  if (config.hessian_mode) return *config.hessian_mode;
  return model.has_hess_sigma() ? HessianMode::Full : HessianMode::GaussNewton;
}

[[noreturn]] void rethrow_with_iteration(const NumericError& e, int iter) {
  throw NumericError(std::string(e.what()) + " (outer iteration " +
                     std::to_string(iter) + ")");
}

}  // namespace

ParticleStep flow_step_particles(const Ensemble& ensemble,
                                 const ParamVector& sigma, CriterionKind kind,
                                 const ForwardModel& model, double dt,
                                 double ridge) {
  const FisherSolver solver(fisher_empirical(ensemble, sigma, model), ridge);
  const Box box = model.domain();
  const double sign = (kind == CriterionKind::A) ? -1.0 : 1.0;

  ParticleStep step;
  step.ensemble.noise = ensemble.noise;
  step.ensemble.points.reserve(ensemble.points.size());
  step.velocities.reserve(ensemble.points.size());
  for (const DesignPoint& point : ensemble.points) {
    const Eigen::VectorXd raw =
        particle_velocity(kind, point, sigma, solver, model);
    DesignPoint moved = point;
    Eigen::VectorXd effective = sign * raw;
    if (dt != 0.0) {
      moved.coords = box.clamp(point.coords + dt * effective);
      effective = (moved.coords - point.coords) / dt;
    }
    step.ensemble.points.push_back(std::move(moved));
    step.velocities.push_back(std::move(effective));
  }
  return step;
}

IterationRecord evaluate_metrics(int iter, const Ensemble& ensemble,
                                 const ParamVector& sigma, CriterionKind kind,
                                 const ForwardModel& model, double ridge,
                                 double wall_ms) {
  IterationRecord rec;
  rec.iter = iter;
  rec.criterion =
      criterion_value(kind, fisher_empirical(ensemble, sigma, model), ridge);
  rec.sigma_error = (sigma - model.truth()).norm();
  const LossReport report = loss_report(sigma, ensemble, model);
  rec.loss = report.loss;
  rec.grad_norm = report.grad_norm;
  rec.wall_ms = wall_ms;
  return rec;
}

FlowResult run_brute_force(const FlowConfig& config, Ensemble ensemble,
                           ParamVector sigma, const ForwardModel& model) {
  validate(config);
  FlowResult result{std::move(ensemble), std::move(sigma), {}};
  result.trace.reserve(static_cast<std::size_t>(config.outer_iterations));
  for (int t = 0; t < config.outer_iterations; ++t) {
    const auto start = Clock::now();
    try {
      ParticleStep step =
          flow_step_particles(result.ensemble, result.sigma, config.kind,
                              model, config.outer_step, config.ridge);
      result.ensemble = std::move(step.ensemble);
      result.sigma = inner_gd(result.sigma, result.ensemble, model,
                              config.inner_iterations, config.inner_step);
      result.trace.push_back(evaluate_metrics(t + 1, result.ensemble,
                                              result.sigma, config.kind, model,
                                              config.ridge, ms_since(start)));
    } catch (const NumericError& e) {
      rethrow_with_iteration(e, t + 1);
    }
  }
  return result;
}

FlowResult run_streamlined(const FlowConfig& config, Ensemble ensemble,
                           ParamVector sigma, const ForwardModel& model) {
  validate(config);
  const HessianMode mode = resolve_mode(config, model);
  FlowResult result{std::move(ensemble), std::move(sigma), {}};
  result.trace.reserve(static_cast<std::size_t>(config.outer_iterations));
  for (int t = 0; t < config.outer_iterations; ++t) {
    const auto start = Clock::now();
    try {
      ParticleStep step =
          flow_step_particles(result.ensemble, result.sigma, config.kind,
                              model, config.outer_step, config.ridge);
      result.ensemble = std::move(step.ensemble);
      result.sigma += config.outer_step *
                      sigma_velocity(result.sigma, result.ensemble,
                                     step.velocities, model, mode,
                                     config.ridge);
      if (!result.sigma.allFinite())
        throw NonFiniteParameter("implicit sigma update became non-finite");
      result.trace.push_back(evaluate_metrics(t + 1, result.ensemble,
                                              result.sigma, config.kind, model,
                                              config.ridge, ms_since(start)));
    } catch (const NumericError& e) {
      rethrow_with_iteration(e, t + 1);
    }
  }
  return result;
}

FlowResult run_benchmark(const FlowConfig& config, Ensemble ensemble,
                         const ForwardModel& model) {
  validate(config);
  FlowResult result{std::move(ensemble), model.truth(), {}};
  result.trace.reserve(static_cast<std::size_t>(config.outer_iterations));
  for (int t = 0; t < config.outer_iterations; ++t) {
    const auto start = Clock::now();
    try {
      ParticleStep step =
          flow_step_particles(result.ensemble, result.sigma, config.kind,
                              model, config.outer_step, config.ridge);
      result.ensemble = std::move(step.ensemble);
      result.trace.push_back(evaluate_metrics(t + 1, result.ensemble,
                                              result.sigma, config.kind, model,
                                              config.ridge, ms_since(start)));
    } catch (const NumericError& e) {
      rethrow_with_iteration(e, t + 1);
    }
  }
  return result;
}

}  // namespace oedflow
