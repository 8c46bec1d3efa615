#pragma once

#include <optional>
#include <vector>

#include "oedflow/criteria.hpp"
#include "oedflow/forward_model.hpp"
#include "oedflow/inversion.hpp"
#include "oedflow/types.hpp"

namespace oedflow {

enum class FlowAlgorithm { BruteForce, Streamlined };

struct FlowConfig {
  CriterionKind kind = CriterionKind::D;
  FlowAlgorithm algorithm = FlowAlgorithm::BruteForce;
  int outer_iterations = 1;    // T
  double outer_step = 1e-5;    // time step of the particle flow
  int inner_iterations = 0;    // T' (brute-force only)
  double inner_step = 0.0;     // inner gradient-descent step (brute-force only)
  double ridge = 0.0;          // added to symmetric solves when nonzero
  // Defaults to Full when the model provides hess_sigma, GaussNewton else.
  std::optional<HessianMode> hessian_mode;
};

/// Metrics recorded after both sub-steps of an outer iteration.
struct IterationRecord {
  int iter = 0;
  double criterion = 0.0;
  double sigma_error = 0.0;  // ||sigma - sigma_true||_2
  double loss = 0.0;
  double grad_norm = 0.0;
  double wall_ms = 0.0;
};

struct FlowResult {
  Ensemble ensemble;
  ParamVector sigma;
  std::vector<IterationRecord> trace;
};

/// One forward-Euler transport step plus box projection. Velocities returned
/// are the signed, effective theta_dot (post projection: displacement / dt),
/// which is what the implicit sigma update consumes.
struct ParticleStep {
  Ensemble ensemble;
  std::vector<Eigen::VectorXd> velocities;
};

ParticleStep flow_step_particles(const Ensemble& ensemble,
                                 const ParamVector& sigma, CriterionKind kind,
                                 const ForwardModel& model, double dt,
                                 double ridge = 0.0);

/// Metrics snapshot at a given state; `iter` and `wall_ms` are recorded
/// verbatim. Used by the drivers and for the pre-flow row of a run trace.
IterationRecord evaluate_metrics(int iter, const Ensemble& ensemble,
                                 const ParamVector& sigma, CriterionKind kind,
                                 const ForwardModel& model, double ridge = 0.0,
                                 double wall_ms = 0.0);

/// Two-layer algorithm: per outer iteration, transport the particles at
/// (rho^t, sigma^t), then warm-start the inner gradient descent for
/// inner_iterations steps. sigma0 is expected to be pre-optimized for
/// ensemble0 (harness responsibility).
FlowResult run_brute_force(const FlowConfig& config, Ensemble ensemble,
                           ParamVector sigma, const ForwardModel& model);

/// Streamlined algorithm: per outer iteration, transport the particles and
/// apply the single implicit-function-theorem update of sigma with the
/// just-computed particle velocities. sigma0 must satisfy first-order
/// criticality for ensemble0.
FlowResult run_streamlined(const FlowConfig& config, Ensemble ensemble,
                           ParamVector sigma, const ForwardModel& model);

/// Benchmark mode: sigma pinned to the ground truth, inner layer omitted;
/// only particle transport runs.
FlowResult run_benchmark(const FlowConfig& config, Ensemble ensemble,
                         const ForwardModel& model);

}  // namespace oedflow
