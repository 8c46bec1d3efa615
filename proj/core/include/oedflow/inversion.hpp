#pragma once

#include <Eigen/Dense>

#include <vector>

#include "oedflow/forward_model.hpp"
#include "oedflow/types.hpp"

namespace oedflow {

/// Hessian assembly mode. Full keeps the residual-weighted curvature term;
/// GaussNewton drops it, which a model without hess_sigma forces.
enum class HessianMode { Full, GaussNewton };

struct LossReport {
  double loss = 0.0;
  double grad_norm = 0.0;
};

/// (1/N) sum of squared residuals M(theta_i; sigma) - data(theta_i).
double loss(const ParamVector& sigma, const Ensemble& ensemble,
            const ForwardModel& model);

/// (2/N) sum grad_sigma(theta_i) * residual_i.
Eigen::VectorXd loss_grad(const ParamVector& sigma, const Ensemble& ensemble,
                          const ForwardModel& model);

LossReport loss_report(const ParamVector& sigma, const Ensemble& ensemble,
                       const ForwardModel& model);

/// Full: (2/N) sum [g g^T + hess_sigma * residual]; GaussNewton keeps the
/// first sum only (exactly 2 * fisher_empirical).
Eigen::MatrixXd loss_hessian(const ParamVector& sigma, const Ensemble& ensemble,
                             const ForwardModel& model, HessianMode mode);

/// Derivative of loss_grad with respect to particle i's continuous
/// coordinates, dim_param() x dim_design():
///   (2/N) [ g (grad_theta M - grad_theta data)^T
///           + grad_theta_grad_sigma * residual ]   (second term: Full only)
Eigen::MatrixXd grad_loss_partial_theta(const ParamVector& sigma,
                                        const Ensemble& ensemble,
                                        const ForwardModel& model,
                                        int particle_index, HessianMode mode);

/// Plain gradient descent: iterations steps of sigma -= step * loss_grad.
/// Throws NonFiniteParameter (with the iteration index) on NaN/Inf.
ParamVector inner_gd(ParamVector sigma, const Ensemble& ensemble,
                     const ForwardModel& model, int iterations, double step);

/// Gradient descent until ||loss_grad|| < grad_tol or max_iterations,
/// whichever first; used to establish first-order criticality for sigma^0.
ParamVector presolve_sigma(ParamVector sigma, const Ensemble& ensemble,
                           const ForwardModel& model, int max_iterations,
                           double step, double grad_tol);

/// Implicit-function-theorem velocity of the inner optimum: solves
///   Hess_sigma Loss * x = - sum_i grad_loss_partial_theta(i) * theta_dot_i
/// via a symmetric factorization. particle_velocities are the signed flow
/// velocities theta_dot_i (post sign application and projection).
ParamVector sigma_velocity(const ParamVector& sigma, const Ensemble& ensemble,
                           const std::vector<Eigen::VectorXd>& particle_velocities,
                           const ForwardModel& model, HessianMode mode,
                           double ridge = 0.0);

}  // namespace oedflow
