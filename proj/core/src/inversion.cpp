#include "oedflow/inversion.hpp"

#include <cmath>
#include <string>

#include "oedflow/criteria.hpp"
#include "oedflow/errors.hpp"
#include "oedflow/reduce.hpp"

namespace oedflow {

namespace {

double residual_at(const ParamVector& sigma, const Ensemble& ensemble,
                   const ForwardModel& model, int i) {
  const DesignPoint& theta = ensemble.points[static_cast<std::size_t>(i)];
  return model.evaluate(theta, sigma) - data_at(model, i, ensemble, theta);
}

}  // namespace

double loss(const ParamVector& sigma, const Ensemble& ensemble,
            const ForwardModel& model) {
  const int n = ensemble.size();
  const double sum = pairwise_sum(n, [&](int i) {
    const double r = residual_at(sigma, ensemble, model, i);
    return r * r;
  });
  return sum / static_cast<double>(n);
}

Eigen::VectorXd loss_grad(const ParamVector& sigma, const Ensemble& ensemble,
                          const ForwardModel& model) {
  const int n = ensemble.size();
  Eigen::VectorXd sum = pairwise_sum(n, [&](int i) -> Eigen::VectorXd {
    const DesignPoint& theta = ensemble.points[static_cast<std::size_t>(i)];
    return model.grad_sigma(theta, sigma) *
           residual_at(sigma, ensemble, model, i);
  });
  return sum * (2.0 / static_cast<double>(n));
}

LossReport loss_report(const ParamVector& sigma, const Ensemble& ensemble,
                       const ForwardModel& model) {
  return {loss(sigma, ensemble, model),
          loss_grad(sigma, ensemble, model).norm()};
}

Eigen::MatrixXd loss_hessian(const ParamVector& sigma, const Ensemble& ensemble,
                             const ForwardModel& model, HessianMode mode) {
  if (mode == HessianMode::GaussNewton)
    return 2.0 * fisher_empirical(ensemble, sigma, model);
  if (!model.has_hess_sigma())
    throw HessUnavailable(
        "full Hessian requested on a model without hess_sigma");
  const int n = ensemble.size();
  Eigen::MatrixXd sum = pairwise_sum(n, [&](int i) -> Eigen::MatrixXd {
    const DesignPoint& theta = ensemble.points[static_cast<std::size_t>(i)];
    const Eigen::VectorXd g = model.grad_sigma(theta, sigma);
    return g * g.transpose() + model.hess_sigma(theta, sigma) *
                                   residual_at(sigma, ensemble, model, i);
  });
  Eigen::MatrixXd hess = sum * (2.0 / static_cast<double>(n));
  return ((hess + hess.transpose()) * 0.5).eval();
}

Eigen::MatrixXd grad_loss_partial_theta(const ParamVector& sigma,
                                        const Ensemble& ensemble,
                                        const ForwardModel& model,
                                        int particle_index, HessianMode mode) {
  const DesignPoint& theta =
      ensemble.points[static_cast<std::size_t>(particle_index)];
  const double scale = 2.0 / static_cast<double>(ensemble.size());
  const Eigen::VectorXd g = model.grad_sigma(theta, sigma);
  const Eigen::VectorXd dtheta_mismatch =
      model.grad_theta(theta, sigma) -
      grad_theta_data(model, particle_index, ensemble, theta);
  Eigen::MatrixXd result = g * dtheta_mismatch.transpose();
  if (mode == HessianMode::Full) {
    if (!model.has_hess_sigma())
      throw HessUnavailable(
          "full-mode grad_loss_partial_theta on a model without hess_sigma");
    result += model.grad_theta_grad_sigma(theta, sigma) *
              residual_at(sigma, ensemble, model, particle_index);
  }
  return scale * result;
}

ParamVector inner_gd(ParamVector sigma, const Ensemble& ensemble,
                     const ForwardModel& model, int iterations, double step) {
  for (int it = 0; it < iterations; ++it) {
    sigma -= step * loss_grad(sigma, ensemble, model);
    if (!sigma.allFinite())
      throw NonFiniteParameter("inner gradient descent produced a non-finite "
                               "parameter at iteration " +
                               std::to_string(it + 1));
  }
  return sigma;
}

ParamVector presolve_sigma(ParamVector sigma, const Ensemble& ensemble,
                           const ForwardModel& model, int max_iterations,
                           double step, double grad_tol) {
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd g = loss_grad(sigma, ensemble, model);
    if (g.norm() < grad_tol) break;
    sigma -= step * g;
    if (!sigma.allFinite())
      throw NonFiniteParameter(
          "presolve produced a non-finite parameter at iteration " +
          std::to_string(it + 1));
  }
  return sigma;
}

ParamVector sigma_velocity(const ParamVector& sigma, const Ensemble& ensemble,
                           const std::vector<Eigen::VectorXd>& particle_velocities,
                           const ForwardModel& model, HessianMode mode,
                           double ridge) {
  const int n = ensemble.size();
  Eigen::VectorXd rhs = pairwise_sum(n, [&](int i) -> Eigen::VectorXd {
    return grad_loss_partial_theta(sigma, ensemble, model, i, mode) *
           particle_velocities[static_cast<std::size_t>(i)];
  });

  Eigen::MatrixXd hess = loss_hessian(sigma, ensemble, model, mode);
  if (ridge != 0.0)
    hess.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double min_abs = lambda.cwiseAbs().minCoeff();
  const double max_abs = lambda.cwiseAbs().maxCoeff();
  if (!(min_abs > 0.0) || max_abs > kConditionCap * min_abs)
    throw SingularHessian("loss Hessian not invertible (|eigenvalue| range " +
                          std::to_string(min_abs) + " to " +
                          std::to_string(max_abs) + ")");
  return es.eigenvectors() *
         (lambda.cwiseInverse().asDiagonal() *
          (es.eigenvectors().transpose() * (-rhs)));
}

}  // namespace oedflow
