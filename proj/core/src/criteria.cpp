#include "oedflow/criteria.hpp"

#include <cmath>

#include "oedflow/errors.hpp"
#include "oedflow/reduce.hpp"

namespace oedflow {

FisherMatrix fisher_empirical(const Ensemble& ensemble,
                              const ParamVector& sigma,
                              const ForwardModel& model) {
  const int n = ensemble.size();
  Eigen::MatrixXd sum = pairwise_sum(n, [&](int i) -> Eigen::MatrixXd {
    const Eigen::VectorXd g = model.grad_sigma(ensemble.points[i], sigma);
    return g * g.transpose();
  });
  FisherMatrix fisher = sum / static_cast<double>(n);
  fisher = ((fisher + fisher.transpose()) * 0.5).eval();
  return fisher;
}

FisherSolver::FisherSolver(const FisherMatrix& fisher, double ridge) {
  Eigen::MatrixXd m = fisher;
  if (ridge != 0.0)
    m.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  eigvecs_ = es.eigenvectors();
  eigvals_ = es.eigenvalues();
  min_eig_ = eigvals_.minCoeff();
  max_eig_ = eigvals_.maxCoeff();
}

void FisherSolver::require_invertible() const {
  if (!(min_eig_ > 0.0) || max_eig_ > kConditionCap * min_eig_)
    throw SingularFisher("Fisher matrix not invertible", min_eig_);
}

Eigen::VectorXd FisherSolver::apply_inverse(const Eigen::VectorXd& b) const {
  require_invertible();
  return eigvecs_ *
         (eigvals_.cwiseInverse().asDiagonal() * (eigvecs_.transpose() * b));
}

Eigen::VectorXd FisherSolver::apply_inverse_squared(
    const Eigen::VectorXd& b) const {
  require_invertible();
  return eigvecs_ * (eigvals_.array().square().inverse().matrix().asDiagonal() *
                     (eigvecs_.transpose() * b));
}

double criterion_value(CriterionKind kind, const FisherMatrix& fisher,
                       double ridge) {
  Eigen::MatrixXd m = fisher;
  if (ridge != 0.0)
    m.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double min_eig = lambda.minCoeff();
  const double max_eig = lambda.maxCoeff();

  if (kind == CriterionKind::A) {
    if (!(min_eig > 0.0) || max_eig > kConditionCap * min_eig)
      throw SingularFisher("A-criterion requires an invertible Fisher matrix",
                           min_eig);
    return lambda.cwiseInverse().sum();
  }
  if (!(min_eig > 0.0))
    throw SingularFisher(
        "D-criterion requires a positive definite Fisher matrix", min_eig);
  return lambda.array().log().sum();
}

Eigen::VectorXd particle_velocity(CriterionKind kind, const DesignPoint& theta,
                                  const ParamVector& sigma,
                                  const FisherSolver& solver,
                                  const ForwardModel& model) {
  const Eigen::VectorXd g = model.grad_sigma(theta, sigma);
  const Eigen::MatrixXd mixed = model.grad_theta_grad_sigma(theta, sigma);
  if (kind == CriterionKind::A)
    return -2.0 * mixed.transpose() * solver.apply_inverse_squared(g);
  return 2.0 * mixed.transpose() * solver.apply_inverse(g);
}

Eigen::VectorXd particle_velocity(CriterionKind kind, const DesignPoint& theta,
                                  const ParamVector& sigma,
                                  const FisherMatrix& fisher,
                                  const ForwardModel& model) {
  return particle_velocity(kind, theta, sigma, FisherSolver(fisher), model);
}

}  // namespace oedflow
