#include "oedflow/models/linear.hpp"

#include "oedflow/criteria.hpp"
#include "oedflow/errors.hpp"
#include "oedflow/reduce.hpp"

namespace oedflow {

LinearRowSpec LinearRowSpec::monomial(int degree) {
  LinearRowSpec spec;
  spec.dim = degree;
  spec.row = [degree](double t) {
    Eigen::VectorXd r(degree);
    double p = 1.0;
    for (int k = 0; k < degree; ++k) {
      r[k] = p;
      p *= t;
    }
    return r;
  };
  spec.row_deriv = [degree](double t) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(degree);
    double p = 1.0;
    for (int k = 1; k < degree; ++k) {
      r[k] = k * p;
      p *= t;
    }
    return r;
  };
  return spec;
}

LinearModel::LinearModel(LinearRowSpec spec, ParamVector truth, Box domain)
    : spec_(std::move(spec)), truth_(std::move(truth)),
      domain_(std::move(domain)) {
  if (truth_.size() != spec_.dim)
    throw ConfigError("linear model truth dimension does not match row spec");
}

LinearModel LinearModel::monomial(int degree, ParamVector truth) {
  Box box;
  box.lo = Eigen::VectorXd::Constant(1, -1.0);
  box.hi = Eigen::VectorXd::Constant(1, 1.0);
  return LinearModel(LinearRowSpec::monomial(degree), std::move(truth),
                     std::move(box));
}

double LinearModel::evaluate(const DesignPoint& theta,
                             const ParamVector& sigma) const {
  return spec_.row(theta.coords[0]).dot(sigma);
}

Eigen::VectorXd LinearModel::grad_sigma(const DesignPoint& theta,
                                        const ParamVector&) const {
  return spec_.row(theta.coords[0]);
}

Eigen::VectorXd LinearModel::grad_theta(const DesignPoint& theta,
                                        const ParamVector& sigma) const {
  Eigen::VectorXd g(1);
  g[0] = spec_.row_deriv(theta.coords[0]).dot(sigma);
  return g;
}

Eigen::MatrixXd LinearModel::grad_theta_grad_sigma(const DesignPoint& theta,
                                                   const ParamVector&) const {
  return spec_.row_deriv(theta.coords[0]);
}

Eigen::MatrixXd LinearModel::hess_sigma(const DesignPoint&,
                                        const ParamVector&) const {
  return Eigen::MatrixXd::Zero(spec_.dim, spec_.dim);
}

ParamVector linear_analytic_sigma(const Ensemble& ensemble,
                                  const LinearModel& model) {
  const int n = ensemble.size();
  const FisherMatrix normal = fisher_empirical(ensemble, model.truth(), model);
  Eigen::VectorXd rhs = pairwise_sum(n, [&](int i) -> Eigen::VectorXd {
    const DesignPoint& theta = ensemble.points[static_cast<std::size_t>(i)];
    return model.grad_sigma(theta, model.truth()) *
           data_at(model, i, ensemble, theta);
  });
  rhs /= static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double min_eig = lambda.minCoeff();
  if (!(min_eig > 0.0) || lambda.maxCoeff() > kConditionCap * min_eig)
    throw SingularFisher("empirical A^T A not invertible", min_eig);
  return es.eigenvectors() *
         (lambda.cwiseInverse().asDiagonal() * (es.eigenvectors().transpose() * rhs));
}

}  // namespace oedflow
