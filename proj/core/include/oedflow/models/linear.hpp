#pragma once

#include <functional>
#include <utility>

#include "oedflow/forward_model.hpp"

namespace oedflow {

/// Row map for the linear model M(theta; sigma) = row(theta) . sigma on a
/// 1-D design interval. Both the row and its theta-derivative are supplied so
/// every interface derivative is exact.
struct LinearRowSpec {
  int dim = 0;
  std::function<Eigen::VectorXd(double)> row;
  std::function<Eigen::VectorXd(double)> row_deriv;

  /// Monomial rows (1, t, t^2, ..., t^{d-1}).
  static LinearRowSpec monomial(int degree);
};

/// Linear baseline with an analytic inner solution; hess_sigma is zero.
class LinearModel final : public ForwardModel {
 public:
  LinearModel(LinearRowSpec spec, ParamVector truth, Box domain);

  /// Monomial rows on [-1, 1].
  static LinearModel monomial(int degree, ParamVector truth);

  int dim_param() const override { return spec_.dim; }
  int dim_design() const override { return 1; }
  int channel_count() const override { return 0; }
  Box domain() const override { return domain_; }
  const ParamVector& truth() const override { return truth_; }

  double evaluate(const DesignPoint& theta,
                  const ParamVector& sigma) const override;
  Eigen::VectorXd grad_sigma(const DesignPoint& theta,
                             const ParamVector& sigma) const override;
  Eigen::VectorXd grad_theta(const DesignPoint& theta,
                             const ParamVector& sigma) const override;
  Eigen::MatrixXd grad_theta_grad_sigma(const DesignPoint& theta,
                                        const ParamVector& sigma) const override;
  bool has_hess_sigma() const override { return true; }
  Eigen::MatrixXd hess_sigma(const DesignPoint& theta,
                             const ParamVector& sigma) const override;

 private:
  LinearRowSpec spec_;
  ParamVector truth_;
  Box domain_;
};

/// Closed-form inner optimum for the linear model with empirical-measure
/// averages: sigma* = (A^T A[rho])^-1 (A^T data[rho]).
ParamVector linear_analytic_sigma(const Ensemble& ensemble,
                                  const LinearModel& model);

}  // namespace oedflow
