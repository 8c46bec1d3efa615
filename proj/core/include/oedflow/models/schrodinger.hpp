#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "oedflow/forward_model.hpp"

namespace oedflow {

struct SchrodingerConfig {
  enum class Profile { GaussA, GaussD, Custom };

  int cells = 100;  // d: equi-spaced cells on [0,1], one basis function each
  Profile profile = Profile::GaussA;
  Eigen::VectorXd custom_truth;  // used when profile == Custom
};

/// Steady-state Schrodinger boundary-value model on [0,1]:
///   u'' + sigma u = delta_{theta1},  u(0) = u(1) = 0,
/// observed at theta2, with theta = (theta1, theta2) in [0,1]^2. sigma is a
/// piecewise-constant potential over `cells` equal cells; derivative queries
/// come from one forward and one adjoint solve against a tridiagonal
/// factorization cached per sigma.
///
/// Discretization: cell-centered nodes x_k = (k + 1/2) dx with ghost-node
/// Dirichlet closure. Delta sources get unit-mass hat allocation between the
/// two neighboring nodes and observations use the matching piecewise-linear
/// interpolation, which makes evaluate exactly symmetric in (theta1, theta2).
/// Derivatives in theta are the exact slopes of that interpolant (computed
/// with extra solves against the same factorization), so they match finite
/// differences of evaluate at any sub-cell step. hess_sigma is unavailable,
/// forcing Gauss-Newton mode.
class SchrodingerModel final : public ForwardModel {
 public:
  explicit SchrodingerModel(SchrodingerConfig config = {});

  int dim_param() const override { return config_.cells; }
  int dim_design() const override { return 2; }
  int channel_count() const override { return 0; }
  Box domain() const override;
  const ParamVector& truth() const override { return truth_; }
  const SchrodingerConfig& config() const { return config_; }

  double cell_width() const { return dx_; }
  double node(int k) const { return (k + 0.5) * dx_; }

  double evaluate(const DesignPoint& theta,
                  const ParamVector& sigma) const override;
  Eigen::VectorXd grad_sigma(const DesignPoint& theta,
                             const ParamVector& sigma) const override;
  Eigen::VectorXd grad_theta(const DesignPoint& theta,
                             const ParamVector& sigma) const override;
  Eigen::MatrixXd grad_theta_grad_sigma(const DesignPoint& theta,
                                        const ParamVector& sigma) const override;

  /// Grid solution of u'' + sigma u = delta_s with zero Dirichlet data.
  Eigen::VectorXd solve_with_delta(const ParamVector& sigma,
                                   double source_location) const;

  /// Discrete operator applied to a grid function (for residual checks).
  Eigen::VectorXd apply_operator(const ParamVector& sigma,
                                 const Eigen::VectorXd& u) const;

  /// The discretized unit-mass delta load at s.
  Eigen::VectorXd delta_load(double s) const;

 private:
  struct Factorization;

  std::shared_ptr<const Factorization> factor_for(const ParamVector& sigma) const;
  Eigen::VectorXd hat_weights(double t) const;
  Eigen::VectorXd slope_weights(double t) const;

  SchrodingerConfig config_;
  ParamVector truth_;
  double dx_ = 0.0;

  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Factorization> cache_;
};

}  // namespace oedflow
