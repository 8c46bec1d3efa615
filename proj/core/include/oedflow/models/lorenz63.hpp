#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <vector>

#include "oedflow/forward_model.hpp"

namespace oedflow {

struct LorenzConfig {
  // sigma = (alpha, gamma, beta): Prandtl, Rayleigh, layer geometry.
  Eigen::Vector3d sigma_true{10.0, 28.0, 8.0 / 3.0};
  Eigen::Vector3d initial_state{1.5, -1.5, 25.0};
  double window = 3.0;   // observation window [0, window]
  double step = 1e-4;    // forward-Euler grid step
};

/// Lorenz 63 forward model over the mixed design space
/// {x,y,z} x [0, window]: theta = (channel c, time t) and M(theta; sigma)
/// reads coordinate c of the trajectory at t.
///
/// The trajectory and its first-order sensitivity Jacobian are integrated
/// jointly by forward Euler and cached per sigma; queries then interpolate
/// the grid. hess_sigma integrates the second-order sensitivity system
/// lazily on top of the cached grid. Derivatives in t follow the discrete
/// trajectory: grad_theta is the state ODE right-hand side at the
/// interpolated state, while grad_theta_grad_sigma is the exact slope of the
/// piecewise-linear Jacobian interpolant (the sensitivity right-hand side at
/// the left grid node), which keeps it consistent with finite differences of
/// grad_sigma.
class LorenzModel final : public ForwardModel {
 public:
  explicit LorenzModel(LorenzConfig config = {});

  int dim_param() const override { return 3; }
  int dim_design() const override { return 1; }
  int channel_count() const override { return 3; }
  Box domain() const override;
  const ParamVector& truth() const override { return truth_; }
  const LorenzConfig& config() const { return config_; }

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

  /// Trajectory and first-order sensitivities on the simulation grid.
  struct Grid {
    Eigen::Vector3d sigma;
    std::vector<Eigen::Vector3d> state;  // grid_count() entries
    std::vector<Eigen::Matrix3d> jac;    // d(state)/d(sigma), J(0) = 0
  };

  /// Second-order sensitivities d^2(state)/d(sigma_k)d(sigma_l) as one 3x3
  /// matrix per sigma component l: kk[l](m, k) on each grid node.
  struct HessGrid {
    Eigen::Vector3d sigma;
    std::vector<std::array<Eigen::Matrix3d, 3>> kk;
  };

  std::shared_ptr<const Grid> grid_for(const ParamVector& sigma) const;

  int grid_count() const { return steps_ + 1; }

 private:
  std::shared_ptr<const HessGrid> hess_for(const ParamVector& sigma) const;
  std::shared_ptr<const Grid> simulate(const Eigen::Vector3d& sigma) const;

  LorenzConfig config_;
  ParamVector truth_;
  int steps_ = 0;

  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Grid> grid_cache_;
  mutable std::shared_ptr<const HessGrid> hess_cache_;
};

}  // namespace oedflow
