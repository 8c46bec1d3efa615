#include "oedflow/models/lorenz63.hpp"

#include <cmath>
#include <string>

#include "oedflow/errors.hpp"

namespace oedflow {

namespace {

Eigen::Vector3d rhs(const Eigen::Vector3d& u, const Eigen::Vector3d& s) {
  const double x = u[0], y = u[1], z = u[2];
  const double alpha = s[0], gamma = s[1], beta = s[2];
  return {alpha * (y - x), x * (gamma - z) - y, x * y - beta * z};
}

Eigen::Matrix3d state_jacobian(const Eigen::Vector3d& u,
                               const Eigen::Vector3d& s) {
  const double x = u[0], y = u[1], z = u[2];
  const double alpha = s[0], gamma = s[1], beta = s[2];
  Eigen::Matrix3d a;
  a << -alpha, alpha, 0.0,
       gamma - z, -1.0, -x,
       y, x, -beta;
  return a;
}

Eigen::Matrix3d sigma_forcing(const Eigen::Vector3d& u) {
  const double x = u[0], y = u[1], z = u[2];
  Eigen::Matrix3d b = Eigen::Matrix3d::Zero();
  b(0, 0) = y - x;
  b(1, 1) = x;
  b(2, 2) = -z;
  return b;
}

struct Interp {
  int node;      // left grid node of the containing segment
  double frac;   // position within the segment, in [0, 1]
};

Interp locate(double t, double h, int steps) {
  int node = static_cast<int>(t / h);
  if (node >= steps) node = steps - 1;
  if (node < 0) node = 0;
  return {node, (t - node * h) / h};
}

int required_channel(const DesignPoint& theta) {
  if (!theta.channel || *theta.channel < 0 || *theta.channel > 2)
    throw ConfigError("Lorenz design point requires channel in {0,1,2}");
  return *theta.channel;
}

}  // namespace

LorenzModel::LorenzModel(LorenzConfig config) : config_(config) {
  if (!(config_.step > 0.0) || !(config_.window > 0.0))
    throw ConfigError("Lorenz window and step must be positive");
  steps_ = static_cast<int>(std::llround(config_.window / config_.step));
  truth_ = config_.sigma_true;
}

Box LorenzModel::domain() const {
  Box box;
  box.lo = Eigen::VectorXd::Constant(1, 0.0);
  box.hi = Eigen::VectorXd::Constant(1, config_.window);
  return box;
}

std::shared_ptr<const LorenzModel::Grid> LorenzModel::simulate(
    const Eigen::Vector3d& sigma) const {
  if (!sigma.allFinite())
    throw NonFiniteState("Lorenz simulation requested at non-finite sigma");
  auto grid = std::make_shared<Grid>();
  grid->sigma = sigma;
  grid->state.resize(static_cast<std::size_t>(steps_) + 1);
  grid->jac.resize(static_cast<std::size_t>(steps_) + 1);
  grid->state[0] = config_.initial_state;
  grid->jac[0].setZero();
  const double h = config_.step;
  for (int k = 0; k < steps_; ++k) {
    const Eigen::Vector3d& u = grid->state[static_cast<std::size_t>(k)];
    const Eigen::Matrix3d& j = grid->jac[static_cast<std::size_t>(k)];
    grid->state[static_cast<std::size_t>(k) + 1] = u + h * rhs(u, sigma);
    grid->jac[static_cast<std::size_t>(k) + 1] =
        j + h * (state_jacobian(u, sigma) * j + sigma_forcing(u));
    if (!grid->state[static_cast<std::size_t>(k) + 1].allFinite())
      throw NonFiniteState("Lorenz state blew up at t = " +
                           std::to_string((k + 1) * h));
  }
  return grid;
}

std::shared_ptr<const LorenzModel::Grid> LorenzModel::grid_for(
    const ParamVector& sigma) const {
  const Eigen::Vector3d s = sigma;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!grid_cache_ || grid_cache_->sigma != s) {
    grid_cache_ = simulate(s);
    hess_cache_.reset();
  }
  return grid_cache_;
}

std::shared_ptr<const LorenzModel::HessGrid> LorenzModel::hess_for(
    const ParamVector& sigma) const {
  auto grid = grid_for(sigma);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (hess_cache_ && hess_cache_->sigma == grid->sigma) return hess_cache_;

  // Derivatives of the state Jacobian A and forcing B in sigma and in the
  // state; constant sparse patterns of the Lorenz right-hand side.
  auto hess = std::make_shared<HessGrid>();
  hess->sigma = grid->sigma;
  hess->kk.resize(grid->state.size());
  for (auto& kk : hess->kk[0]) kk.setZero();

  Eigen::Matrix3d da_dsigma[3];
  for (auto& m : da_dsigma) m.setZero();
  da_dsigma[0](0, 0) = -1.0;
  da_dsigma[0](0, 1) = 1.0;
  da_dsigma[1](1, 0) = 1.0;
  da_dsigma[2](2, 2) = -1.0;

  Eigen::Matrix3d da_dstate[3];
  for (auto& m : da_dstate) m.setZero();
  da_dstate[0](1, 2) = -1.0;  // d/dx
  da_dstate[0](2, 1) = 1.0;
  da_dstate[1](2, 0) = 1.0;   // d/dy
  da_dstate[2](1, 0) = -1.0;  // d/dz

  Eigen::Matrix3d db_dstate[3];
  for (auto& m : db_dstate) m.setZero();
  db_dstate[0](0, 0) = -1.0;  // d/dx
  db_dstate[0](1, 1) = 1.0;
  db_dstate[1](0, 0) = 1.0;   // d/dy
  db_dstate[2](2, 2) = -1.0;  // d/dz

  const double h = config_.step;
  const int nodes = static_cast<int>(grid->state.size());
  for (int k = 0; k + 1 < nodes; ++k) {
    const Eigen::Vector3d& u = grid->state[static_cast<std::size_t>(k)];
    const Eigen::Matrix3d& j = grid->jac[static_cast<std::size_t>(k)];
    const Eigen::Matrix3d a = state_jacobian(u, grid->sigma);
    for (int l = 0; l < 3; ++l) {
      Eigen::Matrix3d coeff = da_dsigma[l];
      Eigen::Matrix3d force = Eigen::Matrix3d::Zero();
      for (int m = 0; m < 3; ++m) {
        coeff += da_dstate[m] * j(m, l);
        force += db_dstate[m] * j(m, l);
      }
      const Eigen::Matrix3d& kk = hess->kk[static_cast<std::size_t>(k)][
          static_cast<std::size_t>(l)];
      hess->kk[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(l)] =
          kk + h * (a * kk + coeff * j + force);
    }
  }
  hess_cache_ = hess;
  return hess;
}

double LorenzModel::evaluate(const DesignPoint& theta,
                             const ParamVector& sigma) const {
  const int c = required_channel(theta);
  auto grid = grid_for(sigma);
  const Interp at = locate(theta.coords[0], config_.step, steps_);
  const std::size_t k = static_cast<std::size_t>(at.node);
  return (1.0 - at.frac) * grid->state[k][c] + at.frac * grid->state[k + 1][c];
}

Eigen::VectorXd LorenzModel::grad_sigma(const DesignPoint& theta,
                                        const ParamVector& sigma) const {
  const int c = required_channel(theta);
  auto grid = grid_for(sigma);
  const Interp at = locate(theta.coords[0], config_.step, steps_);
  const std::size_t k = static_cast<std::size_t>(at.node);
  const Eigen::Matrix3d j =
      (1.0 - at.frac) * grid->jac[k] + at.frac * grid->jac[k + 1];
  return j.row(c).transpose();
}

Eigen::VectorXd LorenzModel::grad_theta(const DesignPoint& theta,
                                        const ParamVector& sigma) const {
  const int c = required_channel(theta);
  auto grid = grid_for(sigma);
  const Interp at = locate(theta.coords[0], config_.step, steps_);
  const std::size_t k = static_cast<std::size_t>(at.node);
  const Eigen::Vector3d u =
      (1.0 - at.frac) * grid->state[k] + at.frac * grid->state[k + 1];
  Eigen::VectorXd g(1);
  g[0] = rhs(u, grid->sigma)[c];
  return g;
}

Eigen::MatrixXd LorenzModel::grad_theta_grad_sigma(
    const DesignPoint& theta, const ParamVector& sigma) const {
  const int c = required_channel(theta);
  auto grid = grid_for(sigma);
  const Interp at = locate(theta.coords[0], config_.step, steps_);
  const std::size_t k = static_cast<std::size_t>(at.node);
  // Exact slope of the piecewise-linear Jacobian interpolant.
  const Eigen::Matrix3d slope = (grid->jac[k + 1] - grid->jac[k]) / config_.step;
  return slope.row(c).transpose();
}

Eigen::MatrixXd LorenzModel::hess_sigma(const DesignPoint& theta,
                                        const ParamVector& sigma) const {
  const int c = required_channel(theta);
  auto hess = hess_for(sigma);
  const Interp at = locate(theta.coords[0], config_.step, steps_);
  const std::size_t k = static_cast<std::size_t>(at.node);
  Eigen::Matrix3d result;
  for (int l = 0; l < 3; ++l) {
    const auto& kk0 = hess->kk[k][static_cast<std::size_t>(l)];
    const auto& kk1 = hess->kk[k + 1][static_cast<std::size_t>(l)];
    for (int m = 0; m < 3; ++m)
      result(m, l) = (1.0 - at.frac) * kk0(c, m) + at.frac * kk1(c, m);
  }
  return ((result + result.transpose()) * 0.5).eval();
}

}  // namespace oedflow
