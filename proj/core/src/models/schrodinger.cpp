#include "oedflow/models/schrodinger.hpp"

#include <cmath>
#include <string>

#include "oedflow/errors.hpp"

namespace oedflow {

namespace {

double gauss_mixture_a(double x) {
  const double a = (x - 0.1) / 0.2;
  const double b = (x - 0.7) / 0.2;
  return std::exp(-a * a) + 3.0 * std::exp(-b * b) + 0.05;
}

double gauss_mixture_d(double x) {
  const double a = (x - 0.2) / 0.05;
  const double b = (x - 0.6) / 0.05;
  return std::exp(-a * a) + 3.0 * std::exp(-b * b) + 0.05;
}

}  // namespace

/// Thomas factorization of the symmetric tridiagonal operator
///   (u_{k-1} - 2 u_k + u_{k+1}) / dx^2 + sigma_k u_k
/// with ghost-node closure u_{-1} = -u_0, u_d = -u_{d-1} at the boundary
/// rows. Reused across every source for a fixed sigma.
struct SchrodingerModel::Factorization {
  ParamVector sigma;
  std::vector<double> pivot;
  std::vector<double> mult;
  double off = 0.0;

  Eigen::VectorXd solve(Eigen::VectorXd rhs) const {
    const int n = static_cast<int>(pivot.size());
    for (int k = 1; k < n; ++k) rhs[k] -= mult[static_cast<std::size_t>(k)] * rhs[k - 1];
    rhs[n - 1] /= pivot[static_cast<std::size_t>(n) - 1];
    for (int k = n - 2; k >= 0; --k)
      rhs[k] = (rhs[k] - off * rhs[k + 1]) / pivot[static_cast<std::size_t>(k)];
    return rhs;
  }
};

SchrodingerModel::SchrodingerModel(SchrodingerConfig config)
    : config_(std::move(config)) {
  if (config_.cells < 2)
    throw ConfigError("Schrodinger model needs at least 2 cells");
  dx_ = 1.0 / config_.cells;

  switch (config_.profile) {
    case SchrodingerConfig::Profile::GaussA:
    case SchrodingerConfig::Profile::GaussD: {
      truth_.resize(config_.cells);
      const bool is_a = config_.profile == SchrodingerConfig::Profile::GaussA;
      for (int k = 0; k < config_.cells; ++k)
        truth_[k] = is_a ? gauss_mixture_a(node(k)) : gauss_mixture_d(node(k));
      break;
    }
    case SchrodingerConfig::Profile::Custom:
      if (config_.custom_truth.size() != config_.cells)
        throw ConfigError("custom potential length must equal cell count");
      truth_ = config_.custom_truth;
      break;
  }
  factor_for(truth_);  // invertibility check at startup
}

Box SchrodingerModel::domain() const {
  Box box;
  box.lo = Eigen::VectorXd::Zero(2);
  box.hi = Eigen::VectorXd::Ones(2);
  return box;
}

std::shared_ptr<const SchrodingerModel::Factorization>
SchrodingerModel::factor_for(const ParamVector& sigma) const {
  if (sigma.size() != config_.cells)
    throw ConfigError("potential length must equal cell count");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_ && cache_->sigma == sigma) return cache_;
  }

  const int n = config_.cells;
  const double inv_dx2 = 1.0 / (dx_ * dx_);
  auto f = std::make_shared<Factorization>();
  f->sigma = sigma;
  f->off = inv_dx2;
  f->pivot.resize(static_cast<std::size_t>(n));
  f->mult.resize(static_cast<std::size_t>(n), 0.0);

  const double pivot_floor =
      1e-12 * (2.0 * inv_dx2 + sigma.cwiseAbs().maxCoeff());
  for (int k = 0; k < n; ++k) {
    const bool boundary = (k == 0 || k == n - 1);
    double diag = (boundary ? -3.0 : -2.0) * inv_dx2 + sigma[k];
    if (k > 0) {
      f->mult[static_cast<std::size_t>(k)] =
          inv_dx2 / f->pivot[static_cast<std::size_t>(k) - 1];
      diag -= f->mult[static_cast<std::size_t>(k)] * inv_dx2;
    }
    if (!(std::abs(diag) > pivot_floor))
      throw SingularOperator(
          "Schrodinger operator factorization failed (sigma near a Dirichlet "
          "eigenvalue; pivot " +
          std::to_string(diag) + " at cell " + std::to_string(k) + ")");
    f->pivot[static_cast<std::size_t>(k)] = diag;
  }

  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_ = f;
  return f;
}

Eigen::VectorXd SchrodingerModel::hat_weights(double t) const {
  const int n = config_.cells;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  const double first = node(0);
  const double last = node(n - 1);
  if (t <= first) {
    w[0] = t / first;
  } else if (t >= last) {
    w[n - 1] = (1.0 - t) / (1.0 - last);
  } else {
    int k = static_cast<int>((t - first) / dx_);
    if (k > n - 2) k = n - 2;
    const double frac = (t - node(k)) / dx_;
    w[k] = 1.0 - frac;
    w[k + 1] = frac;
  }
  return w;
}

Eigen::VectorXd SchrodingerModel::slope_weights(double t) const {
  const int n = config_.cells;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  const double first = node(0);
  const double last = node(n - 1);
  if (t <= first) {
    w[0] = 1.0 / first;
  } else if (t >= last) {
    w[n - 1] = -1.0 / (1.0 - last);
  } else {
    int k = static_cast<int>((t - first) / dx_);
    if (k > n - 2) k = n - 2;
    w[k] = -1.0 / dx_;
    w[k + 1] = 1.0 / dx_;
  }
  return w;
}

Eigen::VectorXd SchrodingerModel::delta_load(double s) const {
  return hat_weights(s) / dx_;
}

Eigen::VectorXd SchrodingerModel::solve_with_delta(const ParamVector& sigma,
                                                   double source_location) const {
  if (!(source_location > 0.0) || !(source_location < 1.0))
    throw ConfigError("delta source must lie strictly inside (0,1)");
  return factor_for(sigma)->solve(delta_load(source_location));
}

Eigen::VectorXd SchrodingerModel::apply_operator(const ParamVector& sigma,
                                                 const Eigen::VectorXd& u) const {
  const int n = config_.cells;
  const double inv_dx2 = 1.0 / (dx_ * dx_);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) {
    const bool boundary = (k == 0 || k == n - 1);
    double v = ((boundary ? -3.0 : -2.0) * inv_dx2 + sigma[k]) * u[k];
    if (k > 0) v += inv_dx2 * u[k - 1];
    if (k < n - 1) v += inv_dx2 * u[k + 1];
    out[k] = v;
  }
  return out;
}

double SchrodingerModel::evaluate(const DesignPoint& theta,
                                  const ParamVector& sigma) const {
  auto f = factor_for(sigma);
  const Eigen::VectorXd u = f->solve(delta_load(theta.coords[0]));
  return hat_weights(theta.coords[1]).dot(u);
}

Eigen::VectorXd SchrodingerModel::grad_sigma(const DesignPoint& theta,
                                             const ParamVector& sigma) const {
  auto f = factor_for(sigma);
  const Eigen::VectorXd u = f->solve(delta_load(theta.coords[0]));
  const Eigen::VectorXd v = f->solve(delta_load(theta.coords[1]));
  return -dx_ * u.cwiseProduct(v);
}

Eigen::VectorXd SchrodingerModel::grad_theta(const DesignPoint& theta,
                                             const ParamVector& sigma) const {
  auto f = factor_for(sigma);
  const Eigen::VectorXd u = f->solve(delta_load(theta.coords[0]));
  const Eigen::VectorXd v = f->solve(delta_load(theta.coords[1]));
  Eigen::VectorXd g(2);
  g[0] = slope_weights(theta.coords[0]).dot(v);
  g[1] = slope_weights(theta.coords[1]).dot(u);
  return g;
}

Eigen::MatrixXd SchrodingerModel::grad_theta_grad_sigma(
    const DesignPoint& theta, const ParamVector& sigma) const {
  auto f = factor_for(sigma);
  const Eigen::VectorXd u = f->solve(delta_load(theta.coords[0]));
  const Eigen::VectorXd v = f->solve(delta_load(theta.coords[1]));
  const Eigen::VectorXd du = f->solve(slope_weights(theta.coords[0]) / dx_);
  const Eigen::VectorXd dv = f->solve(slope_weights(theta.coords[1]) / dx_);
  Eigen::MatrixXd out(config_.cells, 2);
  out.col(0) = -dx_ * du.cwiseProduct(v);
  out.col(1) = -dx_ * u.cwiseProduct(dv);
  return out;
}

}  // namespace oedflow
