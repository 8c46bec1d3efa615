#pragma once

#include <Eigen/Dense>

#include "oedflow/forward_model.hpp"
#include "oedflow/types.hpp"

namespace oedflow {

/// Condition-number cap above which symmetric solves refuse to proceed.
inline constexpr double kConditionCap = 1e12;

/// Empirical Fisher information (1/N) sum of grad_sigma outer products,
/// accumulated with a fixed-order pairwise sum and symmetrized.
FisherMatrix fisher_empirical(const Ensemble& ensemble,
                              const ParamVector& sigma,
                              const ForwardModel& model);

/// Spectral factorization of a (ridged) Fisher matrix. One factorization per
/// (ensemble, sigma) serves every particle's velocity solve; the inverse is
/// never formed explicitly.
class FisherSolver {
 public:
  explicit FisherSolver(const FisherMatrix& fisher, double ridge = 0.0);

  double min_eigenvalue() const { return min_eig_; }
  double max_eigenvalue() const { return max_eig_; }

  /// Fisher^-1 b; throws SingularFisher when the condition cap is exceeded.
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& b) const;

  /// Fisher^-2 b.
  Eigen::VectorXd apply_inverse_squared(const Eigen::VectorXd& b) const;

 private:
  void require_invertible() const;

  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd eigvals_;
  double min_eig_ = 0.0;
  double max_eig_ = 0.0;
};

/// A: trace of the inverse Fisher matrix (requires condition number below
/// kConditionCap). D: log-determinant (requires positive definiteness).
/// `ridge` is added to the diagonal before evaluation when nonzero.
double criterion_value(CriterionKind kind, const FisherMatrix& fisher,
                       double ridge = 0.0);

/// Raw velocity field grad_theta dF/drho at theta, length dim_design():
///   A: -2 (grad_theta_grad_sigma)^T Fisher^-2 grad_sigma
///   D: +2 (grad_theta_grad_sigma)^T Fisher^-1 grad_sigma
/// The flow applies the descent/ascent sign on top of this value.
Eigen::VectorXd particle_velocity(CriterionKind kind, const DesignPoint& theta,
                                  const ParamVector& sigma,
                                  const FisherSolver& solver,
                                  const ForwardModel& model);

/// Convenience overload factorizing the Fisher matrix for a single query.
Eigen::VectorXd particle_velocity(CriterionKind kind, const DesignPoint& theta,
                                  const ParamVector& sigma,
                                  const FisherMatrix& fisher,
                                  const ForwardModel& model);

}  // namespace oedflow
