#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace oedflow {

/// Unknown parameter vector sigma in R^d.
using ParamVector = Eigen::VectorXd;

/// d x d symmetric positive semidefinite empirical Fisher information.
using FisherMatrix = Eigen::MatrixXd;

/// Axis-aligned box constraint on the continuous design coordinates.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }

  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const {
    return x.cwiseMax(lo).cwiseMin(hi);
  }

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
    return (x.array() >= lo.array() - tol).all() &&
           (x.array() <= hi.array() + tol).all();
  }
};

/// One experiment configuration theta: continuous coordinates plus an
/// optional categorical channel (e.g. which Lorenz coordinate is observed).
struct DesignPoint {
  Eigen::VectorXd coords;
  std::optional<int> channel;
};

/// N design points representing the empirical measure rho = (1/N) sum of
/// point masses, with per-point frozen additive data-noise realizations.
/// Weights are uniformly 1/N; there are no per-point weights anywhere.
struct Ensemble {
  std::vector<DesignPoint> points;
  std::vector<double> noise;

  int size() const { return static_cast<int>(points.size()); }
};

enum class CriterionKind { A, D };

}  // namespace oedflow
