#pragma once

#include <Eigen/Dense>

#include "oedflow/errors.hpp"
#include "oedflow/types.hpp"

namespace oedflow {

/// Parameter-to-Output map contract. A model supplies the observation
/// M(theta; sigma) and its derivatives over a mixed design space: a box of
/// continuous coordinates plus an optional categorical channel.
///
/// All derivative queries must agree with central finite differences of
/// evaluate at the tolerances asserted by the derivative-oracle test suite.
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;

  virtual int dim_param() const = 0;

  /// Number of continuous design coordinates.
  virtual int dim_design() const = 0;

  /// Number of categorical channels; 0 means design points carry no channel.
  virtual int channel_count() const = 0;

  virtual Box domain() const = 0;

  /// Ground-truth parameter used to synthesize data.
  virtual const ParamVector& truth() const = 0;

  virtual double evaluate(const DesignPoint& theta,
                          const ParamVector& sigma) const = 0;

  /// Gradient in sigma, length dim_param().
  virtual Eigen::VectorXd grad_sigma(const DesignPoint& theta,
                                     const ParamVector& sigma) const = 0;

  /// Gradient in the continuous design coordinates, length dim_design().
  virtual Eigen::VectorXd grad_theta(const DesignPoint& theta,
                                     const ParamVector& sigma) const = 0;

  /// Mixed derivative, dim_param() x dim_design(); rows index sigma,
  /// columns index theta.
  virtual Eigen::MatrixXd grad_theta_grad_sigma(
      const DesignPoint& theta, const ParamVector& sigma) const = 0;

  virtual bool has_hess_sigma() const { return false; }

  /// Second derivative in sigma, dim_param() x dim_param(). Models without
  /// it throw HessUnavailable, which forces the Gauss-Newton approximation.
  virtual Eigen::MatrixXd hess_sigma(const DesignPoint& theta,
                                     const ParamVector& sigma) const {
    (void)theta;
    (void)sigma;
    throw HessUnavailable("model does not provide hess_sigma");
  }
};

/// Measurement at the i-th particle: M(theta; sigma_true) plus the frozen
/// noise realization drawn at ensemble creation. The noise is attached to
/// the particle index, not the location, so data moves smoothly as the
/// particle moves and its theta-gradient is well defined.
inline double data_at(const ForwardModel& model, int point_index,
                      const Ensemble& ensemble, const DesignPoint& theta) {
  return model.evaluate(theta, model.truth()) +
         ensemble.noise[static_cast<std::size_t>(point_index)];
}

/// Theta-gradient of data_at; the frozen noise is constant in theta.
inline Eigen::VectorXd grad_theta_data(const ForwardModel& model,
                                       int point_index,
                                       const Ensemble& ensemble,
                                       const DesignPoint& theta) {
  (void)point_index;
  (void)ensemble;
  return model.grad_theta(theta, model.truth());
}

}  // namespace oedflow
