#pragma once

#include "ratefp/errors.hpp"
#include "ratefp/fp1d.hpp"

namespace ratefp {

// Built-in reduced-drift family for the three-well experiments:
//
//   g(y) = -y^5 + 2 y^3 - kappa y + bias_gain * delta_lambda
//   kappa = kappa_scale * (w_plus_critical - w_plus)
//
// kappa > 0: three wells (middle at y ~ 0, outer near +-sqrt(1+sqrt(1-kappa/... )),
// kappa = 0: the middle well is flat (bifurcation point),
// kappa < 0: the middle well is replaced by a barrier, two wells remain.
// The default scale maps w_plus in {2.5685, 2.5695, 2.5705} onto
// kappa in {+0.5, 0, -0.5}, a sub-critical three-to-two-well sequence.
struct ThreeWellParams {
  double w_plus = 2.5685;
  double w_plus_critical = 2.5695;
  double kappa_scale = 500.0;
  double bias_gain = 1.0;
  double y_max = 2.0;
  int n_nodes = 2001;

  void validate() const {
    if (!(w_plus > 0.0)) throw ValidationError("w_plus", "must be > 0");
    if (!(y_max > 0.0)) throw ValidationError("three_well.y_max", "must be > 0");
    if (n_nodes < 3) throw ValidationError("three_well.n_nodes", "need at least 3 nodes");
  }

  double kappa() const { return kappa_scale * (w_plus_critical - w_plus); }
};

ReducedModel three_well_model(const ThreeWellParams& p, double delta_lambda);

}  // namespace ratefp
