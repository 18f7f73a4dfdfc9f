#pragma once

#include <string>
#include <string_view>

#include "ratefp/errors.hpp"

namespace ratefp {

// Scalar parameters of the two-population rate model.  w_hat is signed: the
// shipped presets use a negative value (cross-population inhibition), which
// is what produces the bistable decision regime.
struct ModelParams {
  double nu_c = 20.0;     // saturation rate of the response sigmoid (Hz)
  double alpha = 4.0;     // sigmoid steepness
  double w = 0.45;        // self-connectivity weight
  double w_hat = -1.23;   // cross-connectivity weight (negative = inhibition)
  double lambda1 = 15.75; // stimulus applied to population 1 (Hz)
  double lambda2 = 15.75; // stimulus applied to population 2 (Hz)
  double beta = 0.3;      // noise standard deviation
  double nu_max = 20.0;   // domain upper bound per axis (Hz)

  double bias() const { return lambda1 - lambda2; }
  bool unbiased() const { return lambda1 == lambda2; }

  void validate() const {
    if (!(nu_c > 0.0)) throw ValidationError("nu_c", "must be > 0");
    if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
    if (!(beta >= 0.0)) throw ValidationError("beta", "must be >= 0");
    if (!(nu_max > 0.0)) throw ValidationError("nu_max", "must be > 0");
  }
};

// Named parameter sets.  "paper-s2" is the bistable two-population working
// point: nu_c=20, alpha=4, w=0.45, w_hat=-1.23, beta=0.3, base stimulus
// 15.75.  The pitchfork for these weights sits at lambda ~= 15.43; below it
// the system is monostable (spontaneous state only).  Bias convention:
// lambda1 = lambda2 + delta_lambda.
inline ModelParams preset_params(std::string_view name, double delta_lambda = 0.0) {
  ModelParams p;
  if (name == "paper-s2") {
    p.lambda1 = 15.75 + delta_lambda;
    p.lambda2 = 15.75;
    return p;
  }
  throw ValidationError("preset", "unknown preset '" + std::string(name) + "'");
}

}  // namespace ratefp
