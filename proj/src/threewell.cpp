#include "ratefp/threewell.hpp"

namespace ratefp {

ReducedModel three_well_model(const ThreeWellParams& p, double delta_lambda) {
  p.validate();
  const double kappa = p.kappa();
  const double b = p.bias_gain * delta_lambda;
  return tabulate_reduced_model(
      [kappa, b](double y) {
        const double y2 = y * y;
        return -y2 * y2 * y + 2.0 * y2 * y - kappa * y + b;
      },
      p.y_max, p.n_nodes);
}

}  // namespace ratefp
