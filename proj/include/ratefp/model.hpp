#pragma once

#include <vector>

#include "ratefp/params.hpp"
#include "ratefp/types.hpp"

namespace ratefp {

// Sigmoid response to the mean excitation z, saturating at nu_c.  The
// exponent is clamped to [-500, 500]; the function stays monotone and total.
double response_phi(double z, const ModelParams& p);

// d(phi)/dz = (alpha/nu_c) phi (1 - phi/nu_c)
double response_phi_prime(double z, const ModelParams& p);

// Planar autonomous drift field with an analytic Jacobian.
class VectorField2 {
 public:
  virtual ~VectorField2() = default;
  virtual Point2 drift(Point2 p) const = 0;
  virtual Mat2 jacobian(Point2 p) const = 0;
};

// The two-population rate dynamics:
//   psi1 = -nu1 + phi(lambda1 + w nu1 + w_hat nu2)
//   psi2 = -nu2 + phi(lambda2 + w_hat nu1 + w nu2)
class RateField : public VectorField2 {
 public:
  explicit RateField(const ModelParams& p) : p_(p) { p.validate(); }

  Point2 drift(Point2 p) const override;
  Mat2 jacobian(Point2 p) const override;
  const ModelParams& params() const { return p_; }

 private:
  ModelParams p_;
};

enum class EqKind { stable, saddle, unstable };

struct Equilibrium {
  Point2 location;
  double eig1 = 0.0, eig2 = 0.0;  // real parts when complex_pair
  bool complex_pair = false;
  EqKind kind = EqKind::stable;
  double residual = 0.0;  // |F| at location
};

struct EquilibriumSearch {
  int grid_n = 128;          // sign-change scan resolution
  double newton_tol = 1e-12; // stop when |F| <= this
  double residual_tol = 1e-10;
  double dedup_tol = 1e-6;
  int max_newton_iters = 80;
};

// Classify a root of F by the eigenvalues of the Jacobian there.
Equilibrium classify_equilibrium(const VectorField2& field, Point2 location);

// Scan [0, nu_max]^2 for cells where both drift components change sign,
// refine each seed by damped Newton, deduplicate and classify.  Sorted by
// nu1 then nu2.  Throws NoEquilibriumFound when nothing converges.
std::vector<Equilibrium> find_equilibria(const VectorField2& field, double nu_max,
                                         const EquilibriumSearch& opts = {});

inline std::vector<Equilibrium> find_equilibria(const ModelParams& p, int grid_n = 128) {
  EquilibriumSearch opts;
  opts.grid_n = grid_n;
  return find_equilibria(RateField(p), p.nu_max, opts);
}

// The saddle closest to the diagonal, or nullptr.
const Equilibrium* central_saddle(const std::vector<Equilibrium>& eqs);

}  // namespace ratefp
