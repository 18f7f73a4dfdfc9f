#include "ratefp/model.hpp"

#include <algorithm>
#include <cmath>

#include "ratefp/errors.hpp"

namespace ratefp {

double response_phi(double z, const ModelParams& p) {
  const double e = std::clamp(-p.alpha * (z / p.nu_c - 1.0), -500.0, 500.0);
  return p.nu_c / (1.0 + std::exp(e));
}

double response_phi_prime(double z, const ModelParams& p) {
  const double f = response_phi(z, p);
  return (p.alpha / p.nu_c) * f * (1.0 - f / p.nu_c);
}

Point2 RateField::drift(Point2 q) const {
  const double z1 = p_.lambda1 + p_.w * q.nu1 + p_.w_hat * q.nu2;
  const double z2 = p_.lambda2 + p_.w_hat * q.nu1 + p_.w * q.nu2;
  return {-q.nu1 + response_phi(z1, p_), -q.nu2 + response_phi(z2, p_)};
}

Mat2 RateField::jacobian(Point2 q) const {
  const double z1 = p_.lambda1 + p_.w * q.nu1 + p_.w_hat * q.nu2;
  const double z2 = p_.lambda2 + p_.w_hat * q.nu1 + p_.w * q.nu2;
  const double d1 = response_phi_prime(z1, p_);
  const double d2 = response_phi_prime(z2, p_);
  return {-1.0 + p_.w * d1, p_.w_hat * d1,
          p_.w_hat * d2, -1.0 + p_.w * d2};
}

Equilibrium classify_equilibrium(const VectorField2& field, Point2 location) {
  Equilibrium e;
  e.location = location;
  e.residual = norm(field.drift(location));
  const EigenReal2 eg = eigen2(field.jacobian(location));
  e.eig1 = eg.lambda1;
  e.eig2 = eg.lambda2;
  e.complex_pair = eg.complex_pair;
  const double r1 = eg.lambda1, r2 = eg.lambda2;
  if (r1 < 0.0 && r2 < 0.0)
    e.kind = EqKind::stable;
  else if (r1 > 0.0 && r2 > 0.0)
    e.kind = EqKind::unstable;
  else
    e.kind = EqKind::saddle;
  return e;
}

namespace {

// Damped Newton on F = 0; returns true when |F| <= tol.
bool newton_refine(const VectorField2& field, Point2& x, double tol, int max_iters) {
  Point2 f = field.drift(x);
  double r = norm(f);
  for (int it = 0; it < max_iters; ++it) {
    if (r <= tol) return true;
    const Mat2 j = field.jacobian(x);
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) return false;
    const Point2 step = j.inverse() * Point2{-f.nu1, -f.nu2};
    double damp = 1.0;
    for (int k = 0; k < 40; ++k) {
      const Point2 trial = x + damp * step;
      const Point2 ft = field.drift(trial);
      const double rt = norm(ft);
      if (rt < r) {
        x = trial;
        f = ft;
        r = rt;
        break;
      }
      damp *= 0.5;
      if (k == 39) return false;
    }
  }
  return norm(field.drift(x)) <= tol;
}

}  // namespace

std::vector<Equilibrium> find_equilibria(const VectorField2& field, double nu_max,
                                         const EquilibriumSearch& opts) {
  const int n = opts.grid_n;
  const double h = nu_max / n;
  // drift at the (n+1)^2 cell corners
  std::vector<double> f1((n + 1) * (n + 1)), f2((n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Point2 f = field.drift({i * h, j * h});
      f1[i * (n + 1) + j] = f.nu1;
      f2[i * (n + 1) + j] = f.nu2;
    }
  auto sign_change = [&](const std::vector<double>& f, int i, int j) {
    const double a = f[i * (n + 1) + j], b = f[(i + 1) * (n + 1) + j];
    const double c = f[i * (n + 1) + j + 1], d = f[(i + 1) * (n + 1) + j + 1];
    const double lo = std::min(std::min(a, b), std::min(c, d));
    const double hi = std::max(std::max(a, b), std::max(c, d));
    return lo <= 0.0 && hi >= 0.0;
  };

  std::vector<Point2> roots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!sign_change(f1, i, j) || !sign_change(f2, i, j)) continue;
      Point2 x{(i + 0.5) * h, (j + 0.5) * h};
      if (!newton_refine(field, x, opts.newton_tol, opts.max_newton_iters)) continue;
      if (x.nu1 < -0.02 * nu_max || x.nu1 > 1.02 * nu_max ||
          x.nu2 < -0.02 * nu_max || x.nu2 > 1.02 * nu_max)
        continue;
      bool dup = false;
      for (const Point2& r : roots)
        if (norm(x - r) < opts.dedup_tol) { dup = true; break; }
      if (!dup) roots.push_back(x);
    }

  if (roots.empty()) throw NoEquilibriumFound("equilibrium scan found no roots");

  std::vector<Equilibrium> out;
  out.reserve(roots.size());
  for (const Point2& r : roots) {
    Equilibrium e = classify_equilibrium(field, r);
    if (e.residual <= opts.residual_tol) out.push_back(e);
  }
  if (out.empty()) throw NoEquilibriumFound("no root met the residual tolerance");
  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
    if (a.location.nu1 != b.location.nu1) return a.location.nu1 < b.location.nu1;
    return a.location.nu2 < b.location.nu2;
  });
  return out;
}

const Equilibrium* central_saddle(const std::vector<Equilibrium>& eqs) {
  const Equilibrium* best = nullptr;
  double best_off = 0.0;
  for (const Equilibrium& e : eqs) {
    if (e.kind != EqKind::saddle) continue;
    const double off = std::abs(e.location.nu1 - e.location.nu2);
    if (!best || off < best_off) {
      best = &e;
      best_off = off;
    }
  }
  return best;
}

}  // namespace ratefp
