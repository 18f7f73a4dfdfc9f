#pragma once

#include <cmath>

namespace ratefp {

struct Point2 {
  double nu1 = 0.0;
  double nu2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.nu1 + b.nu1, a.nu2 + b.nu2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.nu1 - b.nu1, a.nu2 - b.nu2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.nu1, s * a.nu2}; }
inline double norm(Point2 a) { return std::hypot(a.nu1, a.nu2); }
inline double dot(Point2 a, Point2 b) { return a.nu1 * b.nu1 + a.nu2 * b.nu2; }

struct Mat2 {
  // row-major: [a11 a12; a21 a22]
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }

  Point2 operator*(Point2 v) const {
    return {a11 * v.nu1 + a12 * v.nu2, a21 * v.nu1 + a22 * v.nu2};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  Mat2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  Point2 row(int i) const { return i == 0 ? Point2{a11, a12} : Point2{a21, a22}; }
  Point2 col(int j) const { return j == 0 ? Point2{a11, a21} : Point2{a12, a22}; }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 from_rows(Point2 r0, Point2 r1) { return {r0.nu1, r0.nu2, r1.nu1, r1.nu2}; }
  static Mat2 from_cols(Point2 c0, Point2 c1) { return {c0.nu1, c1.nu1, c0.nu2, c1.nu2}; }
};

struct EigenReal2 {
  double lambda1 = 0.0, lambda2 = 0.0;  // |lambda1| >= |lambda2|
  Point2 v1, v2;                        // unit eigenvectors
  bool complex_pair = false;            // true: lambda1/2 hold real parts, v undefined
};

// Analytic eigen-decomposition of a 2x2 matrix.  Roots of x^2 - tr x + det
// computed in the numerically stable form; eigenvectors from the better
// conditioned row of (A - lambda I).
inline EigenReal2 eigen2(const Mat2& m) {
  EigenReal2 r;
  const double tr = m.trace();
  const double dt = m.det();
  const double disc = tr * tr - 4.0 * dt;
  if (disc < 0.0) {
    r.complex_pair = true;
    r.lambda1 = r.lambda2 = 0.5 * tr;
    return r;
  }
  const double s = std::sqrt(disc);
  double l1 = 0.5 * (tr + (tr >= 0 ? s : -s));
  double l2 = (l1 != 0.0) ? dt / l1 : 0.5 * (tr - (tr >= 0 ? s : -s));
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  r.lambda1 = l1;
  r.lambda2 = l2;
  auto eigvec = [&m](double lam) {
    // (A - lam I) v = 0; pick the row with the larger residual norm
    Point2 r0{m.a11 - lam, m.a12};
    Point2 r1{m.a21, m.a22 - lam};
    Point2 v = (norm(r0) >= norm(r1)) ? Point2{-r0.nu2, r0.nu1} : Point2{-r1.nu2, r1.nu1};
    const double n = norm(v);
    if (n == 0.0) return Point2{1.0, 0.0};  // multiple of identity
    return (1.0 / n) * v;
  };
  r.v1 = eigvec(l1);
  r.v2 = eigvec(l2);
  return r;
}

}  // namespace ratefp
