#pragma once

#include <cmath>

#include "ricci/chart.hpp"

// Metric models evaluated at any scalar level (double or nested duals).

namespace ricci::models {

/// Conformal space-form chart: g = φ² δ with φ = 2/(1 + κ|x|²), or δ when κ = 0.
/// Stereographic sphere for κ > 0, Poincaré ball for κ < 0.
struct ConformalSpaceForm {
  int n;
  double kappa;
  double radius_scale = 1.0;  // multiplies the whole metric by radius_scale²

  template <typename S>
  S factor(const VectorX<S>& x) const {
    if (kappa == 0.0) return S(radius_scale);
    S r2(0.0);
    for (int i = 0; i < n; ++i) r2 += x(i) * x(i);
    return S(2.0 * radius_scale) / (S(1.0) + S(kappa) * r2);
  }

  template <typename S>
  MatrixX<S> metric(const VectorX<S>& x) const {
    const S phi = factor(x);
    MatrixX<S> g = MatrixX<S>::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = phi * phi;
    return g;
  }
};

/// dx² + dy² + (dz − x dy)²; X = ∂x, Y = ∂y + x∂z, Z = ∂z is orthonormal with [X, Y] = Z.
struct Heisenberg {
  template <typename S>
  MatrixX<S> metric(const VectorX<S>& p) const {
    const S& x = p(0);
    MatrixX<S> g = MatrixX<S>::Zero(3, 3);
    g(0, 0) = S(1.0);
    g(1, 1) = S(1.0) + x * x;
    g(1, 2) = -x;
    g(2, 1) = -x;
    g(2, 2) = S(1.0);
    return g;
  }
};

enum class Profile { Cylinder, Sphere, Catenoid };

/// Profile curve (r(u), z(u)) of a surface of revolution, with closed-form
/// derivatives for the curvature oracle.
struct RevolutionProfile {
  Profile kind;
  double R = 1.0;

  template <typename S>
  S r(const S& u) const {
    using std::cosh, std::sin;
    switch (kind) {
      case Profile::Cylinder: return S(R);
      case Profile::Sphere: return S(R) * sin(u / S(R));
      case Profile::Catenoid: return cosh(u);
    }
    return S(0.0);
  }
  template <typename S>
  S z(const S& u) const {
    using std::cos;
    switch (kind) {
      case Profile::Cylinder: return u;
      case Profile::Sphere: return S(R) * cos(u / S(R));
      case Profile::Catenoid: return u;
    }
    return S(0.0);
  }

  double dr(double u) const {
    switch (kind) {
      case Profile::Cylinder: return 0.0;
      case Profile::Sphere: return std::cos(u / R);
      case Profile::Catenoid: return std::sinh(u);
    }
    return 0.0;
  }
  double d2r(double u) const {
    switch (kind) {
      case Profile::Cylinder: return 0.0;
      case Profile::Sphere: return -std::sin(u / R) / R;
      case Profile::Catenoid: return std::cosh(u);
    }
    return 0.0;
  }
  double dz(double u) const {
    switch (kind) {
      case Profile::Cylinder: return 1.0;
      case Profile::Sphere: return -std::sin(u / R);
      case Profile::Catenoid: return 1.0;
    }
    return 0.0;
  }
  double d2z(double u) const {
    switch (kind) {
      case Profile::Cylinder: return 0.0;
      case Profile::Sphere: return -std::cos(u / R) / R;
      case Profile::Catenoid: return 0.0;
    }
    return 0.0;
  }
};

/// Induced metric (r'² + z'²) du² + r² dv² of x(u, v) = (r cos v, r sin v, z).
struct SurfaceOfRevolution {
  RevolutionProfile profile;

  template <typename S>
  MatrixX<S> metric(const VectorX<S>& p) const {
    // r' and z' by one extra dual layer on u
    const Dual<S> u(p(0), S(1.0));
    const Dual<S> r = profile.r(u);
    const Dual<S> z = profile.z(u);
    MatrixX<S> g = MatrixX<S>::Zero(2, 2);
    g(0, 0) = r.eps * r.eps + z.eps * z.eps;
    g(1, 1) = r.val * r.val;
    return g;
  }
};

/// Product of two conformal space-form charts.
struct Product {
  ConformalSpaceForm first;
  ConformalSpaceForm second;

  template <typename S>
  MatrixX<S> metric(const VectorX<S>& x) const {
    const int a = first.n, b = second.n;
    MatrixX<S> g = MatrixX<S>::Zero(a + b, a + b);
    g.topLeftCorner(a, a) = first.metric(VectorX<S>(x.head(a)));
    g.bottomRightCorner(b, b) = second.metric(VectorX<S>(x.tail(b)));
    return g;
  }
};

enum class WarpKind { Constant, Cosh, Exp, Quadratic };

/// Warp functions on base coordinates with closed-form partial derivatives.
///   Constant:  c
///   Cosh:      c·cosh(x_0 + shift)
///   Exp:       c·exp(rate·x_0)
///   Quadratic: c + gᵀx + ½ xᵀHx
struct Warp {
  WarpKind kind = WarpKind::Constant;
  double c = 1.0;
  double shift = 0.0;
  double rate = 1.0;
  Vector linear;
  Matrix quadratic;

  template <typename S>
  S value(const VectorX<S>& x) const {
    using std::cosh, std::exp;
    switch (kind) {
      case WarpKind::Constant: return S(c);
      case WarpKind::Cosh: return S(c) * cosh(x(0) + S(shift));
      case WarpKind::Exp: return S(c) * exp(S(rate) * x(0));
      case WarpKind::Quadratic: {
        S v(c);
        for (int i = 0; i < x.size(); ++i) {
          v += S(linear(i)) * x(i);
          for (int j = 0; j < x.size(); ++j) v += S(0.5 * quadratic(i, j)) * x(i) * x(j);
        }
        return v;
      }
    }
    return S(c);
  }

  Vector gradient(const Vector& x) const {
    Vector g = Vector::Zero(x.size());
    switch (kind) {
      case WarpKind::Constant: break;
      case WarpKind::Cosh: g(0) = c * std::sinh(x(0) + shift); break;
      case WarpKind::Exp: g(0) = c * rate * std::exp(rate * x(0)); break;
      case WarpKind::Quadratic: g = linear + quadratic * x; break;
    }
    return g;
  }

  Matrix hessian(const Vector& x) const {
    Matrix h = Matrix::Zero(x.size(), x.size());
    switch (kind) {
      case WarpKind::Constant: break;
      case WarpKind::Cosh: h(0, 0) = c * std::cosh(x(0) + shift); break;
      case WarpKind::Exp: h(0, 0) = c * rate * rate * std::exp(rate * x(0)); break;
      case WarpKind::Quadratic: h = quadratic; break;
    }
    return h;
  }
};

/// g_B ⊕ f² g_F over base × fiber coordinates.
struct WarpedProduct {
  ConformalSpaceForm base;
  ConformalSpaceForm fiber;
  Warp warp;

  template <typename S>
  MatrixX<S> metric(const VectorX<S>& x) const {
    const int b = base.n, m = fiber.n;
    const VectorX<S> xb = x.head(b);
    const S f = warp.value(xb);
    MatrixX<S> g = MatrixX<S>::Zero(b + m, b + m);
    g.topLeftCorner(b, b) = base.metric(xb);
    const MatrixX<S> gf = fiber.metric(VectorX<S>(x.tail(m)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(b + i, b + j) = f * f * gf(i, j);
    return g;
  }
};

}  // namespace ricci::models
