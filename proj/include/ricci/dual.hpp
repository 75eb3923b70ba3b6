#pragma once

#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace ricci {

/// Forward-mode dual number a + b·ε with ε² = 0.
///
/// Nesting (Dual<Dual<double>>) carries two independent infinitesimals,
/// which is how second partial derivatives of the metric are extracted:
/// seed the outer ε along x_a and the inner ε along x_b, then the mixed
/// component eps.eps holds ∂_a∂_b.
template <typename T>
struct Dual {
  T val{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v), eps(0.0) {}  // NOLINT: implicit by design of scalar promotion
  template <typename U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  constexpr Dual(const T& v) : val(v), eps(0.0) {}  // NOLINT
  constexpr Dual(const T& v, const T& e) : val(v), eps(e) {}

  Dual& operator+=(const Dual& o) { val += o.val; eps += o.eps; return *this; }
  Dual& operator-=(const Dual& o) { val -= o.val; eps -= o.eps; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.eps + b.eps}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.eps - b.eps}; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }
  friend Dual operator+(const Dual& a) { return a; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.eps * b.val + a.val * b.eps};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.val;
    return {a.val * inv, (a.eps * b.val - a.val * b.eps) * inv * inv};
  }

  friend bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val; }
  friend bool operator!=(const Dual& a, const Dual& b) { return a.val != b.val; }
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <typename T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos, std::sin;
  return {sin(a.val), a.eps * cos(a.val)};
}
template <typename T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos, std::sin;
  return {cos(a.val), -(a.eps * sin(a.val))};
}
template <typename T>
Dual<T> sinh(const Dual<T>& a) {
  using std::cosh, std::sinh;
  return {sinh(a.val), a.eps * cosh(a.val)};
}
template <typename T>
Dual<T> cosh(const Dual<T>& a) {
  using std::cosh, std::sinh;
  return {cosh(a.val), a.eps * sinh(a.val)};
}
template <typename T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.val);
  return {e, a.eps * e};
}
template <typename T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.val), a.eps / a.val};
}
template <typename T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.val);
  return {s, a.eps / (T(2.0) * s)};
}
template <typename T>
Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  T t = tanh(a.val);
  return {t, a.eps * (T(1.0) - t * t)};
}
template <typename T>
Dual<T> pow(const Dual<T>& a, double p) {
  using std::pow;
  return {pow(a.val, p), a.eps * (T(p) * pow(a.val, p - 1.0))};
}
template <typename T>
Dual<T> abs(const Dual<T>& a) {
  return a.val < T(0.0) ? -a : a;
}

/// Strips all derivative layers.
inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Dual<T>& x) {
  return value_of(x.val);
}

}  // namespace ricci

namespace Eigen {

template <typename T>
struct NumTraits<ricci::Dual<T>> : GenericNumTraits<ricci::Dual<T>> {
  using Real = ricci::Dual<T>;
  using NonInteger = ricci::Dual<T>;
  using Nested = ricci::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost,
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<ricci::Dual<T>, double, BinaryOp> {
  using ReturnType = ricci::Dual<T>;
};
template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<double, ricci::Dual<T>, BinaryOp> {
  using ReturnType = ricci::Dual<T>;
};

}  // namespace Eigen
