#pragma once

#include <cassert>
#include <vector>

#include <Eigen/Dense>

namespace ricci {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense rank-3 array, row-major in (k, i, j). Used for Γ^k_{ij}.
template <typename Scalar>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, Scalar(0)) {}

  int dim() const { return n_; }
  Scalar& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  const Scalar& operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

 private:
  size_t index(int k, int i, int j) const {
    assert(k >= 0 && k < n_ && i >= 0 && i < n_ && j >= 0 && j < n_);
    return (static_cast<size_t>(k) * n_ + i) * n_ + j;
  }

  int n_ = 0;
  std::vector<Scalar> data_;
};

/// Dense rank-4 array, row-major in (i, j, k, l).
template <typename Scalar>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<size_t>(n) * n * n * n, Scalar(0)) {}

  int dim() const { return n_; }
  Scalar& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  const Scalar& operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  const std::vector<Scalar>& data() const { return data_; }

  Scalar max_abs() const {
    Scalar m(0);
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  size_t index(int i, int j, int k, int l) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_ && k >= 0 && k < n_ && l >= 0 && l < n_);
    return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  int n_ = 0;
  std::vector<Scalar> data_;
};

using Christoffel = Tensor3<double>;

/// All-covariant curvature tensor at a point, with R_{ijij} = K(e_i, e_j) for
/// orthonormal e_i, e_j. Components are taken in some frame whose Gram matrix
/// is `frame_metric` (identity for orthonormal frames).
struct AlgebraicCurvature {
  Tensor4<double> components;
  Matrix frame_metric;

  AlgebraicCurvature() = default;
  AlgebraicCurvature(Tensor4<double> r, Matrix gram)
      : components(std::move(r)), frame_metric(std::move(gram)) {}

  int dim() const { return components.dim(); }
  double operator()(int i, int j, int k, int l) const { return components(i, j, k, l); }

  /// R(u, v, w, z) multilinear evaluation.
  double evaluate(const Vector& u, const Vector& v, const Vector& w, const Vector& z) const;

  /// Ric_{jl} = g^{ik} R_{ijkl}.
  Matrix ricci() const;
  double scalar() const;

  /// Expresses the tensor in a new frame whose vectors are the columns of
  /// `basis` (components in the current frame).
  AlgebraicCurvature in_basis(const Matrix& basis) const;

  /// Largest violation among antisymmetry, pair symmetry and first Bianchi.
  double symmetry_defect() const;
};

/// R_{ijkl} = κ (δ_ik δ_jl − δ_il δ_jk), orthonormal frame.
AlgebraicCurvature constant_curvature(int n, double kappa);

}  // namespace ricci
