#pragma once

#include <memory>
#include <string>
#include <utility>

#include "ricci/dual.hpp"
#include "ricci/tensor.hpp"

namespace ricci {

/// Coordinate chart with smooth metric components g_ij(x).
///
/// The metric is evaluated at three scalar levels: plain doubles, and one or
/// two nested dual layers for exact first and second partial derivatives.
/// Concrete charts are built from a model type exposing
/// `template <typename S> MatrixX<S> metric(const VectorX<S>&) const`
/// through make_chart().
class MetricChart {
 public:
  MetricChart(std::string label, Vector lower, Vector upper)
      : label_(std::move(label)), lower_(std::move(lower)), upper_(std::move(upper)) {}
  virtual ~MetricChart() = default;

  int dim() const { return static_cast<int>(lower_.size()); }
  const std::string& label() const { return label_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(const Vector& x) const {
    return x.size() == lower_.size() && (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
  }

  virtual MatrixX<double> metric(const VectorX<double>& x) const = 0;
  virtual MatrixX<Dual1> metric(const VectorX<Dual1>& x) const = 0;
  virtual MatrixX<Dual2> metric(const VectorX<Dual2>& x) const = 0;

 private:
  std::string label_;
  Vector lower_;
  Vector upper_;
};

template <typename Model>
class ModelChart final : public MetricChart {
 public:
  ModelChart(std::string label, Vector lower, Vector upper, Model model)
      : MetricChart(std::move(label), std::move(lower), std::move(upper)), model_(std::move(model)) {}

  MatrixX<double> metric(const VectorX<double>& x) const override { return model_.metric(x); }
  MatrixX<Dual1> metric(const VectorX<Dual1>& x) const override { return model_.metric(x); }
  MatrixX<Dual2> metric(const VectorX<Dual2>& x) const override { return model_.metric(x); }

  const Model& model() const { return model_; }

 private:
  Model model_;
};

using ChartPtr = std::shared_ptr<const MetricChart>;

template <typename Model>
ChartPtr make_chart(std::string label, Vector lower, Vector upper, Model model) {
  return std::make_shared<ModelChart<Model>>(std::move(label), std::move(lower), std::move(upper),
                                             std::move(model));
}

/// Flat metric δ_ij on an n-box.
struct EuclideanModel {
  int n;
  template <typename S>
  MatrixX<S> metric(const VectorX<S>&) const {
    return MatrixX<S>::Identity(n, n);
  }
};

}  // namespace ricci
