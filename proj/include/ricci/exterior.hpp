#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ricci/tensor.hpp"

namespace ricci {

using MultiIndex = std::vector<int>;

/// Strictly increasing d-tuples from {0..n-1} in lexicographic order; the
/// wedge basis ω_I of Λ^d over an orthonormal frame.
class MultiIndexBasis {
 public:
  MultiIndexBasis(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& operator[](int k) const { return indices_[k]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of a strictly increasing tuple, or -1.
  int position(const MultiIndex& sorted) const;

  /// Coordinates of the simple d-vector v_1∧…∧v_d (columns of `vectors`,
  /// components in the orthonormal frame): the d × d minors.
  Vector simple(const Matrix& vectors) const;

 private:
  int n_;
  int d_;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, int> lookup_;
};

struct SignedIndex {
  MultiIndex sorted;
  int sign;
};

/// Sorts a tuple and returns the parity of the sorting permutation, or
/// nothing when an index repeats (the component vanishes).
std::optional<SignedIndex> sort_with_parity(MultiIndex tuple);

long long binomial(int n, int k);

}  // namespace ricci
