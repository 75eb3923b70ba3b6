#include "ricci/exterior.hpp"

#include <algorithm>

namespace ricci {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MultiIndexBasis::MultiIndexBasis(int n, int d) : n_(n), d_(d) {
  if (d < 0 || d > n) return;
  MultiIndex current(d);
  for (int i = 0; i < d; ++i) current[i] = i;
  while (true) {
    lookup_.emplace(current, static_cast<int>(indices_.size()));
    indices_.push_back(current);
    int pos = d - 1;
    while (pos >= 0 && current[pos] == n - d + pos) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (int i = pos + 1; i < d; ++i) current[i] = current[i - 1] + 1;
  }
}

int MultiIndexBasis::position(const MultiIndex& sorted) const {
  auto it = lookup_.find(sorted);
  return it == lookup_.end() ? -1 : it->second;
}

Vector MultiIndexBasis::simple(const Matrix& vectors) const {
  Vector coords(size());
  Matrix minor(d_, d_);
  for (int k = 0; k < size(); ++k) {
    for (int r = 0; r < d_; ++r) minor.row(r) = vectors.row(indices_[k][r]);
    coords(k) = d_ == 0 ? 1.0 : minor.determinant();
  }
  return coords;
}

std::optional<SignedIndex> sort_with_parity(MultiIndex tuple) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < tuple.size(); ++i)
    for (size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
      if (tuple[j - 1] == tuple[j]) return std::nullopt;
      std::swap(tuple[j - 1], tuple[j]);
      sign = -sign;
    }
  return SignedIndex{std::move(tuple), sign};
}

}  // namespace ricci
