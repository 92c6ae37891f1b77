#pragma once

// Exact sparse linear algebra over Q(i).

#include <map>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace brst {

using SparseVector = std::map<int, Scalar>;

inline void axpy(SparseVector &y, const Scalar &a, const SparseVector &x) {
  if (a.is_zero()) return;
  for (const auto &[k, v] : x) {
    auto [it, ins] = y.emplace(k, a * v);
    if (!ins) {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

/// Row echelon basis of a subspace; each stored row has its pivot at its
/// largest column. Reducing against it gives a canonical representative of
/// the coset v + span.
class EchelonBasis {
public:
  /// Returns true when the row enlarged the span.
  bool insert(SparseVector row) {
    reduce_in_place(row);
    if (row.empty()) return false;
    int pivot = row.rbegin()->first;
    Scalar inv = row.rbegin()->second.inverse();
    for (auto &[k, v] : row) v *= inv;
    rows_.emplace(pivot, std::move(row));
    return true;
  }

  void reduce_in_place(SparseVector &v) const {
    // walk pivots from the top; stored rows only have entries <= their pivot
    auto it = v.rbegin();
    while (it != v.rend()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      int col = it->first;
      Scalar factor = -it->second;
      axpy(v, factor, row->second);
      // entries above col are untouched; restart just below col
      it = std::make_reverse_iterator(v.lower_bound(col));
    }
  }

  SparseVector reduce(SparseVector v) const {
    reduce_in_place(v);
    return v;
  }

  bool contains(const SparseVector &v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }

private:
  std::map<int, SparseVector> rows_;
};

/// Incremental exact solver for A x = b with unknowns indexed by int.
class LinearSystem {
public:
  explicit LinearSystem(int unknowns) : unknowns_(unknowns) {}

  int unknowns() const { return unknowns_; }
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return rows_.size(); }
  /// Index (insertion order) of the first equation that made the system inconsistent.
  std::optional<std::size_t> first_inconsistent() const { return first_bad_; }

  void add_equation(SparseVector row, Scalar rhs) {
    std::size_t index = count_++;
    for (auto it = row.begin(); it != row.end();) {
      auto p = rows_.find(it->first);
      if (p == rows_.end()) {
        ++it;
        continue;
      }
      int col = it->first;
      Scalar f = -it->second;
      axpy(row, f, p->second.first);
      rhs += f * p->second.second;
      it = row.upper_bound(col);
    }
    if (row.empty()) {
      if (!rhs.is_zero() && consistent_) {
        consistent_ = false;
        first_bad_ = index;
      }
      return;
    }
    int pivot = row.begin()->first;
    Scalar inv = row.begin()->second.inverse();
    for (auto &[k, v] : row) v *= inv;
    rhs *= inv;
    rows_.emplace(pivot, std::make_pair(std::move(row), std::move(rhs)));
  }

  /// A particular solution with all free unknowns set to zero.
  std::optional<std::vector<Scalar>> solve() const {
    if (!consistent_) return std::nullopt;
    std::vector<Scalar> x(unknowns_);
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      const auto &[row, rhs] = it->second;
      Scalar v = rhs;
      for (const auto &[k, a] : row)
        if (k != it->first) v -= a * x[k];
      x[it->first] = v;
    }
    return x;
  }

private:
  int unknowns_;
  bool consistent_ = true;
  std::size_t count_ = 0;
  std::optional<std::size_t> first_bad_;
  std::map<int, std::pair<SparseVector, Scalar>> rows_;
};

/// Dense solve of a small square system; nullopt when singular.
inline std::optional<std::vector<Scalar>> solve_dense(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Scalar inv = a[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Scalar> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / a[k][k];
  return x;
}

} // namespace brst
