#pragma once

#include <string>
#include <vector>

#include "scalar.hpp"

namespace brst {

/// Structure constants C_{ab}^c = e^c([e_a, e_b]) of a finite dimensional Lie algebra.
class LieAlgebraData {
public:
  LieAlgebraData() = default;
  explicit LieAlgebraData(int dimension)
      : dim_(dimension), c_(dimension, std::vector<std::vector<Scalar>>(dimension, std::vector<Scalar>(dimension))) {}

  static LieAlgebraData abelian(int dimension) { return LieAlgebraData(dimension); }

  /// su(2) with [e_a, e_b] = eps_{abc} e_c.
  static LieAlgebraData su2() {
    LieAlgebraData g(3);
    auto set = [&](int a, int b, int c) {
      g.c_[a][b][c] = Scalar(1);
      g.c_[b][a][c] = Scalar(-1);
    };
    set(0, 1, 2);
    set(1, 2, 0);
    set(2, 0, 1);
    return g;
  }

  /// Two-dimensional non-unimodular algebra [e_0, e_1] = e_1 (tr ad e_0 = 1).
  static LieAlgebraData affine_line() {
    LieAlgebraData g(2);
    g.c_[0][1][1] = Scalar(1);
    g.c_[1][0][1] = Scalar(-1);
    return g;
  }

  int dimension() const { return dim_; }
  const Scalar &structure_constant(int a, int b, int c) const { return c_[a][b][c]; }
  void set_structure_constant(int a, int b, int c, const Scalar &v) { c_[a][b][c] = v; }

  bool is_abelian() const {
    for (const auto &x : c_)
      for (const auto &y : x)
        for (const auto &z : y)
          if (!z.is_zero()) return false;
    return true;
  }

  /// Modular one-form Delta(e_a) = tr ad(e_a) = sum_b C_{ab}^b.
  std::vector<Scalar> modular_form() const {
    std::vector<Scalar> delta(dim_);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) delta[a] += c_[a][b][b];
    return delta;
  }

  bool is_antisymmetric() const {
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c)
          if (c_[a][b][c] != -c_[b][a][c]) return false;
    return true;
  }

  bool satisfies_jacobi() const {
    // sum_d C_{ab}^d C_{dc}^e + cyclic = 0
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c)
          for (int e = 0; e < dim_; ++e) {
            Scalar sum;
            for (int d = 0; d < dim_; ++d)
              sum += c_[a][b][d] * c_[d][c][e] + c_[b][c][d] * c_[d][a][e] + c_[c][a][d] * c_[d][b][e];
            if (!sum.is_zero()) return false;
          }
    return true;
  }

private:
  int dim_ = 0;
  std::vector<std::vector<std::vector<Scalar>>> c_;
};

} // namespace brst
