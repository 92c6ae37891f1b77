#pragma once

// Truncated formal power series in nu (orders -1 .. N).

#include <map>
#include <string>
#include <utility>

#include "error.hpp"

namespace brst {

inline constexpr int kDefaultNuOrder = 4;

template <typename T>
class NuSeries {
public:
  NuSeries() = default;
  explicit NuSeries(int truncation) : truncation_(truncation) {}
  NuSeries(T value, int truncation, int order = 0) : truncation_(truncation) { set(order, std::move(value)); }

  int truncation() const { return truncation_; }
  const std::map<int, T> &coefficients() const { return coeffs_; }
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  bool is_zero() const { return coeffs_.empty(); }
  int min_order() const { return coeffs_.empty() ? truncation_ + 1 : coeffs_.begin()->first; }
  int max_order() const { return coeffs_.empty() ? -2 : coeffs_.rbegin()->first; }

  bool has(int order) const { return coeffs_.count(order) != 0; }
  /// Coefficient at order, or `zero` when absent.
  T at(int order, const T &zero) const {
    auto it = coeffs_.find(order);
    return it == coeffs_.end() ? zero : it->second;
  }

  void set(int order, T value) {
    if (order < -1) throw Error(ErrorCode::Internal, "nu-order below -1");
    if (order > truncation_) return;
    if (is_zero_value(value)) {
      coeffs_.erase(order);
      return;
    }
    coeffs_.insert_or_assign(order, std::move(value));
  }
  void add(int order, const T &value) {
    if (order > truncation_) return;
    auto it = coeffs_.find(order);
    if (it == coeffs_.end()) {
      set(order, value);
      return;
    }
    it->second = it->second + value;
    if (is_zero_value(it->second)) coeffs_.erase(it);
  }

  NuSeries &operator+=(const NuSeries &o) {
    for (const auto &[k, v] : o.coeffs_) add(k, v);
    truncated_ = truncated_ || o.truncated_;
    return *this;
  }
  NuSeries &operator-=(const NuSeries &o) {
    for (const auto &[k, v] : o.coeffs_) add(k, -v);
    truncated_ = truncated_ || o.truncated_;
    return *this;
  }
  friend NuSeries operator+(NuSeries a, const NuSeries &b) { return a += b; }
  friend NuSeries operator-(NuSeries a, const NuSeries &b) { return a -= b; }
  NuSeries operator-() const {
    NuSeries r(truncation_);
    for (const auto &[k, v] : coeffs_) r.set(k, -v);
    r.truncated_ = truncated_;
    return r;
  }

  /// Multiply by nu^shift.
  NuSeries shifted(int shift) const {
    NuSeries r(truncation_ + shift);
    for (const auto &[k, v] : coeffs_) r.set(k + shift, v);
    r.truncated_ = truncated_;
    return r;
  }

  /// Drop all orders above `order`.
  NuSeries truncated_to(int order) const {
    NuSeries r(order);
    for (const auto &[k, v] : coeffs_) r.set(k, v);
    r.truncated_ = truncated_;
    return r;
  }

  template <typename F>
  auto map(F &&f) const {
    using U = decltype(f(std::declval<const T &>()));
    NuSeries<U> r(truncation_);
    for (const auto &[k, v] : coeffs_) r.set(k, f(v));
    if (truncated_) r.mark_truncated();
    return r;
  }

  /// Cauchy product with an arbitrary bilinear coefficient product.
  template <typename U, typename F>
  auto convolve(const NuSeries<U> &o, F &&bilinear) const {
    using V = decltype(bilinear(std::declval<const T &>(), std::declval<const U &>()));
    NuSeries<V> r(std::min(truncation_, o.truncation()));
    for (const auto &[i, a] : coeffs_)
      for (const auto &[j, b] : o.coefficients()) {
        if (i + j > r.truncation()) continue;
        r.add(i + j, bilinear(a, b));
      }
    if (truncated_ || o.truncated()) r.mark_truncated();
    return r;
  }

  friend bool operator==(const NuSeries &a, const NuSeries &b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const NuSeries &a, const NuSeries &b) { return !(a == b); }

  /// Agreement of all orders <= order.
  bool equal_up_to(const NuSeries &o, int order) const {
    for (int k = -1; k <= order; ++k) {
      bool a = has(k), b = o.has(k);
      if (a != b) return false;
      if (a && !(coeffs_.at(k) == o.coeffs_.at(k))) return false;
    }
    return true;
  }

private:
  static bool is_zero_value(const T &v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return false;
  }

  int truncation_ = kDefaultNuOrder;
  bool truncated_ = false;
  std::map<int, T> coeffs_;
};

} // namespace brst
