#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace finsler {

/// Dense tensor with a uniform extent on every index, stored row-major with
/// indices in the order they are written (upper index first).
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int extent, int rank, const T& fill = T{})
      : extent_(extent), rank_(rank), data_(flat_size(extent, rank), fill) {}

  int extent() const noexcept { return extent_; }
  int rank() const noexcept { return rank_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t size() const noexcept { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  /// Decompose a flat position into its multi-index.
  void unflatten(std::size_t pos, std::span<int> idx) const {
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(pos % static_cast<std::size_t>(extent_));
      pos /= static_cast<std::size_t>(extent_);
    }
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(data_.front()));
    Tensor<U> out(extent_, rank_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.flat()[i] = f(data_[i]);
    return out;
  }

 private:
  static std::size_t flat_size(int extent, int rank) {
    std::size_t s = 1;
    for (int r = 0; r < rank; ++r) s *= static_cast<std::size_t>(extent);
    return s;
  }

  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }
  std::size_t offset(std::span<const int> idx) const {
    assert(static_cast<int>(idx.size()) == rank_);
    std::size_t pos = 0;
    for (int i : idx) {
      assert(i >= 0 && i < extent_);
      pos = pos * static_cast<std::size_t>(extent_) + static_cast<std::size_t>(i);
    }
    return pos;
  }

  int extent_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

/// Max-norm of a - b; tensors must share shape.
inline double max_abs_diff(const Tensor<double>& a, const Tensor<double>& b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
  return m;
}

inline double max_abs(const Tensor<double>& a) {
  double m = 0.0;
  for (double v : a.flat()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace finsler
