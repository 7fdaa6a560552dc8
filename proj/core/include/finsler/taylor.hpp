#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace finsler {

/// Highest total order the internal jet arithmetic is built for.
inline constexpr int kMaxTableOrder = 6;

/// Exponent vector over the 2n coordinates (x^1..x^n, y^1..y^n).
using MultiIndex = std::vector<int>;

/// Multi-indices over a fixed number of variables, laid out in graded order:
/// every index of total degree d precedes every index of degree d + 1. A jet of
/// order k therefore occupies a prefix of the layout of any higher order.
class MultiIndexTable {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  static constexpr std::uint32_t npos = 0xffffffffu;

  /// Shared table for `nvars` variables; thread-safe, built on first use.
  static const MultiIndexTable& get(int nvars);

  int nvars() const noexcept { return nvars_; }

  /// Number of multi-indices with total degree <= order.
  std::size_t size(int order) const { return prefix_[static_cast<std::size_t>(order)]; }

  std::span<const std::uint8_t> exponents(std::size_t idx) const {
    return {exps_.data() + idx * static_cast<std::size_t>(nvars_), static_cast<std::size_t>(nvars_)};
  }
  int degree(std::size_t idx) const { return degree_[idx]; }

  /// alpha! for the multi-index at `idx`.
  double factorial(std::size_t idx) const { return factorial_[idx]; }

  /// Position of alpha + e_var, or npos when that exceeds the table order.
  std::uint32_t raise(std::size_t idx, int var) const {
    return raise_[idx * static_cast<std::size_t>(nvars_) + static_cast<std::size_t>(var)];
  }

  /// Position of an exponent vector; throws OrderTooHigh past the table order.
  std::size_t index(std::span<const int> alpha) const;

  /// Pairs (lhs, rhs) with deg(lhs) + deg(rhs) <= order and their sum position.
  std::span<const Product> products(int order) const {
    return {products_.data(), product_prefix_[static_cast<std::size_t>(order)]};
  }

 private:
  explicit MultiIndexTable(int nvars);

  int nvars_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<std::uint32_t> raise_;
  std::vector<std::size_t> prefix_;
  std::vector<Product> products_;
  std::vector<std::size_t> product_prefix_;
};

/// Truncated multivariate Taylor polynomial: coefficients are the partial
/// derivatives divided by alpha!. Arithmetic truncates to the smaller order of
/// the operands. A default-constructed or scalar-constructed value carries no
/// table and behaves as an exact constant.
class Taylor {
 public:
  Taylor() = default;
  Taylor(double constant) : coeffs_{constant} {}  // NOLINT(google-explicit-constructor)

  /// Zero polynomial of the given order.
  Taylor(const MultiIndexTable& table, int order);

  /// The coordinate function `var` expanded around `center`.
  static Taylor variable(const MultiIndexTable& table, int order, int var, double center);

  bool is_constant() const noexcept { return table_ == nullptr; }
  const MultiIndexTable* table() const noexcept { return table_; }
  int nvars() const noexcept;
  /// Truncation order; exact constants report kMaxTableOrder.
  int order() const noexcept { return table_ ? order_ : kMaxTableOrder; }

  double value() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  /// Raw partial derivative d^alpha at the center.
  double partial(std::span<const int> alpha) const;

  /// Exact partial derivative in one variable; the result has order - 1.
  Taylor derivative(int var) const;

  Taylor truncated(int order) const;

  Taylor& operator+=(const Taylor& rhs);
  Taylor& operator-=(const Taylor& rhs);
  Taylor& operator*=(const Taylor& rhs);
  Taylor& operator/=(const Taylor& rhs);
  Taylor& operator*=(double s);

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(const Taylor& a, const Taylor& b);
  friend Taylor operator/(const Taylor& a, const Taylor& b);
  friend Taylor operator+(Taylor a, double b) { return a += Taylor(b); }
  friend Taylor operator+(double a, Taylor b) { return b += Taylor(a); }
  friend Taylor operator-(Taylor a, double b) { return a -= Taylor(b); }
  friend Taylor operator-(double a, const Taylor& b) { return Taylor(a) - b; }
  friend Taylor operator*(Taylor a, double b) { return a *= b; }
  friend Taylor operator*(double a, Taylor b) { return b *= a; }
  friend Taylor operator/(Taylor a, double b) { return a *= 1.0 / b; }
  friend Taylor operator/(double a, const Taylor& b) { return Taylor(a) / b; }
  Taylor operator-() const;

  /// f(a) from the derivatives f, f', f'', ... of a scalar function at a.value().
  friend Taylor compose(const Taylor& a, std::span<const double> derivatives);
  friend Taylor sqrt(const Taylor& a);
  friend Taylor pow(const Taylor& a, double exponent);

 private:
  const MultiIndexTable* table_ = nullptr;
  int order_ = 0;
  std::vector<double> coeffs_{0.0};
};

}  // namespace finsler
