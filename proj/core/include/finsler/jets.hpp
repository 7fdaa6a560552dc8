#pragma once

#include <functional>
#include <span>
#include <vector>

#include "finsler/tangent_point.hpp"
#include "finsler/taylor.hpp"

namespace finsler {

/// Largest order eval_jet hands out.
inline constexpr int kMaxJetOrder = 5;

/// Jet variable numbering: x^i is variable i, y^i is variable n + i.
constexpr int x_var(int i) { return i; }
constexpr int y_var(int n, int i) { return n + i; }

/// Exponent vector over 2n variables built from a list of variable numbers,
/// e.g. multi_index(2, {x_var(0), y_var(2, 1), y_var(2, 1)}) for d_x1 d_y2 d_y2.
MultiIndex multi_index(int n, std::initializer_list<int> vars);

/// A scalar field on the slit tangent bundle. It evaluates both on plain
/// doubles and on Taylor jets, so derivatives propagate exactly.
class ScalarField {
 public:
  using DoubleFn = std::function<double(std::span<const double>, std::span<const double>)>;
  using JetFn = std::function<Taylor(std::span<const Taylor>, std::span<const Taylor>)>;

  ScalarField(int dim, DoubleFn on_doubles, JetFn on_jets);

  /// Build from a generic callable `f(x, y)` that accepts spans of double and
  /// spans of Taylor alike.
  template <class Generic>
  static ScalarField generic(int dim, Generic f) {
    return ScalarField(
        dim, [f](std::span<const double> x, std::span<const double> y) { return f(x, y); },
        [f](std::span<const Taylor> x, std::span<const Taylor> y) { return f(x, y); });
  }

  int dim() const noexcept { return dim_; }

  double operator()(std::span<const double> x, std::span<const double> y) const {
    return on_doubles_(x, y);
  }
  double operator()(const TangentPoint& p) const { return on_doubles_(p.x(), p.y()); }
  Taylor operator()(std::span<const Taylor> x, std::span<const Taylor> y) const {
    return on_jets_(x, y);
  }

  /// Taylor expansion around p to the given order (up to kMaxTableOrder).
  Taylor expand(const TangentPoint& p, int order) const;

 private:
  int dim_;
  DoubleFn on_doubles_;
  JetFn on_jets_;
};

/// Coordinate functions x^1..x^n, y^1..y^n expanded around p.
std::vector<Taylor> coordinate_jets(const TangentPoint& p, int order);

/// All mixed partial derivatives of a field up to a total order, stored as raw
/// derivatives (not divided by alpha!).
class Jet {
 public:
  Jet(TangentPoint center, int order, std::vector<double> partials);

  const TangentPoint& center() const noexcept { return center_; }
  int order() const noexcept { return order_; }
  int nvars() const noexcept { return 2 * center_.dim(); }

  double value() const noexcept { return partials_[0]; }
  /// d^alpha f at the center; throws OrderTooHigh beyond order().
  double partial(std::span<const int> alpha) const;
  double partial(std::initializer_list<int> vars) const;

  /// Raw partials in graded multi-index order (see MultiIndexTable).
  std::span<const double> partials() const noexcept { return partials_; }

 private:
  TangentPoint center_;
  int order_;
  std::vector<double> partials_;
};

/// Exact mixed partials of f at p. Throws OrderTooHigh past kMaxJetOrder.
Jet eval_jet(const ScalarField& f, const TangentPoint& p, int order);

}  // namespace finsler
