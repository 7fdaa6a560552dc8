#include "finsler/jets.hpp"

#include <stdexcept>

#include "finsler/errors.hpp"

namespace finsler {

MultiIndex multi_index(int n, std::initializer_list<int> vars) {
  MultiIndex alpha(static_cast<std::size_t>(2 * n), 0);
  for (int v : vars) {
    if (v < 0 || v >= 2 * n) throw std::out_of_range("jet variable out of range");
    ++alpha[static_cast<std::size_t>(v)];
  }
  return alpha;
}

ScalarField::ScalarField(int dim, DoubleFn on_doubles, JetFn on_jets)
    : dim_(dim), on_doubles_(std::move(on_doubles)), on_jets_(std::move(on_jets)) {
  if (dim < 2) throw DomainError("scalar field dimension must be at least 2");
}

std::vector<Taylor> coordinate_jets(const TangentPoint& p, int order) {
  const int n = p.dim();
  const auto& table = MultiIndexTable::get(2 * n);
  std::vector<Taylor> coords;
  coords.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) coords.push_back(Taylor::variable(table, order, x_var(i), p.x()[i]));
  for (int i = 0; i < n; ++i) coords.push_back(Taylor::variable(table, order, y_var(n, i), p.y()[i]));
  return coords;
}

Taylor ScalarField::expand(const TangentPoint& p, int order) const {
  if (p.dim() != dim_) throw DomainError("point dimension does not match the field");
  if (order < 0 || order > kMaxTableOrder) throw OrderTooHigh("expansion order out of range");
  const auto coords = coordinate_jets(p, order);
  const std::span<const Taylor> all(coords);
  const auto n = static_cast<std::size_t>(dim_);
  Taylor value = on_jets_(all.subspan(0, n), all.subspan(n, n));
  if (value.is_constant()) {
    Taylor lifted(MultiIndexTable::get(2 * dim_), order);
    lifted += value;
    return lifted;
  }
  return value;
}

Jet::Jet(TangentPoint center, int order, std::vector<double> partials)
    : center_(std::move(center)), order_(order), partials_(std::move(partials)) {}

double Jet::partial(std::span<const int> alpha) const {
  const auto& table = MultiIndexTable::get(nvars());
  const auto idx = table.index(alpha);
  if (table.degree(idx) > order_) throw OrderTooHigh("partial derivative beyond jet order");
  return partials_[idx];
}

double Jet::partial(std::initializer_list<int> vars) const {
  return partial(multi_index(center_.dim(), vars));
}

Jet eval_jet(const ScalarField& f, const TangentPoint& p, int order) {
  if (order < 0) throw std::invalid_argument("negative jet order");
  if (order > kMaxJetOrder) throw OrderTooHigh("eval_jet supports orders up to 5");
  const Taylor t = f.expand(p, order);
  const auto& table = *t.table();
  std::vector<double> partials(t.coefficients().begin(), t.coefficients().end());
  for (std::size_t i = 0; i < partials.size(); ++i) partials[i] *= table.factorial(i);
  return Jet(p, order, std::move(partials));
}

}  // namespace finsler
