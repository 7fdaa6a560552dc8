#include "finsler/fd.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

constexpr int kMaxFdOrder = 4;

struct Defaults {
  double step;
  int levels;
};

Defaults defaults_for(int order) {
  switch (order) {
    case 0:
      return {0.0, 1};
    case 1:
      return {1e-2, 3};
    case 2:
      return {2e-2, 3};
    case 3:
      return {6e-2, 4};
    default:
      return {1.2e-1, 4};
  }
}

double binomial(int m, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
  return b;
}

// One tensor-product central difference with step h.
double central_difference(const ScalarField& f, const TangentPoint& p, std::span<const int> alpha, double h) {
  const int n = p.dim();
  std::vector<int> vars;
  for (int v = 0; v < 2 * n; ++v) {
    if (alpha[static_cast<std::size_t>(v)] > 0) vars.push_back(v);
  }
  std::vector<double> x(p.x().begin(), p.x().end());
  std::vector<double> y(p.y().begin(), p.y().end());
  auto coord = [&](int v) -> double& {
    return v < n ? x[static_cast<std::size_t>(v)] : y[static_cast<std::size_t>(v - n)];
  };

  // Odometer over the per-variable stencil positions k = 0..m.
  std::vector<int> k(vars.size(), 0);
  int total_order = 0;
  for (int v : vars) total_order += alpha[static_cast<std::size_t>(v)];
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t s = 0; s < vars.size(); ++s) {
      const int m = alpha[static_cast<std::size_t>(vars[s])];
      const double base = vars[s] < n ? p.x()[static_cast<std::size_t>(vars[s])]
                                      : p.y()[static_cast<std::size_t>(vars[s] - n)];
      coord(vars[s]) = base + (0.5 * m - k[s]) * h;
      weight *= ((k[s] % 2) ? -1.0 : 1.0) * binomial(m, k[s]);
    }
    sum += weight * f(x, y);
    std::size_t s = 0;
    for (; s < vars.size(); ++s) {
      if (++k[s] <= alpha[static_cast<std::size_t>(vars[s])]) break;
      k[s] = 0;
    }
    if (s == vars.size()) break;
  }
  return sum / std::pow(h, total_order);
}

}  // namespace

double fd_partial(const ScalarField& f, const TangentPoint& p, std::span<const int> alpha, const FdOptions& options) {
  const int n = p.dim();
  if (alpha.size() != static_cast<std::size_t>(2 * n)) throw DomainError("multi-index length must be 2n");
  const int order = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (order > kMaxFdOrder) throw OrderTooHigh("finite differences are limited to order 4");
  if (order == 0) return f(p);

  const Defaults d = defaults_for(order);
  const double h = options.step > 0.0 ? options.step : d.step;
  const int levels = options.levels > 0 ? options.levels : d.levels;

  double reach2 = 0.0;
  double ynorm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = 0.5 * alpha[static_cast<std::size_t>(n + i)] * h;
    reach2 += r * r;
    ynorm2 += p.y()[static_cast<std::size_t>(i)] * p.y()[static_cast<std::size_t>(i)];
  }
  if (std::sqrt(reach2) >= std::sqrt(ynorm2)) throw DomainError("finite-difference stencil reaches y = 0");

  std::vector<std::vector<double>> tableau(static_cast<std::size_t>(levels));
  double step = h;
  for (int i = 0; i < levels; ++i, step *= 0.5) {
    auto& row = tableau[static_cast<std::size_t>(i)];
    row.push_back(central_difference(f, p, alpha, step));
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 4.0;
      const double prev = tableau[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      row.push_back((factor * row[static_cast<std::size_t>(j - 1)] - prev) / (factor - 1.0));
    }
  }
  return tableau.back().back();
}

}  // namespace finsler
