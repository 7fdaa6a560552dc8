#include "finsler/metrics.hpp"

#include <cmath>
#include <numbers>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

void reject_unknown(const Params& params, std::initializer_list<const char*> allowed,
                    const std::string& metric) {
  for (const auto& [key, _] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw BadParams("metric '" + metric + "' has no parameter '" + key + "'");
  }
}

std::vector<double> unit_box(int n, double v) { return std::vector<double>(static_cast<std::size_t>(n), v); }

Metric euclid(int n) {
  auto e = ScalarField::generic(n, [](auto, auto y) {
    using T = std::remove_cvref_t<decltype(y[0])>;
    T s(0.0);
    for (const auto& v : y) s = s + v * v;
    return 0.5 * s;
  });
  return {"euclid", std::move(e), true, unit_box(n, -1.0), unit_box(n, 1.0), std::nullopt, true};
}

Metric polar(int n) {
  if (n != 2) throw BadParams("metric 'polar' is two-dimensional");
  auto e = ScalarField::generic(2, [](auto x, auto y) {
    return 0.5 * (y[0] * y[0] + x[0] * x[0] * y[1] * y[1]);
  });
  // r is kept away from the origin, where the metric degenerates.
  return {"polar", std::move(e), true, {0.5, -std::numbers::pi}, {2.0, std::numbers::pi}, std::nullopt, false};
}

Metric riem_diag(int n) {
  auto e = ScalarField::generic(n, [n](auto x, auto y) {
    using T = std::remove_cvref_t<decltype(y[0])>;
    T s(0.0);
    for (int i = 0; i < n; ++i) {
      const auto& xi = x[static_cast<std::size_t>(i)];
      const auto& xj = x[static_cast<std::size_t>((i + 1) % n)];
      const T a = 1.0 + xj * xj + 0.5 * xi * xj + 0.25 * xi * xi;
      s = s + a * y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    return 0.5 * s;
  });
  return {"riem-diag", std::move(e), true, unit_box(n, -1.0), unit_box(n, 1.0), std::nullopt, false};
}

Metric randers(const Params& params, int n) {
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  b[0] = 0.1;
  double kappa = 0.2;
  if (auto it = params.find("b"); it != params.end()) {
    if (it->second.size() != b.size()) {
      throw BadParams("randers parameter b needs " + std::to_string(n) + " components");
    }
    b = it->second;
  }
  if (auto it = params.find("kappa"); it != params.end()) {
    if (it->second.size() != 1) throw BadParams("randers parameter kappa is a scalar");
    kappa = it->second[0];
  }
  double b0 = 0.0;
  for (double v : b) b0 += v * v;
  b0 = std::sqrt(b0);
  // |b(x)| <= |b| + |kappa| |x| and |x| <= sqrt(n) on the sampling box.
  const double bound = b0 + std::abs(kappa) * std::sqrt(static_cast<double>(n));
  if (!std::isfinite(bound) || bound >= 1.0) {
    throw BadParams("randers needs |b| + |kappa| sqrt(n) < 1 (got " + std::to_string(bound) + ")");
  }
  auto e = ScalarField::generic(n, [n, b, kappa](auto x, auto y) {
    using T = std::remove_cvref_t<decltype(y[0])>;
    using std::sqrt;
    T a2(0.0);
    T beta(0.0);
    for (int i = 0; i < n; ++i) {
      const auto& yi = y[static_cast<std::size_t>(i)];
      a2 = a2 + yi * yi;
      beta = beta + (b[static_cast<std::size_t>(i)] + kappa * x[static_cast<std::size_t>((i + 1) % n)]) * yi;
    }
    const T f = sqrt(a2) + beta;
    return 0.5 * f * f;
  });
  std::vector<double> wx(static_cast<std::size_t>(n));
  std::vector<double> wy(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    wx[static_cast<std::size_t>(i)] = 0.3 * std::pow(-0.7, i);
    wy[static_cast<std::size_t>(i)] = std::pow(-0.5, i);
  }
  return {"randers", std::move(e), false, unit_box(n, -1.0), unit_box(n, 1.0),
          TangentPoint(std::move(wx), std::move(wy)), false};
}

Metric quartic(int n) {
  auto e = ScalarField::generic(n, [](auto, auto y) {
    using T = std::remove_cvref_t<decltype(y[0])>;
    using std::sqrt;
    T s(0.0);
    for (const auto& v : y) s = s + v * v * v * v;
    return 0.5 * sqrt(s);
  });
  return {"quartic", std::move(e), false, unit_box(n, -1.0), unit_box(n, 1.0), std::nullopt, true};
}

}  // namespace

std::vector<std::string> builtin_names() { return {"euclid", "polar", "riem-diag", "randers", "quartic"}; }

Metric builtin_metric(const std::string& name, const Params& params, int n) {
  if (n < 2) throw BadParams("dimension must be at least 2");
  if (name == "randers") {
    reject_unknown(params, {"b", "kappa"}, name);
    return randers(params, n);
  }
  reject_unknown(params, {}, name);
  if (name == "euclid") return euclid(n);
  if (name == "polar") return polar(n);
  if (name == "riem-diag") return riem_diag(n);
  if (name == "quartic") return quartic(n);
  throw UnknownMetric("unknown metric '" + name + "'");
}

Metric resolve_metric(const std::string& spec, const Params& params, int n) {
  constexpr std::string_view prefix = "expr:";
  if (spec.rfind(prefix, 0) != 0) return builtin_metric(spec, params, n == 0 ? 2 : n);
  if (!params.empty()) throw BadParams("expression metrics take no parameters");
  const std::string source = spec.substr(prefix.size());
  if (n == 0) {
    // Parse with a generous bound, then take the dimension the text uses.
    n = std::max(2, max_coordinate_index(*parse_energy(source, 999)));
  }
  auto tree = parse_energy(source, n);
  return {spec, energy_from_expression(tree, n), std::nullopt, unit_box(n, -1.0), unit_box(n, 1.0),
          std::nullopt, std::nullopt};
}

}  // namespace finsler
