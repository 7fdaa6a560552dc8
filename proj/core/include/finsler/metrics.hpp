#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsler/expr.hpp"
#include "finsler/jets.hpp"

namespace finsler {

/// Named numeric parameters, e.g. {"b", {0.1, 0.0}}.
using Params = std::map<std::string, std::vector<double>>;

/// An energy function together with where it may be sampled.
struct Metric {
  std::string name;
  ScalarField energy;
  /// True/false when known a priori; empty for user expressions.
  std::optional<bool> riemannian;
  /// Base-coordinate sampling box; fibers are sampled on 0.5 <= |y| <= 2.
  std::vector<double> base_lo;
  std::vector<double> base_hi;
  /// Documented point where non-Riemannian distinctions are measurable.
  std::optional<TangentPoint> witness;
  /// True when E depends on y only (flat Barthel connection); empty if unknown.
  std::optional<bool> locally_minkowski;
};

/// Names accepted by builtin_metric, in a stable order.
std::vector<std::string> builtin_names();

/// Builtin energies:
///   euclid     E = |y|^2 / 2
///   polar      E = ((y1)^2 + (x1 y2)^2) / 2, n = 2 only
///   riem-diag  E = sum a_i(x) (y^i)^2 / 2,
///              a_i = 1 + x_{i+1}^2 + x_i x_{i+1} / 2 + x_i^2 / 4 (indices mod n)
///   randers    E = (|y| + b(x).y)^2 / 2, b_i(x) = b_i + kappa x_{i+1 mod n};
///              params b (default (0.1, 0, ..)) and kappa (default 0.2)
///   quartic    E = sqrt(sum (y^i)^4) / 2
/// Throws UnknownMetric or BadParams.
Metric builtin_metric(const std::string& name, const Params& params, int n);

/// A builtin name or "expr:<source>". For expressions n = 0 infers the
/// dimension from the highest coordinate index (at least 2).
Metric resolve_metric(const std::string& spec, const Params& params, int n);

}  // namespace finsler
