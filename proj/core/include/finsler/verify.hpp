#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/connections.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

/// Identity: the residual must vanish. Witness: the residual must exceed the
/// witness threshold (a distinction that is supposed to be visible). Info: a
/// statement reported for reference only; it never affects the outcome.
enum class CheckKind { Identity, Witness, Info };
enum class CheckStatus { Pass, Fail, Error, Skipped, Info };
enum class ToleranceClass { Strict, Exact, Oracle, Witness };

std::string to_string(CheckKind kind);
std::string to_string(CheckStatus status);

struct Tolerances {
  double strict = 1e-10;   // structural identities (symmetry of stored data)
  double exact = 1e-8;     // jet-exact identities
  double oracle = 1e-6;    // identities mixing independent evaluation paths
  double witness = 1e-3;   // lower bound for non-vanishing witnesses

  double get(ToleranceClass c) const;
};

struct CheckSpec {
  std::string_view id;
  std::string_view anchor;
  ToleranceClass tolerance;
  CheckKind kind;
};

/// Every registered check, in report order.
std::span<const CheckSpec> registry();

struct IdentityCheck {
  std::string id;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::Identity;
  CheckStatus status = CheckStatus::Pass;
  /// Reason for skipped/errored checks, empty otherwise.
  std::string note;

  bool pass() const noexcept { return status == CheckStatus::Pass; }
};

struct ReportSummary {
  int pass = 0;
  int fail = 0;
  int error = 0;
  int skipped = 0;
  int info = 0;
};

struct ResidualReport {
  std::string metric;
  int dim = 0;
  std::uint64_t seed = 0;
  int n_points = 0;
  std::vector<IdentityCheck> checks;

  ReportSummary summary() const;
  /// No check failed. Errored, skipped and info checks do not count against it.
  bool ok() const;
  const IdentityCheck* find(std::string_view id) const;
};

/// Deterministic sample: x uniform in the metric's base box, y uniform on the
/// annulus 0.5 <= |y| <= 2. The same (metric box, count, seed) always gives
/// the same points on every platform.
std::vector<TangentPoint> sample_points(const Metric& metric, int count, std::uint64_t seed);

/// Evaluates every registered check; residual = max over points (and
/// components). SingularMetric/DomainError at a point mark the affected checks
/// as errored instead of aborting. A non-empty `only` restricts the run to
/// those ids (reported in registry order); unknown ids throw BadParams.
ResidualReport run_suite(const Metric& metric, std::span<const TangentPoint> points, std::uint64_t seed,
                         const Tolerances& tolerances = {}, const std::vector<std::string>& only = {});

/// Samples `count` points with sample_points() and runs the suite.
ResidualReport run_suite(const Metric& metric, int count, std::uint64_t seed, const Tolerances& tolerances = {},
                         const std::vector<std::string>& only = {});

/// Difference between two connections in the process diagram together with
/// the difference it is supposed to be.
struct ConnectionDiff {
  ConnectionKind from;
  ConnectionKind to;
  Tensor<double> dV;  // V(to) - V(from)
  Tensor<double> dH;  // H(to) - H(from)
  std::string expected;  // "(C, 0)" or "(0, C')"
  double residual = 0.0;
};

/// Hashiguchi - Berwald = (C, 0), Cartan - Hashiguchi = (0, C'),
/// Chern - Berwald = (0, C'), Cartan - Chern = (C, 0).
std::vector<ConnectionDiff> compare_connections(const ScalarField& E, const TangentPoint& p);

}  // namespace finsler
