#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finsler/connections.hpp"
#include "finsler/geometry.hpp"
#include "finsler/verify.hpp"

namespace finsler::cli {

/// What `compute` evaluates at one point.
struct ComputeRequest {
  std::vector<ConnectionKind> connections;
  bool coeffs = true;
  bool torsion = true;
  bool curvature = true;
};

struct ComputeResult {
  std::string metric;
  TangentPoint point;
  double energy = 0.0;
  SprayData spray;
  struct PerConnection {
    ConnectionKind kind;
    std::optional<ConnectionCoefficients> coeffs;
    std::optional<TorsionComponents> torsion;
    std::optional<CurvatureComponents> curvature;
  };
  std::vector<PerConnection> connections;
};

ComputeResult compute(const std::string& metric_name, const ScalarField& E, const TangentPoint& p,
                      const ComputeRequest& request);

// JSON objects use std::map storage, so keys come out sorted.
nlohmann::json to_json(const ResidualReport& report, const Tolerances& tolerances);
nlohmann::json to_json(const ComputeResult& result);
nlohmann::json to_json(const std::string& metric, const TangentPoint& p, const std::vector<ConnectionDiff>& diffs);

std::string render_table(const ResidualReport& report);
std::string render_table(const ComputeResult& result);
std::string render_table(const std::string& metric, const TangentPoint& p, const std::vector<ConnectionDiff>& diffs);

}  // namespace finsler::cli
