#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "finsler/errors.hpp"
#include "finsler/metrics.hpp"
#include "report.hpp"

namespace finsler::cli {

namespace {

struct Common {
  std::string metric;
  std::vector<std::string> params;
  int dim = 0;
  std::string format = "json";
};

Params parse_params(const std::vector<std::string>& items) {
  Params out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw BadParams("parameter '" + item + "' is not of the form key=v1,v2");
    std::vector<double> values;
    std::stringstream ss(item.substr(eq + 1));
    for (std::string tok; std::getline(ss, tok, ',');) {
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw BadParams("parameter '" + item + "' has a malformed number '" + tok + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) throw BadParams("parameter '" + item + "' has no value");
    out[item.substr(0, eq)] = std::move(values);
  }
  return out;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw BadParams("seed '" + text + "' is not a non-negative integer");
  }
  return v;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--metric", c.metric, "builtin name or expr:<energy>")->required();
  app->add_option("--param", c.params, "metric parameter key=v1,v2,... (repeatable)");
  app->add_option("--dim", c.dim, "dimension (builtins default to 2; expressions infer it)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
}

// Only the requested format is rendered.
template <class Json, class Table>
void emit(std::ostream& out, const std::string& format, const Json& json_fn, const Table& table_fn) {
  if (format == "json") {
    out << json_fn().dump(2) << '\n';
  } else {
    out << table_fn();
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical Finsler geometry: connections, curvature and identity checks", "finsler"};
  app.require_subcommand(1);

  Common common;
  std::string point;
  std::string connection = "all";
  std::string what = "all";
  int n_points = 20;
  std::uint64_t seed = 7;
  Tolerances tol;

  auto* compute_cmd = app.add_subcommand("compute", "print connection coefficients, torsion and curvature");
  add_common(compute_cmd, common);
  compute_cmd->add_option("--point", point, "tangent vector \"x1,..,xn;y1,..,yn\"")->required();
  compute_cmd->add_option("--connection", connection, "berwald|cartan|chern|hashiguchi|all");
  compute_cmd->add_option("--what", what, "coeffs|torsion|curvature|all")
      ->check(CLI::IsMember({"coeffs", "torsion", "curvature", "all"}));

  auto* verify_cmd = app.add_subcommand("verify", "run the identity suite on seeded sample points");
  add_common(verify_cmd, common);
  verify_cmd->add_option("--points", n_points, "number of sample points")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "sampling seed (FINSLER_SEED overrides)");
  verify_cmd->add_option("--tol-exact", tol.exact, "tolerance for jet-exact identities")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol-oracle", tol.oracle, "tolerance for oracle comparisons")
      ->check(CLI::PositiveNumber);

  auto* compare_cmd = app.add_subcommand("compare", "differences between adjacent connections");
  add_common(compare_cmd, common);
  compare_cmd->add_option("--point", point, "tangent vector \"x1,..,xn;y1,..,yn\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Metric metric = resolve_metric(common.metric, parse_params(common.params), common.dim);
    const int n = metric.energy.dim();
    auto parse_point = [&] {
      auto p = TangentPoint::parse(point);
      if (p.dim() != n) {
        throw DomainError("point has dimension " + std::to_string(p.dim()) + ", metric has " + std::to_string(n));
      }
      return p;
    };

    if (compute_cmd->parsed()) {
      const auto p = parse_point();
      ComputeRequest req;
      if (connection == "all") {
        req.connections.assign(kAllConnections.begin(), kAllConnections.end());
      } else {
        req.connections = {parse_connection_kind(connection)};
      }
      req.coeffs = what == "all" || what == "coeffs";
      req.torsion = what == "all" || what == "torsion";
      req.curvature = what == "all" || what == "curvature";
      const auto r = compute(metric.name, metric.energy, p, req);
      emit(out, common.format, [&] { return to_json(r); }, [&] { return render_table(r); });
      return kOk;
    }

    if (compare_cmd->parsed()) {
      const auto p = parse_point();
      const auto diffs = compare_connections(metric.energy, p);
      emit(
          out, common.format, [&] { return to_json(metric.name, p, diffs); },
          [&] { return render_table(metric.name, p, diffs); });
      for (const auto& d : diffs) {
        if (!(d.residual <= tol.exact)) return kCheckFailed;
      }
      return kOk;
    }

    if (const char* env = std::getenv("FINSLER_SEED"); env != nullptr) seed = parse_seed(env);
    const auto report = run_suite(metric, n_points, seed, tol);
    emit(out, common.format, [&] { return to_json(report, tol); }, [&] { return render_table(report); });
    return report.ok() ? kOk : kCheckFailed;
  } catch (const SingularMetric& e) {
    err << "finsler: numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "finsler: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace finsler::cli
