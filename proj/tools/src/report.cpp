#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace finsler::cli {

namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json nested(const Tensor<double>& t, std::size_t& pos, int depth) {
  json out = json::array();
  for (int i = 0; i < t.extent(); ++i) {
    if (depth + 1 == t.rank()) {
      out.push_back(number(t.flat()[pos++]));
    } else {
      out.push_back(nested(t, pos, depth + 1));
    }
  }
  return out;
}

// Index-nested arrays in storage order.
json tensor_json(const Tensor<double>& t) {
  std::size_t pos = 0;
  if (t.empty()) return json::array();
  if (t.rank() == 0) return number(t.flat()[0]);
  return nested(t, pos, 0);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// "name^1_23 = value" lines with 1-based indices; `upper` leading indices go
// up, the rest down.
void tensor_lines(std::ostringstream& os, const std::string& name, const Tensor<double>& t, int upper) {
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    t.unflatten(pos, idx);
    std::string up, down;
    for (int r = 0; r < t.rank(); ++r) {
      (r < upper ? up : down) += std::to_string(idx[static_cast<std::size_t>(r)] + 1);
    }
    os << "  " << name;
    if (!up.empty()) os << '^' << up;
    if (!down.empty()) os << '_' << down;
    os << " = " << fmt(t.flat()[pos]) << '\n';
  }
}

Tensor<double> vector_tensor(const std::vector<double>& v) {
  Tensor<double> t(static_cast<int>(v.size()), 1);
  std::copy(v.begin(), v.end(), t.flat().begin());
  return t;
}

}  // namespace

ComputeResult compute(const std::string& metric_name, const ScalarField& E, const TangentPoint& p,
                      const ComputeRequest& request) {
  ComputeResult out{metric_name, p, E(p), nonlinear_connection(E, p), {}};
  for (auto kind : request.connections) {
    ComputeResult::PerConnection c{kind, {}, {}, {}};
    if (request.coeffs) c.coeffs = coefficients(kind, E, p);
    if (request.torsion) c.torsion = torsion(kind, E, p);
    if (request.curvature) c.curvature = curvature(kind, E, p);
    out.connections.push_back(std::move(c));
  }
  return out;
}

json to_json(const ResidualReport& report, const Tolerances& tolerances) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item{{"id", c.id},
              {"anchor", c.anchor},
              {"kind", to_string(c.kind)},
              {"status", to_string(c.status)},
              {"pass", c.pass()},
              {"residual", number(c.residual)},
              {"tolerance", c.tolerance}};
    if (c.status == CheckStatus::Error) {
      item["error"] = c.note;
    } else if (!c.note.empty()) {
      item["note"] = c.note;
    }
    checks.push_back(std::move(item));
  }
  const auto s = report.summary();
  return json{{"metric", report.metric},
              {"dim", report.dim},
              {"seed", report.seed},
              {"n_points", report.n_points},
              {"tolerances",
               {{"strict", tolerances.strict},
                {"exact", tolerances.exact},
                {"oracle", tolerances.oracle},
                {"witness", tolerances.witness}}},
              {"summary",
               {{"pass", s.pass}, {"fail", s.fail}, {"error", s.error}, {"skipped", s.skipped}, {"info", s.info}}},
              {"checks", std::move(checks)}};
}

json to_json(const ComputeResult& r) {
  json conns = json::object();
  for (const auto& c : r.connections) {
    json item = json::object();
    if (c.coeffs) item["coefficients"] = {{"V", tensor_json(c.coeffs->V)}, {"H", tensor_json(c.coeffs->H)}};
    if (c.torsion) {
      item["torsion"] = {{"hh", tensor_json(c.torsion->hh)},
                         {"hv_vertical", tensor_json(c.torsion->hv_vertical)},
                         {"hv_horizontal", tensor_json(c.torsion->hv_horizontal)},
                         {"vv", tensor_json(c.torsion->vv)}};
    }
    if (c.curvature) {
      item["curvature"] = {{"R", tensor_json(c.curvature->Rh)},
                           {"P", tensor_json(c.curvature->Phv)},
                           {"Q", tensor_json(c.curvature->Qv)}};
    }
    conns[to_string(c.kind)] = std::move(item);
  }
  return json{{"metric", r.metric},
              {"point", r.point.to_string()},
              {"energy", number(r.energy)},
              {"spray", {{"G", tensor_json(vector_tensor(r.spray.G))}, {"N", tensor_json(r.spray.N)}}},
              {"connections", std::move(conns)}};
}

json to_json(const std::string& metric, const TangentPoint& p, const std::vector<ConnectionDiff>& diffs) {
  json items = json::array();
  for (const auto& d : diffs) {
    items.push_back({{"from", to_string(d.from)},
                     {"to", to_string(d.to)},
                     {"expected", d.expected},
                     {"residual", number(d.residual)},
                     {"dV", tensor_json(d.dV)},
                     {"dH", tensor_json(d.dH)}});
  }
  return json{{"metric", metric}, {"point", p.to_string()}, {"diffs", std::move(items)}};
}

std::string render_table(const ResidualReport& report) {
  std::size_t wid = 5;
  for (const auto& c : report.checks) wid = std::max(wid, c.id.size());
  std::ostringstream os;
  os << "metric " << report.metric << "  dim " << report.dim << "  points " << report.n_points << "  seed "
     << report.seed << "\n\n";
  os << std::left << std::setw(static_cast<int>(wid)) << "check" << "  " << std::setw(8) << "kind" << "  "
     << std::setw(7) << "status" << "  " << std::right << std::setw(10) << "residual" << "  " << std::setw(9)
     << "tolerance" << "  anchor\n";
  for (const auto& c : report.checks) {
    os << std::left << std::setw(static_cast<int>(wid)) << c.id << "  " << std::setw(8) << to_string(c.kind)
       << "  " << std::setw(7) << to_string(c.status) << "  " << std::right << std::setw(10) << sci(c.residual)
       << "  " << std::setw(9) << sci(c.tolerance) << "  " << c.anchor;
    if (!c.note.empty()) os << "  [" << c.note << ']';
    os << '\n';
  }
  const auto s = report.summary();
  os << '\n'
     << s.pass << " passed, " << s.fail << " failed, " << s.error << " errored, " << s.skipped << " skipped, "
     << s.info << " informational\n";
  return os.str();
}

std::string render_table(const ComputeResult& r) {
  std::ostringstream os;
  os << "metric " << r.metric << " at " << r.point.to_string() << "\n";
  os << "  E = " << fmt(r.energy) << "\n\nspray\n";
  tensor_lines(os, "G", vector_tensor(r.spray.G), 1);
  tensor_lines(os, "N", r.spray.N, 1);
  for (const auto& c : r.connections) {
    os << '\n' << to_string(c.kind) << '\n';
    if (c.coeffs) {
      tensor_lines(os, "V", c.coeffs->V, 1);
      tensor_lines(os, "H", c.coeffs->H, 1);
    }
    if (c.torsion) {
      tensor_lines(os, "T_hh", c.torsion->hh, 1);
      tensor_lines(os, "T_hv_vertical", c.torsion->hv_vertical, 1);
      tensor_lines(os, "T_hv_horizontal", c.torsion->hv_horizontal, 1);
      tensor_lines(os, "T_vv", c.torsion->vv, 1);
    }
    if (c.curvature) {
      tensor_lines(os, "R", c.curvature->Rh, 1);
      tensor_lines(os, "P", c.curvature->Phv, 1);
      tensor_lines(os, "Q", c.curvature->Qv, 1);
    }
  }
  return os.str();
}

std::string render_table(const std::string& metric, const TangentPoint& p, const std::vector<ConnectionDiff>& diffs) {
  std::ostringstream os;
  os << "metric " << metric << " at " << p.to_string() << "\n\n";
  os << std::left << std::setw(24) << "difference" << "  " << std::setw(9) << "expected" << "  " << std::right
     << std::setw(10) << "max |dV|" << "  " << std::setw(10) << "max |dH|" << "  " << std::setw(10) << "residual"
     << '\n';
  for (const auto& d : diffs) {
    os << std::left << std::setw(24) << (to_string(d.to) + " - " + to_string(d.from)) << "  " << std::setw(9)
       << d.expected << "  " << std::right << std::setw(10) << sci(max_abs(d.dV)) << "  " << std::setw(10)
       << sci(max_abs(d.dH)) << "  " << std::setw(10) << sci(d.residual) << '\n';
  }
  return os.str();
}

}  // namespace finsler::cli
