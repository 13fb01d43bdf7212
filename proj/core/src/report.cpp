#include "hylab/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace hylab {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json config_json(const ExperimentConfig& c) {
  return {{"p", {c.p.p(0), c.p.p(1), c.p.p(2)}},
          {"d", c.d},
          {"gh_nodes", c.gh_nodes},
          {"mc_samples", c.mc_samples},
          {"seed", c.seed},
          {"tol", c.tol},
          {"lambda_grid", c.lambda_grid},
          {"eps_grid", c.eps_grid},
          {"mode_alpha", c.mode_alpha},
          {"mode_amplitude", c.mode_amplitude}};
}

json rows_json(const ExperimentTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"grid_value", number(r.grid_value)},
                    {"phi", number(r.phi)},
                    {"phi_err", number(r.phi_err)},
                    {"deficit", number(r.deficit)},
                    {"deficit_err", number(r.deficit_err)},
                    {"dist_upper", number(r.dist_upper)},
                    {"converged", r.converged},
                    {"quadrature_gap", number(r.quadrature_gap)},
                    {"evaluations", r.evaluations}});
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string field_text(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_field(v);
        } else {
          return std::to_string(v);
        }
      },
      f.value);
}

}  // namespace

std::string table_csv(const ExperimentTable& t) {
  std::string out = "grid_value,phi,deficit,deficit_err,dist_upper,converged\n";
  for (const auto& r : t.rows) {
    out += format_double(r.grid_value) + "," + format_double(r.phi) + "," + format_double(r.deficit) + "," +
           format_double(r.deficit_err) + "," + format_double(r.dist_upper) + "," + (r.converged ? "true" : "false") +
           "\n";
  }
  return out;
}

std::string table_json(const ExperimentTable& t, const ExperimentConfig& config) {
  return dump({{"experiment", t.name}, {"grid", t.grid_name}, {"config", config_json(config)}, {"rows", rows_json(t)}});
}

std::string fit_csv(const ExponentFit& fit) { return table_csv(fit.table); }

std::string fit_json(const ExponentFit& fit, const ExperimentConfig& config) {
  return dump({{"experiment", fit.table.name},
               {"grid", fit.table.grid_name},
               {"config", config_json(config)},
               {"rows", rows_json(fit.table)},
               {"fit",
                {{"slope", number(fit.slope)},
                 {"intercept", number(fit.intercept)},
                 {"r_squared", number(fit.r_squared)},
                 {"points", fit.log_dist.size()},
                 {"degenerate", fit.degenerate}}}});
}

std::string verify_csv(const VerifyReport& r) {
  std::string out = "check,pass,measured,tolerance,detail\n";
  for (const auto& c : r.checks) {
    out += csv_field(c.name) + "," + (c.pass ? "true" : "false") + "," + format_double(c.measured) + "," +
           format_double(c.tolerance) + "," + csv_field(c.detail) + "\n";
  }
  return out;
}

std::string verify_json(const VerifyReport& r, const ExperimentConfig& config) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", number(c.measured)},
                      {"tolerance", number(c.tolerance)},
                      {"detail", c.detail}});
  }
  return dump({{"experiment", "verify"}, {"config", config_json(config)}, {"checks", checks}, {"failures", r.failures()}});
}

std::string record_csv(const std::vector<Field>& fields) {
  std::string head, row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      head += ",";
      row += ",";
    }
    head += csv_field(fields[i].name);
    row += field_text(fields[i]);
  }
  return head + "\n" + row + "\n";
}

std::string record_json(const std::vector<Field>& fields, const ExperimentConfig& config) {
  json rec = json::object();
  for (const auto& f : fields) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            rec[f.name] = number(v);
          } else {
            rec[f.name] = v;
          }
        },
        f.value);
  }
  return dump({{"config", config_json(config)}, {"result", rec}});
}

}  // namespace hylab
