#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hylab/lab.hpp"

namespace hylab {

/// Named scalar for single-record outputs.
struct Field {
  std::string name;
  std::variant<double, std::int64_t, bool, std::string> value;
};

/// Doubles are written with 17 significant digits; strings are quoted when needed.
std::string csv_field(const std::string& s);
std::string format_double(double v);

/// Header grid_value,phi,deficit,deficit_err,dist_upper,converged plus one line per row.
std::string table_csv(const ExperimentTable& t);
std::string table_json(const ExperimentTable& t, const ExperimentConfig& config);

std::string fit_csv(const ExponentFit& fit);
std::string fit_json(const ExponentFit& fit, const ExperimentConfig& config);

std::string verify_csv(const VerifyReport& r);
std::string verify_json(const VerifyReport& r, const ExperimentConfig& config);

std::string record_csv(const std::vector<Field>& fields);
std::string record_json(const std::vector<Field>& fields, const ExperimentConfig& config);

}  // namespace hylab
