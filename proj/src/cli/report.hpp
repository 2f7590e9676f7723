#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasieig/analysis.hpp"
#include "quasieig/matrix.hpp"

namespace qe::cli {

struct Report {
  std::string subcommand;
  std::string input_digest;
  std::optional<double> lambda_upper;
  std::optional<double> lambda_lower;
  std::optional<Vector> u_right;
  std::optional<Vector> v_left;
  std::vector<std::pair<std::string, bool>> flags;
  /// Named scalars specific to the subcommand (oracle values, constants, ...).
  std::vector<std::pair<std::string, double>> values;
  std::vector<TheoremReport> theorem_reports;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

std::string to_json(const Report& r);
std::string to_human(const Report& r);

}  // namespace qe::cli
