#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "quasieig/cones.hpp"
#include "quasieig/error.hpp"
#include "quasieig/matrix.hpp"
#include "quasieig/quasi.hpp"

namespace qe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotApplicable = 2;
inline constexpr int kExitNumerical = 3;
/// A check ran but at least one applicable report does not hold.
inline constexpr int kExitCheckFailed = 4;

enum class OutputFormat { Human, Json };

struct RunConfig {
  /// quasi | classify | perron | maxre | perturb | normal | invariance | oracle | verify
  std::string subcommand;
  std::filesystem::path matrix_path;
  /// "orthant", an integer rotation seed, or a path to an orthogonal matrix.
  std::string cone_spec = "orthant";
  double tol = kDefaultTol;
  int grid_k = 2000;
  std::uint64_t seed = 0;
  OutputFormat output = OutputFormat::Human;
  /// Perturbation D for `perturb`; a seeded random D when absent.
  std::optional<std::filesystem::path> perturbation_path;
};

/// Throws InvalidArgument when tol ∉ (0, 1e-2], grid_k < 10 or the
/// subcommand is unknown.
void validate(const RunConfig& config);

/// Either {"n": int, "rows": [[...], ...]} or whitespace text (n, then n rows
/// of n reals). Throws ParseError (with line:column), NonSquare, NonFinite.
Matrix parse_matrix(std::string_view text, std::string_view source = "<input>");
Matrix parse_matrix_file(const std::filesystem::path& path);

/// The JSON matrix format, 17 significant digits per entry.
std::string matrix_to_json(const Matrix& m);

/// printf("%.17g"); non-finite values become "null".
std::string format_number(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Throws InvalidArgument for unreadable specs and NotOrthogonal for matrix
/// files failing ‖UᵀU − I‖ ≤ 1e-10.
Cone resolve_cone(const std::string& spec, std::size_t n);

int exit_code_for(ErrorKind kind);

struct RunResult {
  int exit_code = kExitOk;
  /// What the tool prints on stdout.
  std::string out;
  /// What the tool prints on stderr.
  std::string err;
};

/// Never throws for library errors; they map to exit codes.
RunResult run(const RunConfig& config);

}  // namespace qe::cli
