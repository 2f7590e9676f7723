#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "quasieig/analysis.hpp"
#include "quasieig/cli.hpp"
#include "quasieig/matcore.hpp"
#include "report.hpp"

namespace qe::cli {

namespace {

constexpr std::array<std::string_view, 9> kSubcommands = {
    "quasi", "classify", "perron", "maxre", "perturb", "normal", "invariance", "oracle", "verify"};

// Offsets keep the seeded objects of one run independent of each other.
constexpr std::uint64_t kInvarianceStream = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kPerturbationStream = 0xbf58476d1ce4e5b9ull;

const std::vector<double> kContinuityAngles = {0.1, 0.05, 0.01, 0.001};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

/// Random D with ‖D‖ = 0.05·max(1, ‖A‖).
Matrix seeded_perturbation(const Matrix& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ kPerturbationStream);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix d(a.n(), a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) d(i, j) = unit(rng);
  return d * (0.05 * std::max(1.0, operator_norm(a)) / operator_norm(d));
}

Matrix seeded_change_of_variables(std::size_t n, std::uint64_t seed) {
  return random_orthogonal(n, seed ^ kInvarianceStream);
}

struct Oracle {
  MinimaxEstimate upper;
  MinimaxEstimate lower;
  TheoremReport report;
};

Oracle run_oracle(const Matrix& a, const Cone& c, const QuasiEigenResult& q, int grid_k) {
  Oracle o;
  o.upper = brute_minimax(a, c, grid_k);
  o.lower = brute_minimax_lower(a, c, grid_k);
  const double accuracy = 5.0 * std::max(operator_norm(a), 1e-300) / grid_k;
  const double gap = std::max({std::abs(q.lambda_upper - o.upper.sup_inf),
                               std::abs(q.lambda_lower - o.lower.sup_inf),
                               std::abs(o.upper.sup_inf - o.upper.inf_sup),
                               std::abs(o.lower.sup_inf - o.lower.inf_sup)});
  o.report.name = "oracle_agreement";
  o.report.lhs = gap;
  o.report.rhs = accuracy;
  o.report.slack = accuracy - gap;
  o.report.tolerance = 0.0;
  o.report.holds = o.report.slack >= 0.0;
  o.report.details = "largest of |bisection - grid| and |sup-inf - inf-sup| against 5|A|/grid_k";
  return o;
}

void add_pair(Report& r, const QuasiEigenResult& q) {
  r.lambda_upper = q.lambda_upper;
  r.lambda_lower = q.lambda_lower;
  r.u_right = q.u_right;
  r.v_left = q.v_left;
  r.flags.emplace_back("u_interior", q.u_interior);
  r.flags.emplace_back("v_interior", q.v_interior);
  r.flags.emplace_back("is_saddle", q.is_saddle);
  r.values.emplace_back("eigen_residual_right", q.eigen_residual_right);
  r.values.emplace_back("eigen_residual_left", q.eigen_residual_left);
}

void add_canonical_form(Report& r, const NormalCanonicalForm& f) {
  for (std::size_t i = 0; i < f.rotation_blocks.size(); ++i) {
    r.values.emplace_back("block" + std::to_string(i) + "_r", f.rotation_blocks[i].r);
    r.values.emplace_back("block" + std::to_string(i) + "_theta", f.rotation_blocks[i].theta);
  }
  for (std::size_t j = 0; j < f.real_eigs.size(); ++j)
    r.values.emplace_back("mu" + std::to_string(j), f.real_eigs[j]);
}

/// Exit code of a single-check subcommand.
int verdict(const TheoremReport& t) {
  if (!t.applicable) return kExitNotApplicable;
  return t.holds ? kExitOk : kExitCheckFailed;
}

int verdict(const std::vector<TheoremReport>& all) {
  for (const auto& t : all)
    if (t.applicable && !t.holds) return kExitCheckFailed;
  return kExitOk;
}

int dispatch(const RunConfig& cfg, const Matrix& a, const Cone& c, Report& r) {
  const std::string& cmd = cfg.subcommand;
  const double tol = cfg.tol;

  if (cmd == "quasi") {
    add_pair(r, quasi_pair(a, c, tol));
    return kExitOk;
  }
  if (cmd == "classify") {
    const auto k = classify(a);
    r.flags = {{"nonnegative", k.nonnegative},
               {"offdiag_nonneg", k.offdiag_nonneg},
               {"offdiag_nonpos", k.offdiag_nonpos},
               {"sign_constant_offdiag", k.sign_constant_offdiag},
               {"irreducible", k.irreducible},
               {"isc", k.isc},
               {"symmetric", k.symmetric},
               {"skew_symmetric", k.skew_symmetric},
               {"normal", k.normal}};
    r.values = {{"operator_norm", operator_norm(a)},
                {"spectral_radius", spectral_radius(a)},
                {"max_re", max_re(a)},
                {"min_re", min_re(a)},
                {"classify_tolerance", k.tolerance_used}};
    return kExitOk;
  }
  if (cmd == "perron" || cmd == "maxre") {
    r.theorem_reports.push_back(cmd == "perron" ? perron_check(a, tol) : max_re_check(a, tol));
    if (r.theorem_reports.back().applicable) {
      r.lambda_upper = r.theorem_reports.back().lhs;
    }
    return verdict(r.theorem_reports.back());
  }
  if (cmd == "perturb") {
    const Matrix d = cfg.perturbation_path ? parse_matrix_file(*cfg.perturbation_path)
                                           : seeded_perturbation(a, cfg.seed);
    if (d.n() != a.n()) throw Error(ErrorKind::DimensionMismatch, "perturbation has the wrong size");
    const auto q = quasi_pair(a, c, tol);
    add_pair(r, q);
    r.values.emplace_back("perturbation_norm", operator_norm(d));
    if (q.u_interior || q.v_interior) {
      const auto k = perturbation_constants(q, c);
      if (k.c1) r.values.emplace_back("c1", *k.c1);
      if (k.c2) r.values.emplace_back("c2", *k.c2);
      if (k.c0) r.values.emplace_back("c0", *k.c0);
    }
    r.theorem_reports.push_back(perturbation_bound_check(a, c, d, tol));
    return verdict(r.theorem_reports.back());
  }
  if (cmd == "normal") {
    const auto f = normal_canonical_form(a, tol);
    add_canonical_form(r, f);
    const auto t4 = theorem4_classify(a, c, tol);
    r.lambda_upper = t4.lambda_upper;
    r.lambda_lower = t4.lambda_lower;
    r.flags.emplace_back("mixed_subspaces", t4.mixed);
    r.values.emplace_back("predicted_case", t4.predicted_case);
    r.values.emplace_back("predicted_upper", t4.predicted_upper);
    r.values.emplace_back("predicted_lower", t4.predicted_lower);
    r.theorem_reports.push_back(t4.report);
    r.theorem_reports.push_back(bounds_check(a, c, tol));
    return verdict(r.theorem_reports);
  }
  if (cmd == "invariance") {
    r.theorem_reports.push_back(
        invariance_check(a, c, seeded_change_of_variables(a.n(), cfg.seed), tol));
    return verdict(r.theorem_reports.back());
  }
  if (cmd == "oracle") {
    const auto q = quasi_pair(a, c, tol);
    const Oracle o = run_oracle(a, c, q, cfg.grid_k);
    r.lambda_upper = q.lambda_upper;
    r.lambda_lower = q.lambda_lower;
    r.values = {{"sup_inf", o.upper.sup_inf},
                {"inf_sup", o.upper.inf_sup},
                {"lower_sup_inf", o.lower.sup_inf},
                {"lower_inf_sup", o.lower.inf_sup},
                {"grid_k", cfg.grid_k}};
    r.theorem_reports.push_back(o.report);
    return verdict(r.theorem_reports.back());
  }

  // verify: every check that can run on this instance.
  const auto q = quasi_pair(a, c, tol);
  add_pair(r, q);
  auto& out = r.theorem_reports;
  out.push_back(bounds_check(a, c, tol));
  out.push_back(perron_check(a, tol));
  out.push_back(max_re_check(a, tol));
  out.push_back(isc_check(a, tol));
  out.push_back(invariance_check(a, c, seeded_change_of_variables(a.n(), cfg.seed), tol));
  out.push_back(perturbation_bound_check(a, c, seeded_perturbation(a, cfg.seed), tol));
  if (q.u_interior && q.v_interior && a.n() >= 2) {
    out.push_back(cone_continuity_experiment(a, c, kContinuityAngles, tol, cfg.seed).report);
  } else {
    out.push_back(TheoremReport::not_applicable(
        "cone_continuity", "quasi-eigenvectors are not both interior"));
  }
  if (classify(a).normal) {
    out.push_back(theorem4_classify(a, c, tol).report);
  } else {
    out.push_back(TheoremReport::not_applicable("theorem4", "matrix is not normal"));
  }
  if (a.n() == 2 || a.n() == 3) {
    out.push_back(run_oracle(a, c, q, cfg.grid_k).report);
  } else {
    out.push_back(TheoremReport::not_applicable("oracle_agreement", "grid oracle needs n in {2, 3}"));
  }
  return verdict(out);
}

}  // namespace

void validate(const RunConfig& config) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), config.subcommand) == kSubcommands.end())
    throw Error(ErrorKind::InvalidArgument, "unknown subcommand '" + config.subcommand + "'");
  if (!(config.tol > 0.0 && config.tol <= 1e-2))
    throw Error(ErrorKind::InvalidArgument, "tol must lie in (0, 1e-2]");
  if (config.grid_k < 10) throw Error(ErrorKind::InvalidArgument, "grid must be at least 10");
}

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    validate(config);
    const std::string bytes = read_file(config.matrix_path);
    const Matrix a = parse_matrix(bytes, config.matrix_path.string());
    const Cone c = resolve_cone(config.cone_spec, a.n());

    Report report;
    report.subcommand = config.subcommand;
    report.input_digest = hex64(fnv1a(bytes));
    report.tol = config.tol;
    report.seed = config.seed;
    result.exit_code = dispatch(config, a, c, report);
    result.out = config.output == OutputFormat::Json ? to_json(report) : to_human(report);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kExitNumerical;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace qe::cli
