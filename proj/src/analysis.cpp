#include "quasieig/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "quasieig/error.hpp"
#include "quasieig/matcore.hpp"

namespace qe {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Accumulates named inequalities of the form lhs ≤ rhs (slack = rhs − lhs).
class InequalityLog {
 public:
  void le(const std::string& label, double lhs, double rhs) {
    const double slack = rhs - lhs;
    if (count_ == 0 || slack < worst_) {
      worst_ = slack;
      lhs_ = lhs;
      rhs_ = rhs;
    }
    ++count_;
    if (!text_.empty()) text_ += "; ";
    text_ += label + ": " + num(lhs) + " <= " + num(rhs) + " (slack " + num(slack) + ")";
  }
  void ge(const std::string& label, double lhs, double rhs) {
    const double slack = lhs - rhs;
    if (count_ == 0 || slack < worst_) {
      worst_ = slack;
      lhs_ = lhs;
      rhs_ = rhs;
    }
    ++count_;
    if (!text_.empty()) text_ += "; ";
    text_ += label + ": " + num(lhs) + " >= " + num(rhs) + " (slack " + num(slack) + ")";
  }
  void note(const std::string& s) {
    if (!text_.empty()) text_ += "; ";
    text_ += s;
  }

  /// Fills lhs/rhs/slack/details; `extra_ok` carries non-numeric conditions.
  TheoremReport finish(std::string name, double tolerance, bool extra_ok = true) const {
    TheoremReport r;
    r.name = std::move(name);
    r.tolerance = tolerance;
    r.lhs = lhs_;
    r.rhs = rhs_;
    r.slack = count_ == 0 ? 0.0 : worst_;
    r.holds = extra_ok && r.slack >= -tolerance;
    r.details = text_;
    return r;
  }

 private:
  int count_ = 0;
  double worst_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  std::string text_;
};

double midpoint(const QuasiEigenResult& q) { return 0.5 * (q.lambda_upper + q.lambda_lower); }

}  // namespace

TheoremReport TheoremReport::not_applicable(std::string name, std::string why) {
  TheoremReport r;
  r.name = std::move(name);
  r.applicable = false;
  r.holds = false;
  r.details = std::move(why);
  return r;
}

// ---------------------------------------------------------------------------
// Perron / Birkhoff–Varga style bounds

TheoremReport perron_check(const Matrix& a, double tol) {
  const auto cls = classify(a);
  if (!cls.nonnegative) return TheoremReport::not_applicable("perron", "matrix has negative entries");

  const double upper = upper_quasi_eigenvalue(a, Cone::orthant(a.n()), tol).value;
  const auto values = eigenvalues(a);
  double rho = 0.0;
  bool matches_modulus = false;
  for (const auto& lambda : values) {
    rho = std::max(rho, std::abs(lambda));
    if (std::abs(upper - std::abs(lambda)) <= tol) matches_modulus = true;
  }

  InequalityLog log;
  log.ge("upper >= rho", upper, rho);
  if (matches_modulus) {
    log.note("upper matches an eigenvalue modulus: equality branch");
    log.le("upper <= rho", upper, rho);
  }
  return log.finish("perron", tol);
}

TheoremReport max_re_check(const Matrix& a, double tol) {
  const auto cls = classify(a);
  if (!cls.offdiag_nonneg) {
    return TheoremReport::not_applicable("max_re", "matrix has negative off-diagonal entries");
  }

  const double upper = upper_quasi_eigenvalue(a, Cone::orthant(a.n()), tol).value;
  const auto values = eigenvalues(a);
  double best = values.front().real();
  bool matches_real_part = false;
  for (const auto& lambda : values) {
    best = std::max(best, lambda.real());
    if (std::abs(upper - lambda.real()) <= tol) matches_real_part = true;
  }

  InequalityLog log;
  log.ge("upper >= max Re", upper, best);
  if (matches_real_part) {
    log.note("upper matches a real part: equality branch");
    log.le("upper <= max Re", upper, best);
  }
  return log.finish("max_re", tol);
}

TheoremReport isc_check(const Matrix& a, double tol) {
  const auto cls = classify(a);
  if (!cls.isc) {
    return TheoremReport::not_applicable(
        "isc", cls.irreducible ? "off-diagonal entries change sign" : "matrix is reducible");
  }

  const QuasiEigenResult q = quasi_pair(a, Cone::orthant(a.n()), tol);
  const double lambda = midpoint(q);

  // Simplicity: exactly one eigenvalue in a small disc around λ.
  const auto values = eigenvalues(a);
  const double radius = 1e-6 * std::max(1.0, std::abs(lambda));
  int nearby = 0;
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& mu : values) {
    const double dist = std::abs(mu - std::complex<double>(lambda, 0.0));
    nearest = std::min(nearest, dist);
    if (dist <= radius) ++nearby;
  }

  InequalityLog log;
  log.le("|upper - lower|", std::abs(q.lambda_upper - q.lambda_lower), 2.0 * tol);
  log.le("right residual", q.eigen_residual_right, 100.0 * tol);
  log.le("left residual", q.eigen_residual_left, 100.0 * tol);
  log.le("distance to spectrum", nearest, tol);
  const bool ok = q.is_saddle && q.u_interior && q.v_interior && nearby == 1;
  log.note(std::string("saddle=") + (q.is_saddle ? "yes" : "no") +
           " u_interior=" + (q.u_interior ? "yes" : "no") +
           " v_interior=" + (q.v_interior ? "yes" : "no") +
           " eigenvalues within " + num(radius) + ": " + std::to_string(nearby));
  TheoremReport r = log.finish("isc", tol, ok);
  r.lhs = q.lambda_upper;
  r.rhs = q.lambda_lower;
  return r;
}

// ---------------------------------------------------------------------------
// Perturbation bounds

PerturbationBound perturbation_constants(const QuasiEigenResult& q, const Cone& c) {
  if (!q.u_interior && !q.v_interior) {
    throw Error(ErrorKind::NotInterior, "neither quasi-eigenvector is interior");
  }
  PerturbationBound b;
  b.u_interior = q.u_interior;
  b.v_interior = q.v_interior;
  // sup over unit u ∈ C of 1/⟨u, ŵ⟩ sits on an extreme ray.
  if (q.v_interior) {
    const Vector v = q.v_left * (1.0 / q.v_left.norm());
    b.c1 = 1.0 / c.to_ray_coords(v).min();
  }
  if (q.u_interior) {
    const Vector u = q.u_right * (1.0 / q.u_right.norm());
    b.c2 = 1.0 / c.to_ray_coords(u).min();
  }
  if (b.c1 && b.c2) b.c0 = std::max(*b.c1, *b.c2);
  return b;
}

PerturbationBound perturbation_constants(const Matrix& a, const Cone& c, double tol) {
  return perturbation_constants(quasi_pair(a, c, tol), c);
}

TheoremReport perturbation_bound_check(const Matrix& a, const Cone& c, const Matrix& d,
                                       double tol) {
  const QuasiEigenResult base = quasi_pair(a, c, tol);
  if (!base.u_interior && !base.v_interior) {
    return TheoremReport::not_applicable("perturbation",
                                         "neither quasi-eigenvector of A is interior");
  }
  const PerturbationBound k = perturbation_constants(base, c);
  const QuasiEigenResult pert = quasi_pair(a + d, c, tol);
  const double dn = operator_norm(d);

  bool d_nonpos = true;
  bool d_nonneg = true;
  for (double x : d.data()) {
    if (x > 0.0) d_nonpos = false;
    if (x < 0.0) d_nonneg = false;
  }

  InequalityLog log;
  if (k.c1) {
    log.le("upper(A+D) - lower(A) <= c1|D|", pert.lambda_upper - base.lambda_lower, *k.c1 * dn);
    if (d_nonpos) log.le("D<=0: upper(A+D) <= lower(A)", pert.lambda_upper, base.lambda_lower);
  }
  if (k.c2) {
    log.ge("lower(A+D) - upper(A) >= -c2|D|", pert.lambda_lower - base.lambda_upper, -*k.c2 * dn);
    if (d_nonneg) log.ge("D>=0: lower(A+D) >= upper(A)", pert.lambda_lower, base.lambda_upper);
  }
  if (k.c0) {
    const double lambda = midpoint(base);
    log.le("|upper(A+D) - lambda| <= c0|D|", std::abs(pert.lambda_upper - lambda), *k.c0 * dn);
    log.le("|lower(A+D) - lambda| <= c0|D|", std::abs(pert.lambda_lower - lambda), *k.c0 * dn);
    if (c.kind() == Cone::Kind::Orthant && classify(a).isc) {
      log.le("isc continuity: max deviation <= c0|D|",
             std::max(std::abs(pert.lambda_upper - lambda), std::abs(pert.lambda_lower - lambda)),
             *k.c0 * dn);
    }
  }
  return log.finish("perturbation", tol);
}

// ---------------------------------------------------------------------------
// Cone continuity

ContinuityExperiment cone_continuity_experiment(const Matrix& a, const Cone& c,
                                                const std::vector<double>& angles, double tol,
                                                std::uint64_t seed) {
  const QuasiEigenResult base = quasi_pair(a, c, tol);
  if (!base.u_interior || !base.v_interior) {
    throw Error(ErrorKind::NotInterior, "cone continuity needs interior quasi-eigenvectors");
  }
  const double lambda = midpoint(base);
  const std::size_t n = a.n();
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "rotations need n >= 2");

  std::mt19937_64 rng(seed);
  const std::size_t i = rng() % n;
  std::size_t j = rng() % (n - 1);
  if (j >= i) ++j;

  ContinuityExperiment ex;
  const double noise = 20.0 * tol;
  for (double theta : angles) {
    const Cone rotated = c.transformed(givens_rotation(n, i, j, theta));
    const QuasiEigenResult q = quasi_pair(a, rotated, tol);
    ContinuitySample s;
    s.theta = theta;
    s.distance = cone_metric(c, rotated).value;
    s.deviation = std::max(std::abs(q.lambda_upper - lambda), std::abs(q.lambda_lower - lambda));
    if (s.distance > 0.0) {
      s.ratio = s.deviation / s.distance;
    } else {
      s.ratio = s.deviation <= noise ? 0.0 : std::numeric_limits<double>::infinity();
    }
    ex.samples.push_back(s);
  }

  // Bounded as θ → 0: the ratio at the smallest angle may not exceed twice
  // the largest ratio seen at the other angles, beyond the numerical floor.
  auto by_angle = ex.samples;
  std::sort(by_angle.begin(), by_angle.end(),
            [](const auto& x, const auto& y) { return std::abs(x.theta) > std::abs(y.theta); });
  bool finite = true;
  for (const auto& s : by_angle) {
    finite = finite && std::isfinite(s.ratio);
    ex.c3_estimate = std::max(ex.c3_estimate, s.ratio);
  }

  InequalityLog log;
  if (by_angle.size() >= 2 && finite) {
    const auto& smallest = by_angle.back();
    double reference = 0.0;
    for (std::size_t k = 0; k + 1 < by_angle.size(); ++k)
      reference = std::max(reference, by_angle[k].ratio);
    const double floor = smallest.distance > 0.0 ? noise / smallest.distance : 0.0;
    log.le("ratio at smallest angle", smallest.ratio, 2.0 * reference + floor);
  }
  for (const auto& s : ex.samples) {
    log.note("theta=" + num(s.theta) + " d=" + num(s.distance) + " dev=" + num(s.deviation) +
             " ratio=" + num(s.ratio));
  }
  ex.report = log.finish("cone_continuity", tol, finite);
  ex.report.lhs = ex.c3_estimate;
  return ex;
}

// ---------------------------------------------------------------------------
// Spectral sandwich

TheoremReport bounds_check(const Matrix& a, const Cone& c, double tol) {
  const auto sym = symmetric_part_eigs(a);
  const QuasiEigenResult q = quasi_pair(a, c, tol);

  InequalityLog log;
  log.le("min eig sym <= lower", sym.front(), q.lambda_lower);
  log.le("lower <= upper", q.lambda_lower, q.lambda_upper + tol);
  log.le("upper <= max eig sym", q.lambda_upper, sym.back());
  if (classify(a).normal) {
    log.note("normal: real-part sandwich");
    log.le("min Re <= lower", min_re(a), q.lambda_lower);
    log.le("upper <= max Re", q.lambda_upper, max_re(a));
  }
  TheoremReport r = log.finish("bounds", tol);
  r.lhs = q.lambda_lower;
  r.rhs = q.lambda_upper;
  return r;
}

// ---------------------------------------------------------------------------
// Normal matrices

Matrix rotation_scaling_block(double r, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Matrix{{r * c, -r * s}, {r * s, r * c}};
}

Matrix NormalCanonicalForm::assembled() const {
  const std::size_t n = u_a.n();
  Matrix o(n, n);
  std::size_t k = 0;
  for (const auto& b : rotation_blocks) {
    const Matrix q = rotation_scaling_block(b.r, b.theta);
    o(k, k) = q(0, 0);
    o(k, k + 1) = q(0, 1);
    o(k + 1, k) = q(1, 0);
    o(k + 1, k + 1) = q(1, 1);
    k += 2;
  }
  for (double mu : real_eigs) {
    o(k, k) = mu;
    ++k;
  }
  return o;
}

std::vector<std::vector<Vector>> NormalCanonicalForm::invariant_subspaces() const {
  std::vector<std::vector<Vector>> out;
  std::size_t k = 0;
  for (std::size_t b = 0; b < rotation_blocks.size(); ++b, k += 2) {
    out.push_back({u_a.column(k), u_a.column(k + 1)});
  }
  for (std::size_t j = 0; j < real_eigs.size(); ++j, ++k) out.push_back({u_a.column(k)});
  return out;
}

std::vector<double> NormalCanonicalForm::subspace_real_parts() const {
  std::vector<double> out;
  for (const auto& b : rotation_blocks) out.push_back(b.r * std::cos(b.theta));
  out.insert(out.end(), real_eigs.begin(), real_eigs.end());
  return out;
}

NormalCanonicalForm normal_canonical_form(const Matrix& a, double tol) {
  const double normal_tol = std::max(tol, kDefaultClassifyTol);
  if (!classify(a, normal_tol).normal) throw Error(ErrorKind::NotNormal, "AAᵀ ≠ AᵀA");
  const std::size_t n = a.n();

  Eigen::MatrixXd e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = a(i, j);
  Eigen::RealSchur<Eigen::MatrixXd> schur(e);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "real Schur iteration did not converge");
  }
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& z = schur.matrixU();

  // A normal quasi-triangular matrix is block diagonal, and a normal 2×2 block
  // with complex eigenvalues has the form [[a, −β], [β, a]].
  struct Piece {
    double key;
    bool block;
    RotationBlock rot;
    double mu;
    Vector c0;
    Vector c1;
  };
  auto col = [&](Eigen::Index j, double sign) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = sign * z(static_cast<Eigen::Index>(i), j);
    return v;
  };
  std::vector<Piece> pieces;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n);) {
    if (i + 1 < static_cast<Eigen::Index>(n) && t(i + 1, i) != 0.0) {
      const double re = 0.5 * (t(i, i) + t(i + 1, i + 1));
      double beta = 0.5 * (t(i + 1, i) - t(i, i + 1));
      double sign = 1.0;
      if (beta < 0.0) {
        beta = -beta;
        sign = -1.0;
      }
      const RotationBlock rot{std::hypot(re, beta), std::atan2(beta, re)};
      pieces.push_back({re, true, rot, 0.0, col(i, 1.0), col(i + 1, sign)});
      i += 2;
    } else {
      pieces.push_back({t(i, i), false, {}, t(i, i), col(i, 1.0), Vector{}});
      i += 1;
    }
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    if (x.block != y.block) return x.block;
    return x.key > y.key;
  });

  NormalCanonicalForm f;
  f.u_a = Matrix(n, n);
  std::size_t k = 0;
  for (const auto& p : pieces) {
    if (p.block) {
      f.rotation_blocks.push_back(p.rot);
      f.u_a.set_column(k++, p.c0);
      f.u_a.set_column(k++, p.c1);
    } else {
      f.real_eigs.push_back(p.mu);
      f.u_a.set_column(k++, p.c0);
    }
  }
  f.l = f.rotation_blocks.size();

  const double defect = operator_norm(conjugate_by(a, f.u_a) - f.assembled());
  if (defect > 1e-8 * std::max(operator_norm(a), 1e-300)) {
    throw Error(ErrorKind::NotNormal,
                "canonical form residual " + num(defect) + " exceeds 1e-8·‖A‖");
  }
  return f;
}

Theorem4Report theorem4_classify(const Matrix& a, const Cone& c, double tol) {
  const NormalCanonicalForm f = normal_canonical_form(a, tol);
  const auto subspaces = f.invariant_subspaces();
  const auto re = f.subspace_real_parts();

  Theorem4Report out;
  out.mixed = f.l > 0 && !f.real_eigs.empty();

  std::vector<std::size_t> meeting;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (span_meets_interior(c, subspaces[i], 1e-8)) meeting.push_back(i);
  }

  InequalityLog log;
  bool consistent = true;
  if (meeting.empty()) {
    out.predicted_case = 1;
    out.predicted_upper = *std::max_element(re.begin(), re.end());
    out.predicted_lower = *std::min_element(re.begin(), re.end());
    log.note("no invariant subspace meets the interior: case 1");
  } else {
    out.predicted_case = 2;
    out.predicted_upper = re[meeting.front()];
    out.predicted_lower = re[meeting.front()];
    out.meeting_dim = subspaces[meeting.front()].size();
    for (std::size_t i : meeting) {
      if (std::abs(re[i] - re[meeting.front()]) > 10.0 * tol) consistent = false;
    }
    log.note("subspace " + std::to_string(meeting.front()) + " meets the interior: case 2" +
             (consistent ? "" : " (several meeting subspaces disagree)"));
  }
  if (out.mixed) log.note("mixed 2-dimensional and 1-dimensional subspaces");

  const QuasiEigenResult q = quasi_pair(a, c, tol);
  out.lambda_upper = q.lambda_upper;
  out.lambda_lower = q.lambda_lower;
  log.le("|upper - predicted|", std::abs(q.lambda_upper - out.predicted_upper), 10.0 * tol);
  log.le("|lower - predicted|", std::abs(q.lambda_lower - out.predicted_lower), 10.0 * tol);
  out.report = log.finish("theorem4", tol, consistent);
  return out;
}

// ---------------------------------------------------------------------------

TheoremReport invariance_check(const Matrix& a, const Cone& c, const Matrix& u, double tol) {
  if (!u.is_square() || u.n() != a.n()) {
    throw Error(ErrorKind::DimensionMismatch, "change of variables has the wrong size");
  }
  if (orthogonality_defect(u) > 1e-10) throw Error(ErrorKind::NotOrthogonal, "U is not orthogonal");

  const Matrix ut = u.transpose();
  const Cone moved = c.transformed(ut);
  const Matrix conj = conjugate_by(a, u);
  const QuasiEigenResult q0 = quasi_pair(a, c, tol);
  const QuasiEigenResult q1 = quasi_pair(conj, moved, tol);

  InequalityLog log;
  log.le("|upper change|", std::abs(q0.lambda_upper - q1.lambda_upper), 2.0 * tol);
  log.le("|lower change|", std::abs(q0.lambda_lower - q1.lambda_lower), 2.0 * tol);
  TheoremReport r = log.finish("invariance", tol);
  r.lhs = q0.lambda_upper;
  r.rhs = q1.lambda_upper;
  return r;
}

}  // namespace qe
