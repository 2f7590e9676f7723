#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quasieig/cones.hpp"
#include "quasieig/matrix.hpp"
#include "quasieig/quasi.hpp"

namespace qe {

/// Outcome of a theorem-level check. Falsified bounds are data, not errors:
/// `holds` is false and `slack` says by how much.
struct TheoremReport {
  std::string name;
  bool applicable = true;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Worst margin over the checked inequalities (negative means violated).
  double slack = 0.0;
  double tolerance = 0.0;
  std::string details;

  static TheoremReport not_applicable(std::string name, std::string why);
};

/// Nonnegative A: λ̄_{S₊}(A) ≥ ρ(A), with equality when λ̄ is some |λ_j|.
TheoremReport perron_check(const Matrix& a, double tol = kDefaultTol);

/// A with nonnegative off-diagonal: λ̄_{S₊}(A) ≥ max Re λ_j, with equality
/// when λ̄ is some Re λ_j.
TheoremReport max_re_check(const Matrix& a, double tol = kDefaultTol);

/// Irreducible A with sign-constant off-diagonal: the orthant quasi-eigenpair
/// is a saddle made of positive eigenvectors of a simple eigenvalue.
TheoremReport isc_check(const Matrix& a, double tol = kDefaultTol);

struct PerturbationBound {
  /// sup_{u∈C} ‖u‖/⟨u, v_C⟩ with ‖v_C‖ = 1; present iff v_C is interior.
  std::optional<double> c1;
  /// sup_{v∈C} ‖v‖/⟨u_C/‖u_C‖, v⟩; present iff u_C is interior.
  std::optional<double> c2;
  /// max(c1, c2); present iff both are.
  std::optional<double> c0;
  bool u_interior = false;
  bool v_interior = false;
};

/// Throws NotInterior when neither quasi-eigenvector is interior.
PerturbationBound perturbation_constants(const Matrix& a, const Cone& c, double tol = kDefaultTol);
PerturbationBound perturbation_constants(const QuasiEigenResult& q, const Cone& c);

/// Evaluates every perturbation inequality whose hypotheses hold for (A, C, D).
TheoremReport perturbation_bound_check(const Matrix& a, const Cone& c, const Matrix& d,
                                       double tol = kDefaultTol);

struct ContinuitySample {
  double theta = 0.0;
  double distance = 0.0;
  double deviation = 0.0;
  /// deviation / distance (0 when both vanish).
  double ratio = 0.0;
};

struct ContinuityExperiment {
  TheoremReport report;
  std::vector<ContinuitySample> samples;
  /// Largest observed ratio: an empirical stand-in for the constant c3.
  double c3_estimate = 0.0;
};

/// Rotates C by Givens rotations of the given angles in one seeded random
/// plane and tracks quasi-eigenvalue deviation against d(C, C′). Throws
/// NotInterior unless both quasi-eigenvectors of (A, C) are interior.
ContinuityExperiment cone_continuity_experiment(const Matrix& a, const Cone& c,
                                                const std::vector<double>& angles,
                                                double tol = kDefaultTol, std::uint64_t seed = 0);

/// min eig((A+Aᵀ)/2) ≤ λ̲ ≤ λ̄ ≤ max eig((A+Aᵀ)/2), and for normal A the
/// same sandwich by min/max Re λ_j.
TheoremReport bounds_check(const Matrix& a, const Cone& c, double tol = kDefaultTol);

struct RotationBlock {
  double r = 0.0;
  /// In (0, π): the sign of the rotation lives in the basis orientation.
  double theta = 0.0;
};

/// U_Aᵀ·A·U_A = blockdiag(Q(r_1, θ_1), …, Q(r_l, θ_l), μ_{2l+1}, …, μ_n).
struct NormalCanonicalForm {
  Matrix u_a;
  std::vector<RotationBlock> rotation_blocks;
  std::vector<double> real_eigs;
  std::size_t l = 0;

  Matrix assembled() const;
  /// Orthonormal bases of the invariant subspaces V_j, blocks first.
  std::vector<std::vector<Vector>> invariant_subspaces() const;
  /// Re λ on each invariant subspace, same order.
  std::vector<double> subspace_real_parts() const;
};

/// Q(r, θ) = r·[[cos θ, −sin θ], [sin θ, cos θ]].
Matrix rotation_scaling_block(double r, double theta);

/// Blocks sorted by descending r·cos θ, then real eigenvalues descending.
/// Throws NotNormal.
NormalCanonicalForm normal_canonical_form(const Matrix& a, double tol = kDefaultTol);

struct Theorem4Report {
  TheoremReport report;
  /// 1 when no invariant subspace meets C°, 2 otherwise.
  int predicted_case = 0;
  double predicted_upper = 0.0;
  double predicted_lower = 0.0;
  double lambda_upper = 0.0;
  double lambda_lower = 0.0;
  /// Both 2-dimensional and 1-dimensional invariant subspaces are present.
  bool mixed = false;
  /// Dimension of the subspace the case-2 prediction came from (0 in case 1).
  std::size_t meeting_dim = 0;
};

/// Predicts the quasi-eigenvalues of a normal A from which invariant
/// subspaces meet C° and compares with the LP computation (within 10·tol).
Theorem4Report theorem4_classify(const Matrix& a, const Cone& c, double tol = kDefaultTol);

/// λ̄_C(A) = λ̄_{UᵀC}(UᵀAU) and the same for λ̲, within 2·tol.
/// Throws NotOrthogonal.
TheoremReport invariance_check(const Matrix& a, const Cone& c, const Matrix& u,
                               double tol = kDefaultTol);

}  // namespace qe
