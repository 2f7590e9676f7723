#pragma once

#include <complex>
#include <vector>

#include "quasieig/matrix.hpp"

namespace qe {

inline constexpr double kDefaultClassifyTol = 1e-10;

/// Spectral (Euclidean-induced) norm: the largest singular value.
double operator_norm(const Matrix& m);

/// True iff the digraph with an edge i→j whenever a_ij ≠ 0 is strongly
/// connected. Structural: no tolerance. A 1×1 matrix is irreducible.
bool is_irreducible(const Matrix& m);

struct ClassificationReport {
  bool nonnegative = false;
  bool offdiag_nonneg = false;
  bool offdiag_nonpos = false;
  bool sign_constant_offdiag = false;
  bool irreducible = false;
  /// Irreducible with sign-constant off-diagonal entries.
  bool isc = false;
  bool symmetric = false;
  bool skew_symmetric = false;
  bool normal = false;
  double tolerance_used = 0.0;
};

/// Sign predicates are exact; symmetry uses ‖M−Mᵀ‖ ≤ tol·‖M‖ and normality
/// ‖MMᵀ−MᵀM‖ ≤ tol·‖M‖².
ClassificationReport classify(const Matrix& m, double tol = kDefaultClassifyTol);

struct EigenPair {
  std::complex<double> value;
  /// Unit Euclidean norm.
  std::vector<std::complex<double>> vector;
};

/// All n eigenpairs (repeated by algebraic multiplicity), sorted by descending
/// real part then descending imaginary part. Throws ConvergenceFailure.
std::vector<EigenPair> eig_oracle(const Matrix& m);

/// Eigenvalues only, same order as eig_oracle.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

/// Ascending eigenvalues of (M+Mᵀ)/2.
std::vector<double> symmetric_part_eigs(const Matrix& m);

double spectral_radius(const Matrix& m);

/// max_j Re λ_j(M).
double max_re(const Matrix& m);

/// min_j Re λ_j(M).
double min_re(const Matrix& m);

/// ‖UᵀU − I‖ (spectral norm).
double orthogonality_defect(const Matrix& u);

}  // namespace qe
