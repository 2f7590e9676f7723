#pragma once

#include <cstdint>
#include <limits>

#include "quasieig/cones.hpp"
#include "quasieig/matrix.hpp"

namespace qe {

inline constexpr double kDefaultTol = 1e-9;

/// A real number or ±∞.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double v = 0.0) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr ExtendedReal neg_inf() { return {-std::numeric_limits<double>::infinity()}; }
  static constexpr ExtendedReal pos_inf() { return {std::numeric_limits<double>::infinity()}; }

  constexpr bool is_finite() const { return value_ - value_ == 0.0; }
  constexpr bool is_neg_inf() const { return value_ == -std::numeric_limits<double>::infinity(); }
  constexpr bool is_pos_inf() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(ExtendedReal, ExtendedReal) = default;

 private:
  double value_;
};

/// λ(u, v) = ⟨Au, v⟩ / ⟨u, v⟩. Throws DegeneratePairing when
/// |⟨u, v⟩| ≤ 1e-14·‖u‖·‖v‖.
double rayleigh(const Matrix& a, const Vector& u, const Vector& v);

/// inf over v ∈ C° of λ(u, v), in closed form. Throws NotInCone.
ExtendedReal inner_inf(const Matrix& a, const Cone& c, const Vector& u, double tol = 1e-12);

/// sup over u ∈ C° of λ(u, v), in closed form. Throws NotInCone.
ExtendedReal inner_sup(const Matrix& a, const Cone& c, const Vector& v, double tol = 1e-12);

struct QuasiValue {
  double value = 0.0;
  Vector vector;
};

/// λ̄_C(A) = sup_{u∈C} inf_{v∈C°} λ(u, v) by bisection on LP feasibility of
/// (B − tI)w ≥ 0 over the simplex, B = UᵀAU. The returned u is U·w with
/// Σw = 1.
QuasiValue upper_quasi_eigenvalue(const Matrix& a, const Cone& c, double tol = kDefaultTol);

/// λ̲_C(A) = inf_{v∈C} sup_{u∈C°} λ(u, v) by bisection on LP feasibility of
/// (Bᵀ − tI)z ≤ 0 over the simplex. The returned v has unit norm.
QuasiValue lower_quasi_eigenvalue(const Matrix& a, const Cone& c, double tol = kDefaultTol);

struct QuasiEigenResult {
  double lambda_upper = 0.0;
  double lambda_lower = 0.0;
  /// Right quasi-eigenvector, Σ(Uᵀu)_i = 1.
  Vector u_right;
  /// Left quasi-eigenvector, ‖v‖ = 1.
  Vector v_left;
  bool u_interior = false;
  bool v_interior = false;
  bool is_saddle = false;
  /// ‖Au − λ̄u‖ / ‖u‖.
  double eigen_residual_right = 0.0;
  /// ‖Aᵀv − λ̲v‖ / ‖v‖.
  double eigen_residual_left = 0.0;
  double tol = 0.0;
};

QuasiEigenResult quasi_pair(const Matrix& a, const Cone& c, double tol = kDefaultTol);

struct MinimaxEstimate {
  double sup_inf = 0.0;
  double inf_sup = 0.0;
};

/// Grid oracle for the C×C° minimax pair (both sides estimate λ̄_C(A)):
/// u ranges over the closed simplex lattice with grid_k divisions, v over the
/// same lattice shrunk to keep a margin of 1/(10·grid_k). Only n ∈ {2, 3}.
MinimaxEstimate brute_minimax(const Matrix& a, const Cone& c, int grid_k);

/// The same oracle for λ̲_C(A), via λ̲_C(A) = −λ̄_C(−Aᵀ).
MinimaxEstimate brute_minimax_lower(const Matrix& a, const Cone& c, int grid_k);

/// Randomised check that λ(·, v) and λ(u, ·) are quasilinear on the cone.
bool quasilinearity_probe(const Matrix& a, const Cone& c, int trials, std::uint64_t seed);

}  // namespace qe
