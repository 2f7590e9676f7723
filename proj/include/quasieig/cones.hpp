#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quasieig/matrix.hpp"

namespace qe {

inline constexpr double kDefaultMembershipTol = 1e-12;

/// A self-dual solid cone C = U·S₊: the positive orthant or an orthogonal
/// image of it.
class Cone {
 public:
  enum class Kind { Orthant, Rotated };

  static Cone orthant(std::size_t n);
  /// Throws NotOrthogonal if ‖UᵀU − I‖ > 1e-10.
  static Cone rotated(Matrix u);

  Kind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  /// U for Rotated cones; absent for the orthant.
  const std::optional<Matrix>& rotation() const noexcept { return rotation_; }
  /// U, with the identity standing in for the orthant.
  Matrix basis() const;

  /// Uᵀx: coordinates with respect to the extreme rays.
  Vector to_ray_coords(const Vector& x) const;
  /// U·w.
  Vector from_ray_coords(const Vector& w) const;
  /// UᵀAU: the matrix acting on ray coordinates.
  Matrix conjugate(const Matrix& a) const;

  /// The cone M·C for orthogonal M.
  Cone transformed(const Matrix& m) const;

 private:
  Cone(Kind kind, std::size_t n, std::optional<Matrix> rotation)
      : kind_(kind), n_(n), rotation_(std::move(rotation)) {}

  Kind kind_;
  std::size_t n_;
  std::optional<Matrix> rotation_;
};

struct ConeMembership {
  bool in_cone = false;
  bool in_interior = false;
  /// min_i (Uᵀx)_i.
  double min_coordinate = 0.0;
};

/// in_cone ⇔ min(Uᵀx) ≥ −tol and x ≠ 0; in_interior ⇔ min(Uᵀx) > tol.
ConeMembership membership(const Cone& c, const Vector& x, double tol = kDefaultMembershipTol);

/// Boolean form of `membership`: the interior test when `strict`.
bool contains(const Cone& c, const Vector& x, bool strict = false,
              double tol = kDefaultMembershipTol);

/// The n unit extreme rays U·e_i.
std::vector<Vector> extreme_rays(const Cone& c);

struct ConeDistance {
  double value = 0.0;
  /// Set when n > 8 and the stabilizer minimisation was skipped.
  bool representative_dependent = false;
};

/// d(C, C′) = min over permutation matrices P of ‖I − U₂·P·U₁ᵀ‖ (exhaustive
/// for n ≤ 8; ‖I − U₂U₁ᵀ‖ beyond that).
ConeDistance cone_metric(const Cone& a, const Cone& b);

/// A vector x ∈ span(basis) with Uᵀx ≥ 1 componentwise, found by LP, when
/// the span meets the interior by a margin above `tol` (basis orthonormalised
/// first). Throws DimensionMismatch / DegenerateBasis.
std::optional<Vector> span_meets_interior(const Cone& c, const std::vector<Vector>& basis,
                                          double tol = 1e-9);

/// Haar-distributed orthogonal matrix, deterministic per seed.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

/// Rotation by `theta` in the (i, j) coordinate plane.
Matrix givens_rotation(std::size_t n, std::size_t i, std::size_t j, double theta);

}  // namespace qe
