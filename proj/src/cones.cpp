#include "quasieig/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "quasieig/error.hpp"
#include "quasieig/lp.hpp"
#include "quasieig/matcore.hpp"

namespace qe {

namespace {

constexpr double kOrthogonalityTol = 1e-10;

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected dimension " + std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace

Cone Cone::orthant(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cone dimension must be positive");
  return Cone(Kind::Orthant, n, std::nullopt);
}

Cone Cone::rotated(Matrix u) {
  if (!u.is_square() || u.rows() == 0) {
    throw Error(ErrorKind::NonSquare, "cone rotation must be square");
  }
  const double defect = orthogonality_defect(u);
  if (defect > kOrthogonalityTol) {
    throw Error(ErrorKind::NotOrthogonal, "‖UᵀU − I‖ = " + std::to_string(defect));
  }
  const std::size_t n = u.n();
  return Cone(Kind::Rotated, n, std::move(u));
}

Matrix Cone::basis() const { return rotation_ ? *rotation_ : Matrix::identity(n_); }

Vector Cone::to_ray_coords(const Vector& x) const {
  require_dim(n_, x.size());
  if (!rotation_) return x;
  const Matrix& u = *rotation_;
  Vector w(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) acc += u(k, i) * x[k];
    w[i] = acc;
  }
  return w;
}

Vector Cone::from_ray_coords(const Vector& w) const {
  require_dim(n_, w.size());
  return rotation_ ? *rotation_ * w : w;
}

Matrix Cone::conjugate(const Matrix& a) const {
  require_dim(n_, a.rows());
  require_dim(n_, a.cols());
  return rotation_ ? conjugate_by(a, *rotation_) : a;
}

Cone Cone::transformed(const Matrix& m) const { return Cone::rotated(m * basis()); }

ConeMembership membership(const Cone& c, const Vector& x, double tol) {
  const Vector w = c.to_ray_coords(x);
  ConeMembership m;
  m.min_coordinate = w.min();
  m.in_cone = m.min_coordinate >= -tol && x.norm() > 0.0;
  m.in_interior = m.min_coordinate > tol;
  return m;
}

bool contains(const Cone& c, const Vector& x, bool strict, double tol) {
  const ConeMembership m = membership(c, x, tol);
  return strict ? m.in_interior : m.in_cone;
}

std::vector<Vector> extreme_rays(const Cone& c) {
  std::vector<Vector> rays;
  rays.reserve(c.n());
  for (std::size_t i = 0; i < c.n(); ++i) rays.push_back(c.from_ray_coords(Vector::unit(c.n(), i)));
  return rays;
}

ConeDistance cone_metric(const Cone& a, const Cone& b) {
  require_dim(a.n(), b.n());
  const std::size_t n = a.n();
  const Matrix id = Matrix::identity(n);
  const Matrix u1t = a.basis().transpose();
  const Matrix u2 = b.basis();

  if (n > 8) return {operator_norm(id - u2 * u1t), true};

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    // U₂·P has columns U₂ e_{perm(k)}.
    Matrix u2p(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) u2p(i, k) = u2(i, perm[k]);
    best = std::min(best, operator_norm(id - u2p * u1t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, false};
}

std::optional<Vector> span_meets_interior(const Cone& c, const std::vector<Vector>& basis,
                                          double tol) {
  const std::size_t n = c.n();
  if (basis.empty() || basis.size() > n) {
    throw Error(ErrorKind::DimensionMismatch, "basis size must be in [1, n]");
  }
  for (const auto& b : basis) require_dim(n, b.size());

  // Modified Gram-Schmidt; a vanishing residual means a dependent basis.
  std::vector<Vector> q;
  for (const auto& b : basis) {
    const double len = b.norm();
    if (len == 0.0) throw Error(ErrorKind::DegenerateBasis, "zero basis vector");
    Vector r = b * (1.0 / len);
    for (const auto& qk : q) r -= dot(qk, r) * qk;
    const double rlen = r.norm();
    if (rlen < 1e-10) throw Error(ErrorKind::DegenerateBasis, "basis is linearly dependent");
    q.push_back(r * (1.0 / rlen));
  }

  // Coefficients c = c⁺ − c⁻ on the simplex: maximise ε with Uᵀ Q c ≥ ε·1.
  const std::size_t k = q.size();
  Matrix g(n, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector col = c.to_ray_coords(q[j]);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, j) = col[i];
      g(i, k + j) = -col[i];
    }
  }
  const LpSolution sol = solve_max_eps(MaxEpsProblem{g});
  if (!(sol.eps_star > tol)) return std::nullopt;

  Vector x(n);
  for (std::size_t j = 0; j < k; ++j) x += (sol.x_star[j] - sol.x_star[k + j]) * q[j];
  const double margin = c.to_ray_coords(x).min();
  if (!(margin > 0.0)) return std::nullopt;
  return x * (1.0 / margin);
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Householder QR of a Gaussian matrix, with the sign fix that makes Q Haar.
  Matrix q = Matrix::identity(n);
  std::vector<double> signs(n, 1.0);
  for (std::size_t k = 0; k + 1 <= n; ++k) {
    const std::size_t len = n - k;
    std::vector<double> v(len);
    for (double& x : v) x = normal(rng);
    if (len == 1) {
      // The last reflector is just a sign.
      signs[k] = v[0] >= 0.0 ? 1.0 : -1.0;
      continue;
    }
    double alpha = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (alpha == 0.0) continue;
    const double sign = v[0] >= 0.0 ? 1.0 : -1.0;
    signs[k] = -sign;
    v[0] += sign * alpha;
    const double vnorm2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    if (vnorm2 == 0.0) continue;
    // Q ← Q·H_k with H_k = I − 2vvᵀ/‖v‖² acting on coordinates k..n−1.
    for (std::size_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (std::size_t j = 0; j < len; ++j) proj += q(i, k + j) * v[j];
      proj *= 2.0 / vnorm2;
      for (std::size_t j = 0; j < len; ++j) q(i, k + j) -= proj * v[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= signs[j];
  return q;
}

Matrix givens_rotation(std::size_t n, std::size_t i, std::size_t j, double theta) {
  if (i >= n || j >= n || i == j) throw Error(ErrorKind::InvalidArgument, "bad rotation plane");
  Matrix g = Matrix::identity(n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

}  // namespace qe
