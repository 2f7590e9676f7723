#include "quasieig/quasi.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "quasieig/error.hpp"
#include "quasieig/lp.hpp"
#include "quasieig/matcore.hpp"

namespace qe {

namespace {

// An LP optimum ε* ≥ −kFeasibilityRel·max|G| counts as feasible.
constexpr double kFeasibilityRel = 1e-13;
constexpr int kMaxBisectionSteps = 200;
constexpr int kMaxBracketExpansions = 60;

void require_square_dim(const Matrix& a, const Cone& c) {
  if (!a.is_square() || a.rows() != c.n()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", cone dimension " +
                                                  std::to_string(c.n()));
  }
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
}

/// Feasibility oracle for {w ∈ simplex : G(t)·w ≥ 0}, remembering the last
/// certificate.
template <typename MakeG>
std::optional<Vector> feasible_point(const MakeG& make_g, double t) {
  const Matrix g = make_g(t);
  LpSolution sol = solve_max_eps(MaxEpsProblem{g});
  const double threshold = -kFeasibilityRel * std::max(g.max_abs(), 1e-300);
  if (sol.eps_star >= threshold) return std::move(sol.x_star);
  return std::nullopt;
}

/// Shrinks [lo, hi] around the boundary of a feasibility region that is
/// monotone in t. `feasible_side_low` says whether the region is t ≤ t* (true)
/// or t ≥ t* (false). Returns the feasible endpoint and its certificate.
template <typename MakeG>
QuasiValue bisect(const MakeG& make_g, double lo, double hi, double widen, double tol,
                  bool feasible_side_low) {
  double& feas_end = feasible_side_low ? lo : hi;
  double& infeas_end = feasible_side_low ? hi : lo;
  const double outward = feasible_side_low ? -1.0 : 1.0;

  std::optional<Vector> cert = feasible_point(make_g, feas_end);
  for (int k = 0; !cert && k < kMaxBracketExpansions; ++k) {
    feas_end += outward * widen * std::ldexp(1.0, k);
    cert = feasible_point(make_g, feas_end);
  }
  if (!cert) throw Error(ErrorKind::NumericalBreakdown, "no feasible bisection endpoint");
  for (int k = 0; feasible_point(make_g, infeas_end) && k < kMaxBracketExpansions; ++k) {
    infeas_end -= outward * widen * std::ldexp(1.0, k);
  }

  const double target = tol / 16.0;
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > target; ++step) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (auto w = feasible_point(make_g, mid)) {
      feas_end = mid;
      cert = std::move(w);
    } else {
      infeas_end = mid;
    }
  }
  return {feas_end, std::move(*cert)};
}

/// The LP returns a vertex, which sits on the boundary whenever the optimal
/// face is larger than a point (A = I, say). Look for a deeper certificate at
/// the same t: maximise min(G·w + δ, δ·w) over the simplex, and keep the
/// result only if it still certifies t through the closed-form ratios.
Vector recentred(const Matrix& g, Vector w, double tol) {
  if (w.min() > 100.0 * tol) return w;
  const std::size_t n = g.cols();
  const double delta = 1e-12 * std::max(1.0, g.max_abs());
  Matrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = g(i, j) + delta;
    stacked(n + i, i) = delta;
  }
  const Vector candidate = solve_max_eps(MaxEpsProblem{stacked}).x_star;
  if (!(candidate.min() > w.min())) return w;

  const Vector gw = g * candidate;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = candidate[i] > 1e-12 ? gw[i] / candidate[i] >= -0.25 * tol : gw[i] >= -1e-12;
    if (!ok) return w;
  }
  return candidate;
}

double bracket_widening(const Matrix& a, double tol) {
  return std::max(1.0, operator_norm(a)) * 1e-6 + tol;
}

}  // namespace

double rayleigh(const Matrix& a, const Vector& u, const Vector& v) {
  const double pairing = dot(u, v);
  if (std::abs(pairing) <= 1e-14 * u.norm() * v.norm()) {
    throw Error(ErrorKind::DegeneratePairing, "⟨u, v⟩ vanishes");
  }
  return dot(a * u, v) / pairing;
}

ExtendedReal inner_inf(const Matrix& a, const Cone& c, const Vector& u, double tol) {
  require_square_dim(a, c);
  if (!contains(c, u)) throw Error(ErrorKind::NotInCone, "u is not in the cone");
  Vector w = c.to_ray_coords(u);
  w *= 1.0 / w.sum();
  const Vector bw = c.conjugate(a) * w;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= tol) {
      if (bw[i] < -tol) return ExtendedReal::neg_inf();
    } else {
      best = std::min(best, bw[i] / w[i]);
    }
  }
  return best;
}

ExtendedReal inner_sup(const Matrix& a, const Cone& c, const Vector& v, double tol) {
  require_square_dim(a, c);
  if (!contains(c, v)) throw Error(ErrorKind::NotInCone, "v is not in the cone");
  Vector z = c.to_ray_coords(v);
  z *= 1.0 / z.sum();
  const Vector btz = c.conjugate(a).transpose() * z;

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] <= tol) {
      if (btz[i] > tol) return ExtendedReal::pos_inf();
    } else {
      best = std::max(best, btz[i] / z[i]);
    }
  }
  return best;
}

QuasiValue upper_quasi_eigenvalue(const Matrix& a, const Cone& c, double tol) {
  require_square_dim(a, c);
  require_tol(tol);
  const Matrix b = c.conjugate(a);
  const std::size_t n = b.n();
  auto make_g = [&](double t) {
    Matrix g = b;
    for (std::size_t i = 0; i < n; ++i) g(i, i) -= t;
    return g;
  };

  const auto sym = symmetric_part_eigs(a);
  const double widen = bracket_widening(a, tol);
  QuasiValue result =
      bisect(make_g, sym.front() - widen, sym.back() + widen, widen, tol, /*feasible_side_low=*/true);
  result.vector = recentred(make_g(result.value), std::move(result.vector), tol);
  result.vector = c.from_ray_coords(result.vector);
  return result;
}

QuasiValue lower_quasi_eigenvalue(const Matrix& a, const Cone& c, double tol) {
  require_square_dim(a, c);
  require_tol(tol);
  const Matrix bt = c.conjugate(a).transpose();
  const std::size_t n = bt.n();
  auto make_g = [&](double t) {
    Matrix g = bt * -1.0;
    for (std::size_t i = 0; i < n; ++i) g(i, i) += t;
    return g;
  };

  const auto sym = symmetric_part_eigs(a);
  const double widen = bracket_widening(a, tol);
  QuasiValue result = bisect(make_g, sym.front() - widen, sym.back() + widen, widen, tol,
                             /*feasible_side_low=*/false);
  result.vector = recentred(make_g(result.value), std::move(result.vector), tol);
  Vector v = c.from_ray_coords(result.vector);
  result.vector = v * (1.0 / v.norm());
  return result;
}

QuasiEigenResult quasi_pair(const Matrix& a, const Cone& c, double tol) {
  QuasiValue upper = upper_quasi_eigenvalue(a, c, tol);
  QuasiValue lower = lower_quasi_eigenvalue(a, c, tol);

  QuasiEigenResult r;
  r.tol = tol;
  r.lambda_upper = upper.value;
  r.lambda_lower = lower.value;
  r.u_right = std::move(upper.vector);
  r.v_left = std::move(lower.vector);
  r.u_interior = membership(c, r.u_right, 10.0 * tol).in_interior;
  r.v_interior = membership(c, r.v_left, 10.0 * tol).in_interior;
  r.is_saddle =
      r.u_interior && r.v_interior && std::abs(r.lambda_upper - r.lambda_lower) <= 2.0 * tol;
  r.eigen_residual_right = (a * r.u_right - r.lambda_upper * r.u_right).norm() / r.u_right.norm();
  r.eigen_residual_left =
      (a.transpose() * r.v_left - r.lambda_lower * r.v_left).norm() / r.v_left.norm();
  return r;
}

MinimaxEstimate brute_minimax(const Matrix& a, const Cone& c, int grid_k) {
  require_square_dim(a, c);
  const std::size_t n = a.n();
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::UnsupportedDimension, "grid oracle supports n ∈ {2, 3}");
  }
  if (grid_k < 1) throw Error(ErrorKind::InvalidArgument, "grid_k must be positive");

  const Matrix b = c.conjugate(a);
  const double k = grid_k;
  const double margin = 1.0 / (10.0 * k);
  const double span = 1.0 - static_cast<double>(n) * margin;

  // Both inner optimisations are over polytopes whose vertices are lattice
  // points, and λ is quasilinear in each argument, so the inner extremum over
  // the lattice sits at those vertices: the shrunk simplex corners for v, the
  // unit vectors for u.
  double sup_inf = -std::numeric_limits<double>::infinity();
  double inf_sup = std::numeric_limits<double>::infinity();
  double w[3] = {0.0, 0.0, 0.0};
  double bw[3];

  auto visit = [&]() {
    // sup-inf: w is a closed-lattice point (Σw = 1).
    double row_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += b(i, j) * w[j];
      bw[i] = acc;
      row_sum += acc;
    }
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      inner = std::min(inner, (margin * row_sum + span * bw[j]) / (margin + span * w[j]));
    }
    sup_inf = std::max(sup_inf, inner);

    // inf-sup: z = margin·1 + span·w is an interior-lattice point.
    double outer = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double btz = 0.0;
      for (std::size_t j = 0; j < n; ++j) btz += b(j, i) * (margin + span * w[j]);
      outer = std::max(outer, btz / (margin + span * w[i]));
    }
    inf_sup = std::min(inf_sup, outer);
  };

  if (n == 2) {
    for (int i = 0; i <= grid_k; ++i) {
      w[0] = i / k;
      w[1] = (grid_k - i) / k;
      visit();
    }
  } else {
    for (int i = 0; i <= grid_k; ++i)
      for (int j = 0; j <= grid_k - i; ++j) {
        w[0] = i / k;
        w[1] = j / k;
        w[2] = (grid_k - i - j) / k;
        visit();
      }
  }
  return {sup_inf, inf_sup};
}

MinimaxEstimate brute_minimax_lower(const Matrix& a, const Cone& c, int grid_k) {
  const MinimaxEstimate m = brute_minimax(a.transpose() * -1.0, c, grid_k);
  return {-m.sup_inf, -m.inf_sup};
}

bool quasilinearity_probe(const Matrix& a, const Cone& c, int trials, std::uint64_t seed) {
  require_square_dim(a, c);
  const std::size_t n = a.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution on_boundary(0.3);

  auto cone_point = [&](bool interior) {
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = interior ? 0.05 + unit(rng) : unit(rng);
    if (!interior && n > 1 && on_boundary(rng)) w[rng() % n] = 0.0;
    if (w.sum() == 0.0) w[0] = 1.0;
    return c.from_ray_coords(w);
  };
  auto within = [](double x, double p, double q) {
    const double lo = std::min(p, q);
    const double hi = std::max(p, q);
    const double slack = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
    return lo - slack <= x && x <= hi + slack;
  };

  for (int t = 0; t < trials; ++t) {
    const double alpha = unit(rng);
    {
      const Vector u = cone_point(false);
      const Vector w = cone_point(false);
      const Vector v = cone_point(true);
      const double mixed = rayleigh(a, alpha * u + (1.0 - alpha) * w, v);
      if (!within(mixed, rayleigh(a, u, v), rayleigh(a, w, v))) return false;
    }
    {
      const Vector u = cone_point(true);
      const Vector v1 = cone_point(false);
      const Vector v2 = cone_point(false);
      const double mixed = rayleigh(a, u, alpha * v1 + (1.0 - alpha) * v2);
      if (!within(mixed, rayleigh(a, u, v1), rayleigh(a, u, v2))) return false;
    }
  }
  return true;
}

}  // namespace qe
