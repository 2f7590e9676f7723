#include "quasieig/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "quasieig/error.hpp"

namespace qe {

namespace {

constexpr double kPivotTol = 1e-12;

/// Dense tableau for: maximise Σz subject to Ĝᵀz ≤ 1, z ≥ 0, with Ĝ > 0.
/// Rows are the n constraints of Ĝᵀ, columns the m structural variables z
/// followed by n slacks.
class GameTableau {
 public:
  explicit GameTableau(const Matrix& shifted)
      : m_(shifted.rows()), n_(shifted.cols()), width_(m_ + n_ + 1),
        t_(n_ * width_, 0.0), cost_(m_ + n_, 0.0), basis_(n_) {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < m_; ++c) at(r, c) = shifted(c, r);
      at(r, m_ + r) = 1.0;
      at(r, m_ + n_) = 1.0;
      basis_[r] = m_ + r;
    }
    std::fill(cost_.begin(), cost_.begin() + static_cast<std::ptrdiff_t>(m_), 1.0);
  }

  void solve() {
    const std::size_t budget = 200 * (m_ + n_) + 1000;
    for (std::size_t iter = 0; iter < budget; ++iter) {
      // Bland: lowest-index column with a positive reduced cost enters.
      std::size_t enter = cost_.size();
      for (std::size_t c = 0; c < cost_.size(); ++c) {
        if (cost_[c] > kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter == cost_.size()) return;

      // Ratio test; ties go to the lowest basic variable index.
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n_; ++r) {
        const double a = at(r, enter);
        if (a > kPivotTol) best = std::min(best, at(r, m_ + n_) / a);
      }
      std::size_t leave = n_;
      for (std::size_t r = 0; r < n_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTol || at(r, m_ + n_) / a > best + kPivotTol) continue;
        if (leave == n_ || basis_[r] < basis_[leave]) leave = r;
      }
      if (leave == n_) {
        // Cannot happen with Ĝ > 0: every column has positive entries.
        throw Error(ErrorKind::NumericalBreakdown, "unbounded ray in a bounded game LP");
      }
      pivot(leave, enter);
    }
    throw Error(ErrorKind::NumericalBreakdown,
                "simplex pivot budget exhausted (" + std::to_string(budget) + ")");
  }

  /// Dual values y_r of the n constraints, i.e. minus the reduced slack costs.
  std::vector<double> duals() const {
    std::vector<double> y(n_);
    for (std::size_t r = 0; r < n_; ++r) y[r] = -cost_[m_ + r];
    return y;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t c = 0; c < width_; ++c) at(row, c) /= p;
    at(row, col) = 1.0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == row) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(r, c) -= f * at(row, c);
      at(r, col) = 0.0;
    }
    const double f = cost_[col];
    for (std::size_t c = 0; c + 1 < width_; ++c) cost_[c] -= f * at(row, c);
    cost_[col] = 0.0;
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_max_eps(const MaxEpsProblem& problem) {
  const Matrix& g = problem.g;
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  if (m == 0 || n == 0) throw Error(ErrorKind::InvalidArgument, "empty LP");

  LpSolution sol;
  const double scale = g.max_abs();
  if (scale == 0.0) {
    sol.eps_star = 0.0;
    sol.x_star = Vector::unit(n, 0);
    return sol;
  }

  // Value of the game max_x min_i (Ĝx)_i with Ĝ = G/scale + 2 ∈ [1, 3]:
  // it equals 1/Σy for the optimal y of min Σy s.t. Ĝy ≥ 1, whose dual is the
  // tableau problem above.
  Matrix shifted(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) shifted(i, j) = g(i, j) / scale + 2.0;

  GameTableau tableau(shifted);
  tableau.solve();
  std::vector<double> y = tableau.duals();

  double total = 0.0;
  for (double& v : y) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorKind::NumericalBreakdown, "degenerate dual solution");
  }
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] / total;

  const Vector gx = g * x;
  sol.eps_star = gx.min();
  sol.x_star = std::move(x);
  return sol;
}

}  // namespace qe
