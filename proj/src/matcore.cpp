#include "quasieig/matcore.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "quasieig/error.hpp"

namespace qe {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

void require_square(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorKind::NonSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const double scale = m.max_abs();
  if (scale == 0.0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m) / scale);
  return scale * svd.singularValues()(0);
}

bool is_irreducible(const Matrix& m) {
  require_square(m);
  const std::size_t n = m.n();
  if (n == 1) return true;

  // Strongly connected iff every vertex is reachable from 0 in both the graph
  // and its reverse.
  auto reaches_all = [&](bool reversed) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double a = reversed ? m(j, i) : m(i, j);
        if (!seen[j] && std::abs(a) > 0.0) {
          seen[j] = 1;
          ++count;
          stack.push_back(j);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

ClassificationReport classify(const Matrix& m, double tol) {
  require_square(m);
  if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be nonnegative");

  ClassificationReport r;
  r.tolerance_used = tol;
  const std::size_t n = m.n();

  r.nonnegative = true;
  r.offdiag_nonneg = true;
  r.offdiag_nonpos = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = m(i, j);
      if (a < 0.0) r.nonnegative = false;
      if (i == j) continue;
      if (a < 0.0) r.offdiag_nonneg = false;
      if (a > 0.0) r.offdiag_nonpos = false;
    }
  r.sign_constant_offdiag = r.offdiag_nonneg || r.offdiag_nonpos;
  r.irreducible = is_irreducible(m);
  r.isc = r.irreducible && r.sign_constant_offdiag;

  const Matrix mt = m.transpose();
  const double norm = operator_norm(m);
  r.symmetric = operator_norm(m - mt) <= tol * norm;
  r.skew_symmetric = operator_norm(m + mt) <= tol * norm;
  r.normal = operator_norm(m * mt - mt * m) <= tol * norm * norm;
  return r;
}

std::vector<EigenPair> eig_oracle(const Matrix& m) {
  require_square(m);
  const std::size_t n = m.n();
  const double scale = m.max_abs();

  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  if (scale == 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      EigenPair p{0.0, std::vector<std::complex<double>>(n, 0.0)};
      p.vector[i] = 1.0;
      pairs.push_back(std::move(p));
    }
    return pairs;
  }

  const Eigen::MatrixXd a = to_eigen(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a / scale, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hessenberg-QR iteration did not converge");
  }

  const Eigen::VectorXcd values = solver.eigenvalues() * scale;
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  const double norm = operator_norm(m);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd phi = vectors.col(static_cast<Eigen::Index>(k));
    const double len = phi.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorKind::ConvergenceFailure, "degenerate eigenvector");
    }
    phi /= len;
    const std::complex<double> lambda = values(static_cast<Eigen::Index>(k));
    const double residual = (a.cast<std::complex<double>>() * phi - lambda * phi).norm();
    if (residual > 1e-8 * std::max(norm, 1e-300)) {
      throw Error(ErrorKind::ConvergenceFailure,
                  "eigenpair residual " + std::to_string(residual) + " exceeds contract");
    }
    EigenPair p{lambda, std::vector<std::complex<double>>(phi.data(), phi.data() + n)};
    pairs.push_back(std::move(p));
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& x, const EigenPair& y) {
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });
  return pairs;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  std::vector<std::complex<double>> out;
  for (const auto& p : eig_oracle(m)) out.push_back(p.value);
  return out;
}

std::vector<double> symmetric_part_eigs(const Matrix& m) {
  require_square(m);
  const Eigen::MatrixXd a = to_eigen(m);
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

double spectral_radius(const Matrix& m) {
  double rho = 0.0;
  for (const auto& lambda : eigenvalues(m)) rho = std::max(rho, std::abs(lambda));
  return rho;
}

double max_re(const Matrix& m) {
  const auto values = eigenvalues(m);
  double best = values.front().real();
  for (const auto& lambda : values) best = std::max(best, lambda.real());
  return best;
}

double min_re(const Matrix& m) {
  const auto values = eigenvalues(m);
  double best = values.front().real();
  for (const auto& lambda : values) best = std::min(best, lambda.real());
  return best;
}

double orthogonality_defect(const Matrix& u) {
  require_square(u);
  return operator_norm(u.transpose() * u - Matrix::identity(u.n()));
}

}  // namespace qe
