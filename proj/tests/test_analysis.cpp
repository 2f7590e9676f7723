#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "quasieig/analysis.hpp"
#include "quasieig/error.hpp"
#include "quasieig/matcore.hpp"
#include "support/generators.hpp"

using namespace qe;
using qe::testing::Rng;

namespace {

const Matrix kPerron{{0, 2}, {3, 0}};
const double kPi = std::numbers::pi;

Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.n();
  Matrix out(n, n);
  std::size_t k = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.n(); ++i)
      for (std::size_t j = 0; j < b.n(); ++j) out(k + i, k + j) = b(i, j);
    k += b.n();
  }
  return out;
}

Matrix random_with_norm(std::size_t n, Rng& rng, double norm) {
  const Matrix d = qe::testing::random_matrix(n, rng);
  return d * (norm / operator_norm(d));
}

/// Eigenvalues predicted by the canonical form, matched greedily against the oracle.
bool spectrum_matches(const NormalCanonicalForm& f, const Matrix& a, double tol) {
  std::vector<std::complex<double>> predicted;
  for (const auto& b : f.rotation_blocks) {
    predicted.push_back(std::polar(b.r, b.theta));
    predicted.push_back(std::polar(b.r, -b.theta));
  }
  for (double mu : f.real_eigs) predicted.emplace_back(mu, 0.0);
  auto actual = eigenvalues(a);
  if (actual.size() != predicted.size()) return false;
  for (auto z : predicted) {
    auto it = std::min_element(actual.begin(), actual.end(), [&](auto x, auto y) {
      return std::abs(x - z) < std::abs(y - z);
    });
    if (std::abs(*it - z) > tol) return false;
    actual.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("perron check fixtures") {
  const auto swap = perron_check(Matrix{{0, 1}, {1, 0}});
  CHECK(swap.holds);
  CHECK(swap.details.find("equality") != std::string::npos);
  const auto nil = perron_check(Matrix{{0, 1}, {0, 0}});
  CHECK(nil.holds);
  CHECK(std::abs(nil.lhs) <= 1e-6);
  CHECK(perron_check(Matrix::identity(3)).holds);
  CHECK_FALSE(perron_check(Matrix{{1, -1}, {1, 1}}).applicable);
}

TEST_CASE("quasi-eigenvalue of irreducible nonnegative matrices is the Perron root") {
  Rng rng(201);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 8);
    const Matrix a = qe::testing::random_irreducible_nonneg(n, rng);
    const auto q = quasi_pair(a, Cone::orthant(n));
    CHECK(std::abs(q.lambda_upper - spectral_radius(a)) <= 1e-6);
    CHECK(perron_check(a).holds);
  }
}

TEST_CASE("max real part check") {
  CHECK(max_re_check(Matrix{{-1, 1}, {1, -1}}).holds);
  const auto d = max_re_check(Matrix{{2, 0}, {0, 1}});
  CHECK(d.holds);
  CHECK(d.lhs == doctest::Approx(2.0));
  const auto p = max_re_check(kPerron);
  CHECK(std::abs(p.lhs - std::sqrt(6.0)) <= 1e-8);
  CHECK_FALSE(max_re_check(Matrix{{0, -1}, {1, 0}}).applicable);

  Rng rng(203);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 8);
    Matrix a = qe::testing::random_matrix(n, rng, 0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = qe::testing::uniform(rng, -2, 2);
    const double upper = upper_quasi_eigenvalue(a, Cone::orthant(n)).value;
    CHECK(std::abs(upper - max_re(a)) <= 1e-6);
    CHECK(max_re_check(a).holds);
  }
}

TEST_CASE("isc check") {
  const auto p = isc_check(kPerron);
  CHECK(p.holds);
  CHECK(std::abs(p.lhs - std::sqrt(6.0)) <= 1e-8);
  const auto n = isc_check(kPerron * -1.0);
  CHECK(n.holds);
  CHECK(std::abs(n.lhs + std::sqrt(6.0)) <= 1e-8);
  CHECK_FALSE(isc_check(Matrix::identity(2)).applicable);

  Rng rng(207);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 8);
    const Matrix a = qe::testing::random_metzler(n, rng) * -1.0;
    CHECK(isc_check(a).holds);
    const auto q = quasi_pair(a, Cone::orthant(n));
    CHECK(q.eigen_residual_right <= 1e-6);
    CHECK(q.eigen_residual_left <= 1e-6);
  }
}

TEST_CASE("perturbation constants") {
  const auto p = perturbation_constants(kPerron, Cone::orthant(2));
  REQUIRE(p.c1);
  CHECK(std::abs(*p.c1 - std::sqrt(2.5)) <= 1e-7);
  CHECK(*p.c0 == std::max(*p.c1, *p.c2));

  for (std::size_t n = 1; n <= 5; ++n) {
    const auto id = perturbation_constants(Matrix::identity(n), Cone::orthant(n));
    REQUIRE(id.c1);
    CHECK(std::abs(*id.c1 - std::sqrt(double(n))) <= 1e-7);
  }
  CHECK_THROWS_AS(perturbation_constants(Matrix{{2, 0}, {0, 1}}, Cone::orthant(2)), Error);

  Rng rng(211);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 6);
    const auto b = perturbation_constants(qe::testing::random_isc(n, rng), Cone::orthant(n));
    REQUIRE(b.c0);
    CHECK(*b.c1 >= 1.0 - 1e-12);
    CHECK(*b.c2 >= 1.0 - 1e-12);
    CHECK(*b.c0 == std::max(*b.c1, *b.c2));
  }
}

TEST_CASE("perturbation bounds") {
  const Cone s = Cone::orthant(2);
  CHECK(perturbation_bound_check(kPerron, s, Matrix(2, 2)).holds);
  const auto up = perturbation_bound_check(kPerron, s, Matrix{{0.1, 0.1}, {0.1, 0.1}});
  CHECK(up.holds);
  CHECK(quasi_pair(kPerron + Matrix{{0.1, 0.1}, {0.1, 0.1}}, s).lambda_lower >=
        quasi_pair(kPerron, s).lambda_upper - 1e-9);

  Rng rng(213);
  const double lambda = std::sqrt(6.0);
  const double c0 = *perturbation_constants(kPerron, s).c0;
  for (int t = 0; t < 100; ++t) {
    const Matrix d = random_with_norm(2, rng, 0.05);
    CHECK(perturbation_bound_check(kPerron, s, d).holds);
    CHECK(std::abs(upper_quasi_eigenvalue(kPerron + d, s).value - lambda) <= c0 * 0.05 + 1e-9);
  }
  CHECK_FALSE(perturbation_bound_check(Matrix{{2, 0}, {0, 1}}, s, Matrix(2, 2)).applicable);
}

TEST_CASE("perturbation bounds on random isc matrices") {
  Rng rng(217);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 6);
    const Matrix a = qe::testing::random_isc(n, rng);
    const double size = 0.1 * operator_norm(a) * qe::testing::uniform(rng, 0.01, 1.0);
    Matrix d = random_with_norm(n, rng, size);
    if (t % 3 == 1)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(d(i, j));
    if (t % 3 == 2)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = -std::abs(d(i, j));
    CHECK(perturbation_bound_check(a, Cone::orthant(n), d).holds);
  }
}

TEST_CASE("cone continuity") {
  const Cone s = Cone::orthant(2);
  const auto zero = cone_continuity_experiment(kPerron, s, {0.0});
  CHECK(zero.samples[0].deviation <= 1e-9);

  const auto ex = cone_continuity_experiment(kPerron, s, {0.1, 0.05, 0.01});
  CHECK(ex.report.holds);
  CHECK(std::isfinite(ex.c3_estimate));
  for (std::size_t i = 1; i < ex.samples.size(); ++i)
    CHECK(ex.samples[i].deviation <= ex.samples[i - 1].deviation + 1e-8);
  CHECK(ex.samples.back().deviation <= 1e-8 + 10 * kDefaultTol * 100);

  const auto id = cone_continuity_experiment(Matrix::identity(3), Cone::orthant(3), {0.1, 0.01});
  for (const auto& sample : id.samples) CHECK(sample.deviation <= 1e-8);

  CHECK_THROWS_AS(cone_continuity_experiment(Matrix{{2, 0}, {0, 1}}, s, {0.1}), Error);
}

TEST_CASE("spectral sandwich") {
  Rng rng(219);
  const auto skew = bounds_check(Matrix{{0, -1}, {1, 0}}, qe::testing::random_cone(2, rng));
  CHECK(skew.holds);
  CHECK(std::abs(skew.lhs) <= 1e-8);
  CHECK(std::abs(skew.rhs) <= 1e-8);
  const auto ex2 = bounds_check(Matrix{{1, -1}, {1, 1}}, Cone::orthant(2));
  CHECK(ex2.holds);
  CHECK(ex2.lhs == doctest::Approx(1.0));

  for (int t = 0; t < 200; ++t) {
    const std::size_t n = qe::testing::pick(rng, 1, 6);
    const Matrix a = t % 2 ? qe::testing::random_normal(n, rng).a : qe::testing::random_matrix(n, rng);
    CHECK(bounds_check(a, qe::testing::random_cone(n, rng)).holds);
  }
}

TEST_CASE("normal canonical form fixtures") {
  const auto rot = normal_canonical_form(Matrix{{0, -1}, {1, 0}});
  REQUIRE(rot.l == 1);
  CHECK(rot.rotation_blocks[0].r == doctest::Approx(1.0));
  CHECK(rot.rotation_blocks[0].theta == doctest::Approx(kPi / 2));

  const auto d = normal_canonical_form(Matrix{{3, 0}, {0, -1}});
  CHECK(d.l == 0);
  REQUIRE(d.real_eigs.size() == 2);
  CHECK(d.real_eigs[0] == doctest::Approx(3.0));
  CHECK(d.real_eigs[1] == doctest::Approx(-1.0));

  const Matrix v = random_orthogonal(3, 17);
  const Matrix a = v * block_diag({rotation_scaling_block(2, kPi / 3), Matrix{{5}}}) * v.transpose();
  const auto f = normal_canonical_form(a);
  REQUIRE(f.l == 1);
  CHECK(std::abs(f.rotation_blocks[0].r - 2.0) <= 1e-8);
  CHECK(std::abs(f.rotation_blocks[0].theta - kPi / 3) <= 1e-8);
  CHECK(std::abs(f.real_eigs[0] - 5.0) <= 1e-8);

  CHECK_THROWS_AS(normal_canonical_form(Matrix{{0, 2}, {3, 0}}), Error);
}

TEST_CASE("normal canonical form invariants") {
  Rng rng(223);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 1, 7);
    const auto inst = qe::testing::random_normal(n, rng);
    const auto f = normal_canonical_form(inst.a);
    CHECK(orthogonality_defect(f.u_a) <= 1e-10);
    CHECK(operator_norm(conjugate_by(inst.a, f.u_a) - f.assembled()) <=
          1e-8 * operator_norm(inst.a));
    CHECK(spectrum_matches(f, inst.a, 1e-8));
    CHECK(f.l == inst.blocks.size());
    const auto re = f.subspace_real_parts();
    for (std::size_t i = 1; i < f.l; ++i) CHECK(re[i - 1] >= re[i]);
    for (const auto& b : f.rotation_blocks) CHECK((b.theta > 0.0 && b.theta < kPi));
  }
}

TEST_CASE("normal classification fixtures") {
  const auto skew = theorem4_classify(Matrix{{0, -1}, {1, 0}}, Cone::orthant(2));
  CHECK(skew.predicted_case == 2);
  CHECK(skew.report.holds);
  CHECK(std::abs(skew.lambda_upper) <= 1e-8);

  const Matrix two = block_diag({rotation_scaling_block(1, kPi / 4), rotation_scaling_block(2, 3 * kPi / 4)});
  const auto four = theorem4_classify(two, Cone::orthant(4));
  CHECK(four.predicted_case == 1);
  CHECK(four.report.holds);
  CHECK(std::abs(four.lambda_upper - std::sqrt(0.5)) <= 1e-8);
  CHECK(std::abs(four.lambda_lower + std::sqrt(2.0)) <= 1e-8);

  const auto diag = theorem4_classify(Matrix{{2, 0}, {0, 1}}, Cone::orthant(2));
  CHECK(diag.predicted_case == 1);
  CHECK(diag.report.holds);
  CHECK_FALSE(diag.mixed);

  const auto mixed = theorem4_classify(block_diag({rotation_scaling_block(1, 1.0), Matrix{{2}}}),
                                       Cone::orthant(3));
  CHECK(mixed.mixed);
}

TEST_CASE("normal classification on planar normal matrices and eigenbasis-aligned cones") {
  Rng rng(227);
  for (int t = 0; t < 100; ++t) {
    const auto inst = qe::testing::random_normal(2, rng);
    CHECK(theorem4_classify(inst.a, qe::testing::random_cone(2, rng)).report.holds);
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 2, 6);
    const auto inst = qe::testing::random_normal(n, rng);
    if (!inst.blocks.empty()) continue;
    CHECK(theorem4_classify(inst.a, Cone::rotated(inst.v)).report.holds);
  }
}

TEST_CASE("in three dimensions a cone can miss every eigenline without pinning the extremes") {
  // With U's rows all of mixed sign, no coordinate axis meets U·S₊'s interior,
  // yet the quasi-eigenvalues of diag(1,2,3) land strictly inside [1, 3].
  const Matrix a = Matrix::diagonal(std::vector<double>{1, 2, 3});
  int found = 0;
  for (std::uint64_t seed = 0; seed < 200 && found < 5; ++seed) {
    const Cone c = Cone::rotated(random_orthogonal(3, seed));
    bool misses = true;
    for (std::size_t i = 0; i < 3; ++i) misses = misses && !span_meets_interior(c, {Vector::unit(3, i)});
    if (!misses) continue;
    const auto report = theorem4_classify(a, c);
    CHECK(report.predicted_case == 1);
    if (report.lambda_upper < 3.0 - 1e-3) {
      ++found;
      CHECK_FALSE(report.report.holds);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("invariance check") {
  const Matrix a{{2, 0}, {0, 1}};
  const Cone s = Cone::orthant(2);
  const auto id = invariance_check(a, s, Matrix::identity(2));
  CHECK(id.holds);
  CHECK(id.lhs == id.rhs);
  const auto quarter = invariance_check(a, s, givens_rotation(2, 0, 1, kPi / 2));
  CHECK(quarter.holds);
  CHECK(std::abs(quarter.rhs - 2.0) <= 1e-8);
  CHECK_THROWS_AS(invariance_check(a, s, Matrix{{1, 1}, {0, 1}}), Error);

  Rng rng(229);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = qe::testing::pick(rng, 1, 6);
    CHECK(invariance_check(qe::testing::random_matrix(n, rng), qe::testing::random_cone(n, rng),
                           random_orthogonal(n, rng()))
              .holds);
  }
}
