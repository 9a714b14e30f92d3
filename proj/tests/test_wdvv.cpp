#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace vt;

namespace {

NumericOptions opts(std::size_t samples = 200, double tol = 1e-8) {
  NumericOptions o;
  o.samples = samples;
  o.tol = tol;
  return o;
}

Configuration permuted(const Configuration& base, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(base.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Member> ms;
  for (std::size_t i : perm) ms.push_back(base.member(i));
  return build_config(base.ambient_dim(), base.radicand(), ms, base.direction(), base.name());
}

double max_rel_diff(const Matrix<double>& a, const Matrix<double>& b) {
  double worst = 0, largest = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
      largest = std::max(largest, std::abs(b(i, j)));
    }
  return worst / largest;
}

}  // namespace

TEST(GramG, A2PlaneIsScalar) {
  for (const Rat& m : {r(1), r(3), r(2, 5)}) {
    const Configuration c = a2_plane(m, m, m);
    const GramG g = gram_G(c);
    EXPECT_EQ(g.entries, QElem(3 * m / 2) * c.span_gram());
    EXPECT_EQ(g.inverse * g.entries, Matrix<QElem>::identity(2));
  }
}

TEST(GramG, DeformedA) {
  for (const Rat& m : {r(2), r(3), r(1, 2)}) {
    const Configuration c = deformed_a(2, m);
    EXPECT_EQ(gram_G(c).entries, QElem(2 * m + 1) * c.span_gram());
  }
}

TEST(GramG, SingularWithMixedSigns) {
  // e1 (1) + e2 (1) + (e1 + e2)(-1/2): the form is (x - y)^2 / 2.
  const Configuration c = build_config(2, 0, {{{q(1), q(0)}, 1}, {{q(0), q(1)}, 1}, {{q(1), q(1)}, r(-1, 2)}},
                                       {r(1), r(1, 3)});
  try {
    gram_G(c);
    FAIL() << "expected SingularGram";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularGram);
  }
  // An orthogonal pair with multiplicities (1, -1) is indefinite but not degenerate.
  EXPECT_NO_THROW(gram_G(orthogonal_pair(1, -1)));
}

TEST(Vee, PassingExamples) {
  for (const Rat& m : {r(1), r(2)})
    for (const Rat& k : {r(1), r(1, 3), r(5)})
      EXPECT_TRUE(vee_condition_exact(coxeter(Family::B, 2, {{"short", m}, {"long", k}})).passed());
  EXPECT_TRUE(vee_condition_exact(deformed_a(2, 2)).passed());
  EXPECT_TRUE(vee_condition_exact(deformed_a(2, 3)).passed());
}

TEST(Vee, TwoDimensionalSpanAlwaysPasses) {
  // With a single plane the condition reduces to det(alpha, G G^-1 alpha) = 0.
  EXPECT_TRUE(vee_condition_exact(a2_plane(1, 1, 2)).passed());
  EXPECT_TRUE(vee_condition_exact(a2_plane(r(3), r(-1, 7), r(2, 9))).passed());
}

TEST(Vee, HeavyRootInA3Fails) {
  const CheckReport rep = vee_condition_exact(a3_with_heavy_root(2));
  ASSERT_EQ(rep.verdict, Verdict::fail);
  ASSERT_TRUE(rep.witness);
  EXPECT_FALSE(rep.witness->residual.is_zero());
}

TEST(Vee, ProportionalPairingOnPassingConfigurations) {
  for (const auto& [label, cfg] : passing_suite()) {
    if (component_indices(cfg).size() != 1) continue;
    const auto mu = is_scalar(cfg);
    ASSERT_TRUE(mu) << label;
    const GramG g = gram_G(cfg);
    const Matrix<QElem> pairing = cfg.covectors() * g.inverse * cfg.covectors().transpose();
    for (std::size_t i = 0; i < cfg.size(); ++i)
      for (std::size_t j = 0; j < cfg.size(); ++j) EXPECT_EQ(pairing(i, j), cfg.inner(i, j) / *mu) << label;
    EXPECT_TRUE(vee_condition_exact(cfg).passed()) << label;
  }
}

TEST(FMatrix, OneDimensional) {
  const auto f = f_matrix(single_vector(1), {1.0}, {0.5});
  ASSERT_EQ(f.entries.rows(), 1u);
  EXPECT_DOUBLE_EQ(f.entries(0, 0), 2.0);
  EXPECT_THROW(f_matrix(single_vector(1), {1.0}, {0.0}), Error);
  EXPECT_THROW(f_matrix(single_vector(1), {1.0, 0.0}, {0.5}), Error);
}

TEST(FMatrix, EqualsGramAtBasePoint) {
  std::uint64_t stream = 0;
  for (const auto& [label, cfg] : passing_suite()) {
    const auto g = convert<double>(gram_G(cfg).entries, [](const QElem& e) { return to_double(e); });
    for (int t = 0; t < 2; ++t) {
      const auto x = sample_coords(cfg, SampleMode::rational, 99, stream++);
      EXPECT_LT(max_rel_diff(f_matrix(cfg, x, x).entries, g), 1e-12) << label;
    }
  }
}

TEST(FMatrix, FiniteDifferenceOnA2Plane) {
  const Configuration c = a2_plane();
  const auto x = span_coordinates<double>(c, {0.3, 0.4});
  EXPECT_LT(fd_cross_check(c, x, 1e-2), 1e-3);
}

TEST(FMatrix, FiniteDifferenceOneDimensional) {
  EXPECT_LT(fd_cross_check(single_vector(1), {1.0}, 1e-2), 1e-3);
  EXPECT_THROW(fd_cross_check(single_vector(1), {0.05}, 1e-2), Error);
}

TEST(FMatrix, ZeroMultiplicityMemberContributesNothing) {
  const Configuration base = a2_plane();
  std::vector<Member> ms = base.members();
  ms.push_back({{q(1), q(3)}, 0});
  const Configuration extended = build_config(2, base.radicand(), ms, base.direction());
  ASSERT_EQ(extended.span_basis(), base.span_basis());
  const auto x = span_coordinates<double>(base, {0.3, 0.4});
  const std::vector<double> a{0.7, -0.2};
  const auto f1 = f_matrix(base, a, x).entries;
  const auto f2 = f_matrix(extended, a, x).entries;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(f1(i, j), f2(i, j));
}

TEST(Wdvv, Examples) {
  EXPECT_TRUE(wdvv_numeric(deformed_c(1, 2, 1), opts()).passed());
  const CheckReport one = wdvv_numeric(single_vector(2), opts());
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(one.numeric->max_residual, 0.0);
}

TEST(Wdvv, TwoDimensionalSpanAlwaysCommutes) {
  // x^1 F_1 + x^2 F_2 = G makes G^-1 F_1 and G^-1 F_2 commute for any multiplicities.
  const CheckReport rep = wdvv_numeric(a2_plane(1, 1, 2), opts());
  EXPECT_TRUE(rep.passed());
  EXPECT_LT(rep.numeric->max_residual, 1e-12);
}

TEST(Wdvv, HeavyRootInA3Fails) {
  const Configuration c = a3_with_heavy_root(2);
  EXPECT_FALSE(main_identity_exact(c).passed());
  const CheckReport w = wdvv_numeric(c, opts());
  EXPECT_EQ(w.verdict, Verdict::fail);
  EXPECT_GT(w.numeric->max_residual, 1e-3);
  EXPECT_EQ(flat_connection_numeric(c, opts()).verdict, Verdict::fail);
}

TEST(Wdvv, TheoremOnSuite) {
  for (const auto& [label, cfg] : passing_suite()) {
    ASSERT_TRUE(main_identity_exact(cfg).passed()) << label;
    EXPECT_TRUE(vee_condition_exact(cfg).passed()) << label;
    EXPECT_TRUE(wdvv_numeric(cfg, opts()).passed()) << label;
  }
}

TEST(Wdvv, VerdictStableUnderBasisChange) {
  std::mt19937_64 rng(8);
  std::vector<Configuration> cases;
  for (const auto& [label, cfg] : passing_suite()) cases.push_back(cfg);
  cases.push_back(a3_with_heavy_root(2));
  cases.push_back(a3_with_heavy_root(r(1, 3)));
  for (const auto& cfg : cases) {
    const Configuration other = permuted(cfg, rng);
    EXPECT_EQ(wdvv_numeric(cfg, opts(50)).verdict, wdvv_numeric(other, opts(50)).verdict) << cfg.name();
  }
}

TEST(Flat, Examples) {
  EXPECT_TRUE(flat_connection_numeric(deformed_a(2, 3), opts(200, 1e-9)).passed());
  const CheckReport one = flat_connection_numeric(single_vector(3), opts());
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(one.numeric->max_residual, 0.0);
  const CheckReport bad = flat_connection_numeric(a2_plane(1, 1, 2), opts());
  EXPECT_EQ(bad.verdict, Verdict::fail);
}

TEST(Flat, AgreesWithWdvvPerSample) {
  std::vector<Configuration> cases;
  for (const auto& [label, cfg] : passing_suite())
    if (component_indices(cfg).size() == 1) cases.push_back(cfg);
  cases.push_back(a3_with_heavy_root(2));
  for (const auto& cfg : cases) {
    const RealView<double> view(cfg);
    const auto g_inv = convert<double>(gram_G(cfg).inverse, [](const QElem& e) { return to_double(e); });
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto x = sample_coords(cfg, SampleMode::rational, 5, s);
      const double w = detail::max_pairwise_commutator(detail::gauged_f_matrices(view, g_inv, x));
      const double f = detail::max_pairwise_commutator(detail::connection_matrices(view, x));
      EXPECT_EQ(w < 1e-8, f < 1e-8) << cfg.name() << " sample " << s << ": " << w << " vs " << f;
    }
  }
}

TEST(Flat, WitnessCommutators) {
  const Configuration c = a3_with_heavy_root(2);
  const auto mats = wdvv_commutators(c, sample_coords(c, SampleMode::rational, 0));
  EXPECT_EQ(mats.size(), 3u);
  double largest = 0;
  for (const auto& m : mats) largest = std::max(largest, frobenius_norm(m));
  EXPECT_GT(largest, 1e-3);
}
