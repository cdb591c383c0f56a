#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "liftlab/psd.hpp"
#include "liftlab/decomposition.hpp"
#include "liftlab/error.hpp"
#include "liftlab/hierarchy.hpp"
#include "liftlab/lasserre_sdp.hpp"
#include "liftlab/sampling.hpp"
#include "liftlab/solvers.hpp"
#include "liftlab/symmetric_blocks.hpp"
#include "oracles.hpp"

namespace liftlab {
namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational certificate_value(int n, const Rational& eps, int t) {
  return 2 * (1 - eps) * n / (n + (t - 1) * (1 - eps));
}

void expect_point_feasible(const LPProblem& p, const LPResult& r) {
  ASSERT_EQ(r.status, LPStatus::kOptimal);
  Rational obj = 0;
  for (std::size_t j = 0; j < p.objective.size(); ++j) {
    EXPECT_GE(r.point[j], 0);
    obj += p.objective[j] * r.point[j];
  }
  EXPECT_EQ(obj, r.value);
  for (const auto& row : p.rows) {
    Rational lhs = 0;
    for (const auto& [j, a] : row.terms) lhs += a * r.point[j];
    switch (row.sense) {
      case RowSense::kLessEqual: EXPECT_LE(lhs, row.rhs); break;
      case RowSense::kGreaterEqual: EXPECT_GE(lhs, row.rhs); break;
      case RowSense::kEqual: EXPECT_EQ(lhs, row.rhs); break;
    }
  }
}

LPProblem tiny_problem(std::vector<Rational> objective, std::vector<LPRow> rows) {
  LPProblem p;
  std::vector<SubsetKey> keys;
  for (std::size_t j = 0; j < objective.size(); ++j) keys.push_back(SubsetKey::singleton(static_cast<int>(j)));
  p.variables = make_family(SubsetFamily::from_keys(static_cast<int>(objective.size()), keys));
  p.objective = std::move(objective);
  p.rows = std::move(rows);
  return p;
}

TEST(Simplex, BaseLpMatchesClosedForm) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_instance(1 + trial % 10, rng);
    auto p = base_lp(inst);
    auto r = simplex_exact(p);
    EXPECT_EQ(r.value, lp_value(inst));
    expect_point_feasible(p, r);
  }
  EXPECT_EQ(simplex_exact(base_lp(KnapsackInstance::make({1, 2}, {3, 2}, 2))).value, 4);
}

TEST(Simplex, DegenerateObjective) {
  LPProblem p;
  p.variables = make_family(SubsetFamily::up_to(1, 0));
  p.objective = {0};
  p.rows = {LPRow{{{0, 1}}, RowSense::kEqual, 1}};
  auto r = simplex_exact(p);
  EXPECT_EQ(r.status, LPStatus::kOptimal);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.point[0], 1);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  auto infeasible = tiny_problem({1, 1}, {LPRow{{{0, 1}, {1, 1}}, RowSense::kLessEqual, 1},
                                          LPRow{{{0, 1}, {1, 1}}, RowSense::kGreaterEqual, 2}});
  EXPECT_EQ(simplex_exact(infeasible).status, LPStatus::kInfeasible);
  auto unbounded = tiny_problem({1, 0}, {LPRow{{{0, 1}, {1, -1}}, RowSense::kGreaterEqual, 0}});
  EXPECT_EQ(simplex_exact(unbounded).status, LPStatus::kUnbounded);
  auto negative_rhs = tiny_problem({-1, -1}, {LPRow{{{0, 1}, {1, 2}}, RowSense::kGreaterEqual, 3},
                                              LPRow{{{0, 1}}, RowSense::kLessEqual, 1}});
  auto r = simplex_exact(negative_rhs);
  EXPECT_EQ(r.value, q("-3/2"));
  expect_point_feasible(negative_rhs, r);
}

TEST(Simplex, DegenerateCyclingExample) {
  // A classic cycling instance for the largest-coefficient rule.
  auto p = tiny_problem({q("3/4"), -150, q("1/50"), -6},
                        {LPRow{{{0, q("1/4")}, {1, -60}, {2, q("-1/25")}, {3, 9}}, RowSense::kLessEqual, 0},
                         LPRow{{{0, q("1/2")}, {1, -90}, {2, q("-1/50")}, {3, 3}}, RowSense::kLessEqual, 0},
                         LPRow{{{2, 1}}, RowSense::kLessEqual, 1}});
  auto r = simplex_exact(p);
  EXPECT_EQ(r.value, q("1/20"));
  expect_point_feasible(p, r);
}

TEST(SaValue, LevelOneIsLp) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_instance(2 + trial % 6, rng);
    EXPECT_EQ(sa_value(inst, 1).value, lp_value(inst));
  }
}

TEST(SaValue, UniformSixAtLevelTwo) {
  auto inst = uniform_gap_instance(6, q("1/10"));
  auto r = sa_value(inst, 2);
  EXPECT_GE(r.value, q("36/23"));
  EXPECT_EQ(r.value, q("9/5"));
  expect_point_feasible(sa_lp(inst, 2), r.lp);
  EXPECT_TRUE(sa_membership(r.lp.point, inst, 2).accepted());
}

TEST(SaValue, MonotoneAndAboveCertificate) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = random_instance(3 + trial % 3, rng);
    Rational prev = sa_value(inst, 1).value;
    for (int t = 2; t <= inst.size(); ++t) {
      Rational v = sa_value(inst, t).value;
      EXPECT_LE(v, prev);
      prev = v;
    }
    EXPECT_GE(prev, opt_bruteforce(inst));
  }
  for (int n : {5, 8}) {
    for (int t = 2; t <= 3; ++t) EXPECT_GE(sa_value(uniform_gap_instance(n, q("1/10")), t).value,
                                           certificate_value(n, q("1/10"), t));
  }
}

TEST(SaValue, OptimalPointPassesPsdChecker) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 6; ++trial) {
    auto inst = random_instance(4 + trial % 2, rng);
    auto r = sa_value(inst, 2);
    EXPECT_TRUE(sa_membership(r.lp.point, inst, 2).accepted());
  }
}

TEST(SaValue, TopLevelIsNotTheHull) {
  // Constraints are localized only by products of degree t-1, so at t = n
  // an infeasible full assignment can still carry mass.
  auto inst = KnapsackInstance::make({3, 2, 6}, {q("8/3"), 1, 2}, q("83/8"));
  auto r = sa_value(inst, 3);
  EXPECT_EQ(opt_bruteforce(inst), q("14/3"));
  EXPECT_GT(r.value, q("14/3"));
  EXPECT_TRUE(sa_membership(r.lp.point, inst, 3).accepted());
  EXPECT_FALSE(inst.fits(SubsetKey::full(3)));
  EXPECT_GT(r.lp.point.at(SubsetKey::full(3)), 0);
}

TEST(SaValue, RejectsOversizedLp) {
  EXPECT_THROW(sa_value(uniform_gap_instance(20, q("1/10")), 4), InvalidArgument);
}

TEST(GapTable, SaRowsAboveCertificate) {
  auto inst = uniform_gap_instance(12, q("1/10"));
  auto rows = gap_table(inst, 3, GapMode::kSA);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(*rows[0].exact, lp_value(inst));
  for (const auto& r : rows) {
    EXPECT_EQ(r.status, "exact");
    EXPECT_GE(*r.exact, certificate_value(12, q("1/10"), r.t));
  }
}

TEST(Lasserre, IntegerHullForTwoItems) {
  auto inst = KnapsackInstance::make({2, 3}, {3, 4}, 4);
  auto r = lasserre_value(inst, 2);
  EXPECT_NEAR(r.value, 4.0, 1e-4);
  EXPECT_FALSE(r.budget_exhausted());
}

TEST(Lasserre, UniformSixLevelTwo) {
  auto inst = uniform_gap_instance(6, q("1/10"));
  auto full = lasserre_value(inst, 2);
  EXPECT_NEAR(full.value, 1.8, 1e-3);
  EXPECT_LE(full.residual, 1e-7);
  EXPECT_LE(full.box_residual, 1e-6);
  LasserreOptions sym;
  sym.symmetry = true;
  auto fast = lasserre_value(inst, 2, sym);
  EXPECT_TRUE(fast.symmetric);
  EXPECT_NEAR(fast.value, full.value, 2e-4);
  EXPECT_EQ(big_items(inst, 1), SubsetKey());
  EXPECT_TRUE(overflow_vanishing_check(full.point, inst, big_items(inst, 1), 2, 1e-6).accepted());
  // A value above 1 needs nonzero pair moments: with all pairs zero the P_1
  // block is an arrow matrix and forces sum_i y_i <= 1.
  EXPECT_FALSE(overflow_vanishing_check(full.point, inst, SubsetKey::full(6), 2, 1e-6).accepted());
}

TEST(Lasserre, OverflowSetsVanishAtLevelThree) {
  auto inst = uniform_gap_instance(6, q("1/10"));
  LasserreOptions sym;
  sym.symmetry = true;
  auto r = lasserre_value(inst, 3, sym);
  EXPECT_NEAR(r.value, 1.0, 1e-4);
  SubsetKey s = big_items(inst, 2);
  EXPECT_EQ(s, SubsetKey::full(6));
  EXPECT_TRUE(overflow_vanishing_check(r.point, inst, s, 3, 1e-6).accepted());
}

TEST(Lasserre, BelowSaAtEqualLevel) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    auto inst = random_instance(3 + trial % 2, rng);
    for (int t = 1; t <= 2; ++t) {
      double las = lasserre_value(inst, t).value;
      double sa = to_double(sa_value(inst, t).value);
      EXPECT_LE(las, sa + 1e-3);
      EXPECT_GE(las, to_double(opt_bruteforce(inst)) - 1e-4);
    }
  }
}

TEST(Lasserre, MonotoneInLevel) {
  auto inst = uniform_gap_instance(6, q("1/10"));
  LasserreOptions sym;
  sym.symmetry = true;
  double prev = 1e9;
  for (int t = 1; t <= 3; ++t) {
    double v = lasserre_value(inst, t, sym).value;
    EXPECT_LE(v, prev + 2 * sym.tol);
    EXPECT_LE(v, 1.0 + 1.0 / std::max(t - 1, 1) + 1e-3);
    prev = v;
  }
}

TEST(Lasserre, RejectsOversizedMoments) {
  EXPECT_EQ(moment_dimension(8, 3), 93u);
  EXPECT_THROW(lasserre_value(uniform_gap_instance(20, q("1/10")), 3), InvalidArgument);
  LasserreOptions sym;
  sym.symmetry = true;
  EXPECT_THROW(lasserre_value(KnapsackInstance::make({1, 2}, {1, 1}, 2), 1, sym), InvalidArgument);
}

TEST(SymmetricBasis, BlocksReproduceSpectrum) {
  std::mt19937_64 rng(56);
  std::normal_distribution<double> g;
  for (auto [n, t] : {std::pair{4, 2}, {6, 2}, {6, 3}, {7, 3}}) {
    SymmetricBasis basis(n, t);
    for (int m = 0; m <= t; ++m) {
      std::vector<double> f(2 * t + 1);
      for (auto& x : f) x = g(rng);
      auto fam = SubsetFamily::up_to(n, m);
      const std::size_t d = fam.size();
      std::vector<double> full(d * d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) full[i * d + j] = f[(fam[i] | fam[j]).size()];
      auto expect = eigen_sym(full, d, false).values;

      std::vector<double> got;
      auto blocks = basis.blocks(f, m);
      for (int k = 0; k <= m; ++k) {
        const std::size_t bd = m - k + 1;
        auto ev = eigen_sym(blocks[k], bd, false).values;
        auto mult = static_cast<std::size_t>(basis.multiplicity(k) + 0.5);
        for (double e : ev) got.insert(got.end(), mult, e);
      }
      std::sort(got.begin(), got.end());
      ASSERT_EQ(got.size(), expect.size()) << n << " " << t << " " << m;
      for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(got[i], expect[i], 1e-9);
    }
  }
}

TEST(Lasserre, SerialAndParallelAgree) {
  auto inst = uniform_gap_instance(5, q("1/10"));
  LasserreOptions a;
  LasserreOptions b;
  b.exec = Execution::kParallel;
  auto ra = lasserre_value(inst, 2, a);
  auto rb = lasserre_value(inst, 2, b);
  EXPECT_EQ(ra.value, rb.value);
  EXPECT_EQ(ra.sweeps, rb.sweeps);
  EXPECT_EQ(ra.point.values, rb.point.values);
}

}  // namespace
}  // namespace liftlab
