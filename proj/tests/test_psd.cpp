#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liftlab/psd.hpp"
#include "oracles.hpp"

namespace liftlab {
namespace {

Rational q(const char* s) { return parse_rational(s); }

SymMatrixExact from_rows(const std::vector<std::vector<Rational>>& rows) {
  SymMatrixExact m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  return m;
}

SymMatrixExact arrow(int u, const Rational& alpha) {
  SymMatrixExact m(u + 1);
  m.set(0, 0, 1);
  for (int i = 1; i <= u; ++i) {
    m.set(0, i, alpha);
    m.set(i, i, alpha);
  }
  return m;
}

// A * A^T for a random integer d x r matrix A.
SymMatrixExact gram(std::size_t d, std::size_t r, std::mt19937_64& rng) {
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(r));
  for (auto& row : a)
    for (auto& x : row) x = oracle::random_rational(rng, -4, 4, 3);
  SymMatrixExact m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < r; ++k) s += a[i][k] * a[j][k];
      m.set(i, j, s);
    }
  return m;
}

// Exact PSD oracle for small d: every principal minor is nonnegative.
Rational det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

bool all_principal_minors_nonneg(const SymMatrixExact& m) {
  const std::size_t d = m.dim();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = m(idx[i], idx[j]);
    if (det(sub) < 0) return false;
  }
  return true;
}

TEST(PsdExact, Examples) {
  for (std::size_t d : {1u, 3u, 7u}) EXPECT_TRUE(psd_exact(SymMatrixExact::identity(d)));
  EXPECT_FALSE(psd_exact(from_rows({{0, 1}, {1, 0}})));
  EXPECT_TRUE(psd_exact(from_rows({{0, 0}, {0, 0}})));
  EXPECT_TRUE(psd_exact(from_rows({{1, 1}, {1, 1}})));
  EXPECT_FALSE(psd_exact(from_rows({{1, 0}, {0, -1}})));
}

TEST(PsdExact, ArrowMatrixThreshold) {
  for (int u = 1; u <= 8; ++u) {
    Rational alpha(1, u);
    EXPECT_TRUE(psd_exact(arrow(u, alpha)));
    EXPECT_TRUE(psd_exact(arrow(u, alpha - Rational(1, 1000))));
    EXPECT_FALSE(psd_exact(arrow(u, alpha + Rational(1, 1000))));
  }
}

TEST(PsdExact, VerdictCarriesWitness) {
  auto v = psd_exact_verdict(from_rows({{1, 2}, {2, 1}}));
  EXPECT_FALSE(v.psd);
  EXPECT_EQ(v.witness, -3);
}

TEST(PsdExact, AgreesWithPrincipalMinors) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t d = 1 + trial % 5;
    SymMatrixExact m = trial % 2 == 0 ? gram(d, 1 + trial % 3, rng) : SymMatrixExact(d);
    if (trial % 2 == 1) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) m.set(i, j, oracle::random_rational(rng, -2, 3, 2));
    }
    EXPECT_EQ(psd_exact(m), all_principal_minors_nonneg(m)) << "trial " << trial;
  }
}

TEST(PsdFloat, ToleranceSemantics) {
  EXPECT_TRUE(psd_float(SymMatrixFloat::identity(4), 1e-9));
  auto m = SymMatrixFloat::diagonal({1.0, -1e-6});
  EXPECT_FALSE(psd_float(m, 1e-9));
  EXPECT_TRUE(psd_float(m, 1e-5));
}

TEST(EigenSym, ReconstructsMatrix) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (std::size_t d : {1u, 2u, 5u, 12u, 40u}) {
    std::vector<double> a(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= i; ++j) a[i * d + j] = a[j * d + i] = g(rng);
    auto e = eigen_sym(a, d);
    for (std::size_t i = 1; i < d; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += e.values[k] * e.vectors[k * d + i] * e.vectors[k * d + j];
        EXPECT_NEAR(s, a[i * d + j], 1e-10);
      }
  }
}

TEST(ProjectPsd, Examples) {
  auto psd = SymMatrixFloat::from_exact(from_rows({{2, 1}, {1, 2}}));
  auto p = project_psd(psd);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(p(i, j), psd(i, j), 1e-12);

  auto d = project_psd(SymMatrixFloat::diagonal({2.0, -3.0}));
  EXPECT_NEAR(d(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(d(1, 1), 0.0, 1e-12);
  EXPECT_NEAR(d(0, 1), 0.0, 1e-12);

  auto x = project_psd(SymMatrixFloat::from_exact(from_rows({{0, 1}, {1, 0}})));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(x(i, j), 0.5, 1e-12);
}

TEST(ProjectPsd, OutputIsPsdAndIdempotent) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 1 + trial % 12;
    SymMatrixFloat m(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= i; ++j) m.set(i, j, g(rng));
    auto p = project_psd(m);
    EXPECT_TRUE(psd_float(p, 1e-8));
    auto pp = project_psd(p);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(pp(i, j), p(i, j), 1e-8);
  }
}

TEST(PsdKernel, ExactAndFloatAgree) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + trial % 12;
    auto m = gram(d, 1 + trial % d, rng);
    if (trial % 2 == 1) {
      std::size_t i = trial % d;
      m.set(i, i, m(i, i) - Rational(1 + trial % 5));
    }
    EXPECT_EQ(psd_exact(m), psd_float(SymMatrixFloat::from_exact(m), 1e-9)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace liftlab
