#include "liftlab/simplex.hpp"

#include "liftlab/error.hpp"

namespace liftlab {

int LPProblem::variable(SubsetKey s) const {
  auto idx = variables->index_of(s);
  if (!idx) throw InvalidArgument("LP has no variable for " + liftlab::to_string(s));
  return static_cast<int>(*idx);
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

using SparseRow = std::vector<std::pair<int, Rational>>;

// Vertex simplex on max c.x, A x <= b with x free. A basis is a set of n
// linearly independent rows held tight; binv is the inverse of the basis
// matrix (row i = variable i, column k = basis position k) and u = c^T binv
// are the row multipliers. Optimal when u >= 0.
class VertexSimplex {
 public:
  VertexSimplex(int n, std::vector<SparseRow> rows, std::vector<Rational> b, std::vector<Rational> c)
      : n_(n), rows_(std::move(rows)), b_(std::move(b)), c_(std::move(c)), slack_(rows_.size()),
        in_basis_(rows_.size(), -1) {}

  // Starts at the vertex x with the given tight rows and basis inverse.
  void start(std::vector<Rational> x, std::vector<int> basis, std::vector<Rational> binv) {
    x_ = std::move(x);
    basis_ = std::move(basis);
    binv_ = std::move(binv);
    std::fill(in_basis_.begin(), in_basis_.end(), -1);
    for (int k = 0; k < n_; ++k) in_basis_[basis_[k]] = k;
    for (std::size_t r = 0; r < rows_.size(); ++r) slack_[r] = b_[r] - dot(rows_[r], x_);
    u_.assign(n_, Rational(0));
    for (int i = 0; i < n_; ++i) {
      if (is_zero(c_[i])) continue;
      for (int k = 0; k < n_; ++k) {
        const Rational& v = at(i, k);
        if (!is_zero(v)) u_[k] += c_[i] * v;
      }
    }
  }

  LPStatus run(long& iterations) {
    std::vector<Rational> d(n_);
    std::vector<Rational> ad(rows_.size());
    Rational tmp;
    while (true) {
      int k = -1;
      for (int pos = 0; pos < n_; ++pos) {
        if (sgn(u_[pos]) < 0 && (k < 0 || basis_[pos] < basis_[k])) k = pos;
      }
      if (k < 0) return LPStatus::kOptimal;
      ++iterations;

      for (int i = 0; i < n_; ++i) d[i] = -at(i, k);
      int enter = -1;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (in_basis_[r] >= 0) continue;
        ad[r] = dot(rows_[r], d);
        if (sgn(ad[r]) <= 0) continue;
        Rational ratio = slack_[r] / ad[r];
        if (enter < 0 || ratio < best) {
          best = std::move(ratio);
          enter = static_cast<int>(r);
        }
      }
      if (enter < 0) return LPStatus::kUnbounded;

      if (!is_zero(best)) {
        for (int i = 0; i < n_; ++i) {
          if (is_zero(d[i])) continue;
          mpq_mul(tmp.get_mpq_t(), best.get_mpq_t(), d[i].get_mpq_t());
          x_[i] += tmp;
        }
        for (std::size_t r = 0; r < rows_.size(); ++r) {
          if (in_basis_[r] >= 0 || is_zero(ad[r])) continue;
          mpq_mul(tmp.get_mpq_t(), best.get_mpq_t(), ad[r].get_mpq_t());
          slack_[r] -= tmp;
        }
        slack_[basis_[k]] = best;
      } else {
        slack_[basis_[k]] = 0;
      }
      pivot(k, enter);
    }
  }

  // Exchanges basis position k for row r; r must not be tight-dependent.
  void pivot(int k, int r) {
    std::vector<Rational> rho(n_);
    Rational tmp;
    for (const auto& [i, a] : rows_[r]) {
      for (int j = 0; j < n_; ++j) {
        const Rational& v = at(i, j);
        if (is_zero(v)) continue;
        mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), v.get_mpq_t());
        rho[j] += tmp;
      }
    }
    if (is_zero(rho[k])) throw std::logic_error("simplex: singular pivot");
    std::vector<int> nz;
    for (int j = 0; j < n_; ++j) {
      if (j != k && !is_zero(rho[j])) {
        rho[j] /= rho[k];
        nz.push_back(j);
      }
    }
    for (int i = 0; i < n_; ++i) {
      Rational& cik = at(i, k);
      if (is_zero(cik)) continue;
      for (int j : nz) {
        mpq_mul(tmp.get_mpq_t(), cik.get_mpq_t(), rho[j].get_mpq_t());
        Rational& cij = at(i, j);
        mpq_sub(cij.get_mpq_t(), cij.get_mpq_t(), tmp.get_mpq_t());
      }
      cik /= rho[k];
    }
    if (!is_zero(u_[k])) {
      for (int j : nz) {
        mpq_mul(tmp.get_mpq_t(), u_[k].get_mpq_t(), rho[j].get_mpq_t());
        u_[j] -= tmp;
      }
      u_[k] /= rho[k];
    }
    in_basis_[basis_[k]] = -1;
    basis_[k] = r;
    in_basis_[r] = k;
  }

  Rational& at(int i, int k) { return binv_[static_cast<std::size_t>(i) * n_ + k]; }
  const Rational& at(int i, int k) const { return binv_[static_cast<std::size_t>(i) * n_ + k]; }

  const std::vector<Rational>& x() const { return x_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<Rational>& binv() const { return binv_; }
  int in_basis(int r) const { return in_basis_[r]; }

 private:
  static Rational dot(const SparseRow& row, const std::vector<Rational>& x) {
    Rational s = 0;
    for (const auto& [i, a] : row) {
      if (!is_zero(x[i])) s += a * x[i];
    }
    return s;
  }

  int n_;
  std::vector<SparseRow> rows_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  std::vector<Rational> x_;
  std::vector<Rational> slack_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  std::vector<Rational> binv_;
  std::vector<Rational> u_;
};

}  // namespace

LPResult simplex_exact(const LPProblem& p) {
  const int n = static_cast<int>(p.variables->size());
  if (p.objective.size() != static_cast<std::size_t>(n)) throw InvalidArgument("objective length mismatch");

  // Everything as a_r x <= b_r: constraint rows first, then -x_j <= 0.
  std::vector<SparseRow> rows;
  std::vector<Rational> b;
  auto push = [&](const LPRow& row, bool negate) {
    SparseRow r;
    for (const auto& [j, a] : row.terms) {
      if (j < 0 || j >= n) throw InvalidArgument("LP row references unknown variable");
      if (!is_zero(a)) r.emplace_back(j, negate ? Rational(-a) : a);
    }
    rows.push_back(std::move(r));
    b.push_back(negate ? Rational(-row.rhs) : row.rhs);
  };
  for (const auto& row : p.rows) {
    if (row.sense != RowSense::kGreaterEqual) push(row, false);
    if (row.sense != RowSense::kLessEqual) push(row, true);
  }
  const int first_bound = static_cast<int>(rows.size());
  for (int j = 0; j < n; ++j) {
    rows.push_back({{j, Rational(-1)}});
    b.push_back(0);
  }
  const int m = static_cast<int>(rows.size());

  LPResult result;
  result.point = SetVector(p.variables);

  std::vector<int> basis(n);
  for (int j = 0; j < n; ++j) basis[j] = first_bound + j;
  std::vector<Rational> binv(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) binv[static_cast<std::size_t>(j) * n + j] = -1;
  std::vector<Rational> x(n);

  int worst = -1;
  for (int r = 0; r < first_bound; ++r) {
    if (sgn(b[r]) < 0 && (worst < 0 || b[r] < b[worst])) worst = r;
  }
  if (worst >= 0) {
    // Phase 1: an extra column s (index n) relaxes every violated row,
    // a_r x - s <= b_r, with s >= 0 as the last row; maximize -s.
    const int np = n + 1;
    std::vector<SparseRow> rows1 = rows;
    for (int r = 0; r < first_bound; ++r) {
      if (sgn(b[r]) < 0) rows1[r].emplace_back(n, Rational(-1));
    }
    rows1.push_back({{n, Rational(-1)}});
    std::vector<Rational> b1 = b;
    b1.push_back(0);
    std::vector<Rational> c1(np);
    c1[n] = -1;
    VertexSimplex phase1(np, rows1, b1, c1);
    std::vector<Rational> x1(np);
    x1[n] = -b[worst];
    std::vector<int> basis1 = basis;
    basis1.push_back(worst);
    // Inverse of [[-I, 0], [a_worst, -1]] is [[-I, 0], [-a_worst, -1]].
    std::vector<Rational> binv1(static_cast<std::size_t>(np) * np);
    for (int j = 0; j < n; ++j) binv1[static_cast<std::size_t>(j) * np + j] = -1;
    for (const auto& [j, a] : rows[worst]) binv1[static_cast<std::size_t>(n) * np + j] = -a;
    binv1[static_cast<std::size_t>(n) * np + n] = -1;
    phase1.start(std::move(x1), std::move(basis1), std::move(binv1));
    LPStatus s1 = phase1.run(result.iterations);
    if (s1 != LPStatus::kOptimal) throw std::logic_error("simplex: phase 1 did not reach an optimum");
    if (!is_zero(phase1.x()[n])) {
      result.status = LPStatus::kInfeasible;
      return result;
    }
    const int sbound = m;
    if (phase1.in_basis(sbound) < 0) {
      // Degenerate exchange to make s >= 0 tight in the basis.
      int k = -1;
      for (int pos = 0; pos < np && k < 0; ++pos) {
        if (!is_zero(phase1.at(n, pos))) k = pos;
      }
      phase1.pivot(k, sbound);
    }
    const int drop = phase1.in_basis(sbound);
    basis.clear();
    for (int pos = 0; pos < np; ++pos) {
      if (pos != drop) basis.push_back(phase1.basis()[pos]);
    }
    for (int i = 0; i < n; ++i) {
      int col = 0;
      for (int pos = 0; pos < np; ++pos) {
        if (pos == drop) continue;
        binv[static_cast<std::size_t>(i) * n + col++] = phase1.at(i, pos);
      }
      x[i] = phase1.x()[i];
    }
  }

  VertexSimplex phase2(n, std::move(rows), std::move(b), p.objective);
  phase2.start(std::move(x), std::move(basis), std::move(binv));
  result.status = phase2.run(result.iterations);
  if (result.status != LPStatus::kOptimal) return result;
  result.value = 0;
  for (int j = 0; j < n; ++j) {
    result.point[j] = phase2.x()[j];
    result.value += p.objective[j] * phase2.x()[j];
  }
  return result;
}

}  // namespace liftlab
