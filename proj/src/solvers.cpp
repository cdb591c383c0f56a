#include "liftlab/solvers.hpp"

#include <algorithm>
#include <set>

#include "liftlab/error.hpp"

namespace liftlab {

LPProblem base_lp(const KnapsackInstance& inst) {
  const int n = inst.size();
  std::vector<SubsetKey> keys;
  for (int i = 0; i < n; ++i) keys.push_back(SubsetKey::singleton(i));
  LPProblem p;
  p.variables = make_family(SubsetFamily::from_keys(n, keys));
  p.objective = inst.values();
  LPRow cap;
  for (int i = 0; i < n; ++i) cap.terms.emplace_back(i, inst.sizes()[i]);
  cap.sense = RowSense::kLessEqual;
  cap.rhs = inst.capacity();
  p.rows.push_back(std::move(cap));
  for (int i = 0; i < n; ++i) p.rows.push_back({{{i, Rational(1)}}, RowSense::kLessEqual, Rational(1)});
  return p;
}

LPProblem sa_lp(const KnapsackInstance& inst, int t) {
  const int n = inst.size();
  auto family = level_family(n, t);
  if (family->size() > kMaxSAVariables) {
    throw InvalidArgument("SA level has " + std::to_string(family->size()) + " variables; the limit is 2000");
  }
  LPProblem p;
  p.variables = family;
  p.objective.assign(family->size(), Rational(0));
  for (int i = 0; i < n; ++i) p.objective[p.variable(SubsetKey::singleton(i))] = inst.values()[i];

  // Rows are kept up to positive scaling, keyed by their normalized terms.
  std::set<std::vector<std::pair<int, Rational>>> seen;
  for (const auto& ineq : sa_linear_constraints(inst, t)) {
    LPRow row;
    for (const auto& [s, c] : ineq.terms) row.terms.emplace_back(p.variable(s), c);
    std::sort(row.terms.begin(), row.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (ineq.kind == SAKind::kNormalization) {
      row.sense = RowSense::kEqual;
      row.rhs = -ineq.constant;
      p.rows.push_back(std::move(row));
      continue;
    }
    if (!is_zero(ineq.constant)) throw std::logic_error("SA product rows are homogeneous");
    if (row.terms.empty()) continue;
    if (row.terms.size() == 1 && sgn(row.terms[0].second) > 0) continue;
    Rational scale = abs(row.terms[0].second);
    for (auto& term : row.terms) term.second /= scale;
    if (!seen.insert(row.terms).second) continue;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = 0;
    p.rows.push_back(std::move(row));
  }
  return p;
}

SAValue sa_value(const KnapsackInstance& inst, int t) {
  SAValue out;
  LPProblem p = sa_lp(inst, t);
  out.rows = p.rows.size();
  out.lp = simplex_exact(p);
  if (out.lp.status != LPStatus::kOptimal) {
    throw std::logic_error("SA linear program reported " + to_string(out.lp.status));
  }
  out.value = out.lp.value;
  return out;
}

std::vector<GapRow> gap_table(const KnapsackInstance& inst, int t_max, GapMode mode, const LasserreOptions& opts) {
  if (t_max < 1) throw InvalidArgument("gap_table: t_max must be at least 1");
  const double opt = to_double(opt_bruteforce(inst));
  std::vector<GapRow> rows;
  for (int t = 1; t <= t_max; ++t) {
    GapRow row;
    row.t = t;
    if (mode == GapMode::kSA) {
      SAValue sv = sa_value(inst, t);
      row.exact = sv.value;
      row.value = to_double(sv.value);
      row.status = "exact";
    } else {
      LasserreResult lr = lasserre_value(inst, t, opts);
      row.value = lr.value;
      row.residual = lr.residual;
      row.status = "approx";
    }
    row.ratio = row.value / opt;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace liftlab
