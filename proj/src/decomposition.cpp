#include "liftlab/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"

namespace liftlab {

bool vanishing_condition(const SetVector& y, SubsetKey s, int k) {
  for (std::size_t a = 0; a < y.size(); ++a) {
    if ((y.family()[a] & s).size() >= k && !is_zero(y[a])) return false;
  }
  return true;
}

SubsetKey big_items(const KnapsackInstance& inst, int k) {
  if (k < 1) throw InvalidArgument("big_items: k must be at least 1");
  Rational threshold = opt_bruteforce(inst) / k;
  SubsetKey out;
  for (int i = 0; i < inst.size(); ++i) {
    if (inst.values()[i] > threshold) out = out.with(i);
  }
  return out;
}

namespace {

template <class Value, class IsZero>
MembershipReport overflow_check(const FamilyPtr& family, const std::vector<Value>& values,
                                const KnapsackInstance& inst, SubsetKey s, int t, IsZero is_zero_value) {
  MembershipReport report;
  for (std::size_t a = 0; a < family->size(); ++a) {
    SubsetKey i = (*family)[a];
    if (i.size() > 2 * t) continue;
    if (inst.cost(i & s) <= inst.capacity()) continue;
    ++report.checks;
    if (!is_zero_value(values[a])) {
      Violation v;
      v.constraint = "overflow";
      v.family = to_string(i);
      if constexpr (std::is_same_v<Value, double>) {
        v.margin = std::to_string(values[a]);
      } else {
        v.margin = to_string(values[a]);
      }
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace

MembershipReport overflow_vanishing_check(const SetVector& y, const KnapsackInstance& inst, SubsetKey s, int t) {
  return overflow_check(y.family_ptr(), y.values(), inst, s, t, [](const Rational& v) { return is_zero(v); });
}

MembershipReport overflow_vanishing_check(const FloatSetVector& y, const KnapsackInstance& inst, SubsetKey s, int t,
                                          double tol) {
  return overflow_check(y.family, y.values, inst, s, t, [tol](double v) { return std::abs(v) <= tol; });
}

DecompositionResult decompose(const SetVector& y, const KnapsackInstance& inst, SubsetKey s, int k, int t,
                              Execution exec) {
  const int n = inst.size();
  if (k < 1) throw InvalidArgument("decompose: k must be at least 1");
  if (k >= t) throw InvalidArgument("decompose: requires k < t");
  if (!s.is_subset_of(SubsetKey::full(n))) throw InvalidArgument("decompose: S contains unknown items");
  if (s.size() > kMaxDecompositionSet) throw InvalidArgument("decompose: |S| limited to 16");
  if (y.ground_size() != n) throw InvalidArgument("decompose: vector ground set does not match instance");
  if (!vanishing_condition(y, s, k)) throw HypothesisError("decompose: vanishing condition fails for this S and k");

  DecompositionResult res{s, k, t, {}};
  SetVector yext = extend(y);
  auto target = level_family(n, 2 * t - 2 * k);
  std::vector<SubsetKey> xs;
  for_each_subset(s, [&](SubsetKey x) { xs.push_back(x); });
  std::sort(xs.begin(), xs.end(), [](SubsetKey a, SubsetKey b) { return a.mask() < b.mask(); });

  std::vector<SetVector> zs(xs.size());
  run_indexed(xs.size(), exec, [&](std::size_t a) { zs[a] = z_vector(yext, s, xs[a], target); });
  for (std::size_t a = 0; a < xs.size(); ++a) {
    Rational weight = zs[a].at(SubsetKey());
    if (sgn(weight) < 0) {
      throw HypothesisError("decompose: negative weight " + to_string(weight) + " for X = " + to_string(xs[a]) +
                            "; the input is not Lasserre-feasible");
    }
    if (is_zero(weight)) continue;
    SetVector w = w_normalize(zs[a], weight);
    res.parts.push_back({xs[a], std::move(weight), SetVector(w.family_ptr(), w.values())});
  }
  return res;
}

SetVector residual_vector(const SetVector& w, int n, SubsetKey s, int depth) {
  std::vector<int> items = residual_items(n, s);
  const int m = static_cast<int>(items.size());
  auto family = level_family(m, depth);
  SetVector out(family);
  for (std::size_t a = 0; a < family->size(); ++a) {
    std::uint64_t mask = 0;
    for (int local : (*family)[a].items()) mask |= std::uint64_t{1} << items[local];
    out[a] = w.at(SubsetKey(mask));
  }
  return out;
}

DecompositionReport verify_decomposition(const DecompositionResult& res, const SetVector& y,
                                         const KnapsackInstance& inst, const MembershipOptions& opts) {
  const int n = inst.size();
  const int level = res.t - res.k;
  DecompositionReport out;
  auto tag = [](std::vector<Violation>& vs, SubsetKey x) {
    for (auto& v : vs) v.constraint = "X=" + to_string(x) + " " + v.constraint;
  };

  for (const auto& part : res.parts) {
    for (int j : res.s.items()) {
      ++out.pattern.checks;
      const Rational& got = part.w.at(SubsetKey::singleton(j));
      Rational want = part.x.contains(j) ? 1 : 0;
      if (got != want) {
        out.pattern.violations.push_back({"X=" + to_string(part.x) + " pattern", "{" + std::to_string(j) + "}",
                                          to_string(got - want), {}, std::nullopt});
      }
    }

    MembershipReport lv = lasserre_membership(part.w, inst, level, opts);
    tag(lv.violations, part.x);
    out.level.checks += lv.checks;
    for (auto& v : lv.violations) out.level.violations.push_back(std::move(v));

    ++out.residual.checks;
    if (inst.cost(part.x) > inst.capacity()) {
      out.residual.violations.push_back(
          {"X=" + to_string(part.x) + " residual", "capacity", to_string(inst.capacity() - inst.cost(part.x)), {},
           std::nullopt});
      continue;
    }
    KnapsackInstance rest = residual(inst, {res.s, part.x});
    SetVector wr = residual_vector(part.w, n, res.s, 2 * level);
    MembershipReport rv = lasserre_membership(wr, rest, level, opts);
    tag(rv.violations, part.x);
    out.residual.checks += rv.checks;
    for (auto& v : rv.violations) out.residual.violations.push_back(std::move(v));
  }

  auto target = level_family(n, 2 * level);
  for (std::size_t a = 0; a < target->size(); ++a) {
    SubsetKey i = (*target)[a];
    Rational sum = 0;
    for (const auto& part : res.parts) sum += part.weight * part.w.at(i);
    ++out.reconstruction.checks;
    const Rational& want = y.at(i);
    if (sum != want) {
      out.reconstruction.violations.push_back({"reconstruction", to_string(i), to_string(sum - want), {}, std::nullopt});
    }
  }
  return out;
}

std::pair<SubsetFamily, SubsetFamily> t_families(int n, SubsetKey s, int t, int k) {
  if (k >= t) throw InvalidArgument("t_families: requires k < t");
  const int r = t - k;
  std::vector<SubsetKey> t1;
  std::vector<SubsetKey> t2;
  SubsetKey outside = SubsetKey::full(n).minus(s);
  for_each_subset(outside, [&](SubsetKey a) {
    if (a.size() > r) return;
    for_each_subset(s, [&](SubsetKey x) {
      t1.push_back(a | x);
      if (a.size() < r) t2.push_back(a | x);
    });
  });
  return {SubsetFamily::from_keys(n, std::move(t1)), SubsetFamily::from_keys(n, std::move(t2))};
}

ChainBound knapsack_chain_bound(const SetVector& y, const KnapsackInstance& inst, const DecompositionResult& res) {
  if (res.t < 2) throw InvalidArgument("chain bound needs t >= 2");
  ChainBound out;
  out.value = 0;
  for (int i = 0; i < inst.size(); ++i) out.value += inst.values()[i] * y.at(SubsetKey::singleton(i));
  out.opt = opt_bruteforce(inst);
  bool first = true;
  for (const auto& part : res.parts) {
    if (inst.cost(part.x) > inst.capacity()) throw InvalidArgument("chain bound: part overflows the capacity");
    Rational v = inst.value(part.x) + lp_value(residual(inst, {res.s, part.x}));
    if (first || v > out.best_part) out.best_part = v;
    first = false;
  }
  out.bound = out.best_part + out.opt / (res.t - 1);
  out.holds = out.value <= out.bound;
  return out;
}

}  // namespace liftlab
