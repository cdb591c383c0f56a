#include "liftlab/hierarchy.hpp"

#include <algorithm>
#include <map>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

void require_support(const SetVector& y, int n, int depth, const char* who) {
  if (y.ground_size() != n) throw InvalidArgument(std::string(who) + ": vector ground set does not match instance");
  if (y.extended()) return;
  int d = std::min(depth, n);
  for (int k = 0; k <= d; ++k) {
    for (SubsetKey s : subsets_of_size(n, k)) {
      if (!y.family().contains(s)) {
        throw InvalidArgument(std::string(who) + ": vector is not defined on " + to_string(s));
      }
    }
  }
}

std::string family_name(SubsetKey u) { return "P(" + to_string(u) + ")"; }

// One PSD check; the outcome lands in its own slot for a deterministic merge.
struct CheckSlot {
  bool failed = false;
  Violation violation;
};

void run_check(CheckSlot& slot, const SetVector& v, const std::vector<SubsetKey>& rows, std::string constraint,
               std::string family, bool keep) {
  SymMatrixExact m = moment_matrix(v, rows);
  PsdVerdict verdict = keep ? psd_exact_verdict(m) : psd_exact_verdict(std::move(m));
  if (verdict.psd) return;
  slot.failed = true;
  slot.violation.constraint = std::move(constraint);
  slot.violation.family = std::move(family);
  slot.violation.margin = to_string(verdict.witness);
  if (keep) {
    slot.violation.rows = rows;
    slot.violation.matrix = std::move(m);
  }
}

void check_normalization(const SetVector& y, MembershipReport& report) {
  ++report.checks;
  const Rational& y0 = y.at(SubsetKey());
  if (y0 != 1) {
    report.violations.push_back({"normalization", "{[]}", to_string(y0 - 1), {}, std::nullopt});
  }
}

void merge(std::vector<CheckSlot>& slots, MembershipReport& report) {
  report.checks += slots.size();
  for (auto& s : slots) {
    if (s.failed) report.violations.push_back(std::move(s.violation));
  }
}

}  // namespace

FamilyPtr level_family(int n, int t) { return make_family(SubsetFamily::up_to(n, std::clamp(t, 0, n))); }

MembershipReport sa_membership(const SetVector& y, const KnapsackInstance& inst, int t, const MembershipOptions& opts) {
  const int n = inst.size();
  if (t < 1) throw InvalidArgument("sa_membership: level must be at least 1");
  if (n > kMaxBruteForceItems || t > 6) throw InvalidArgument("sa_membership: limited to n <= 24, t <= 6");
  require_support(y, n, t, "sa_membership");
  MembershipReport report;
  check_normalization(y, report);

  auto constraints = inst.constraints();
  auto below = level_family(n, t - 1);
  std::vector<SetVector> gy;
  gy.reserve(constraints.size());
  for (const auto& g : constraints) gy.push_back(poly_shift(MultilinearPoly::from_constraint(g), y, below));

  auto top = level_family(n, t);
  // Tasks: every U in P_t(V) for the moment blocks, then every (W, l) pair.
  const std::size_t moment_tasks = top->size();
  const std::size_t total = moment_tasks + below->size() * constraints.size();
  std::vector<CheckSlot> slots(total);
  run_indexed(total, opts.exec, [&](std::size_t task) {
    if (task < moment_tasks) {
      SubsetKey u = (*top)[task];
      run_check(slots[task], y, subsets_canonical(u), "moment", family_name(u), opts.keep_matrices);
      return;
    }
    std::size_t rest = task - moment_tasks;
    SubsetKey w = (*below)[rest / constraints.size()];
    std::size_t l = rest % constraints.size();
    run_check(slots[task], gy[l], subsets_canonical(w), constraints[l].label, family_name(w), opts.keep_matrices);
  });
  merge(slots, report);
  return report;
}

MembershipReport lasserre_membership(const SetVector& y, const KnapsackInstance& inst, int t,
                                     const MembershipOptions& opts) {
  const int n = inst.size();
  if (t < 1) throw InvalidArgument("lasserre_membership: level must be at least 1");
  require_support(y, n, 2 * t, "lasserre_membership");
  MembershipReport report;
  check_normalization(y, report);

  auto constraints = inst.constraints();
  auto top = level_family(n, t);
  auto below = level_family(n, t - 1);
  auto products = level_family(n, 2 * t - 2);
  const std::string top_name = "P_" + std::to_string(t) + "(V)";
  const std::string below_name = "P_" + std::to_string(t - 1) + "(V)";
  std::vector<CheckSlot> slots(1 + constraints.size());
  run_indexed(slots.size(), opts.exec, [&](std::size_t task) {
    if (task == 0) {
      run_check(slots[0], y, top->keys(), "moment", top_name, opts.keep_matrices);
      return;
    }
    const auto& g = constraints[task - 1];
    SetVector gy = poly_shift(MultilinearPoly::from_constraint(g), y, products);
    run_check(slots[task], gy, below->keys(), g.label, below_name, opts.keep_matrices);
  });
  merge(slots, report);
  return report;
}

Rational SAInequality::evaluate(const SetVector& y) const {
  Rational r = constant;
  for (const auto& [s, c] : terms) r += c * y.at(s);
  return r;
}

std::vector<SAInequality> sa_linear_constraints(const KnapsackInstance& inst, int t) {
  if (t < 1) throw InvalidArgument("sa_linear_constraints: level must be at least 1");
  const int n = inst.size();
  std::vector<SAInequality> out;
  SAInequality norm;
  norm.kind = SAKind::kNormalization;
  norm.terms.push_back({SubsetKey(), Rational(1)});
  norm.constant = -1;
  out.push_back(norm);

  auto to_terms = [](const std::map<SubsetKey, Rational, CanonicalLess>& acc) {
    std::vector<std::pair<SubsetKey, Rational>> terms;
    for (const auto& [s, c] : acc) {
      if (!is_zero(c)) terms.emplace_back(s, c);
    }
    return terms;
  };

  const int depth = std::min(t - 1, n);
  for (int size_ij = 0; size_ij <= depth; ++size_ij) {
    for (SubsetKey ij : subsets_of_size(n, size_ij)) {
      // Every split of I u J into I and J.
      for (SubsetKey j : subsets_canonical(ij)) {
        SubsetKey i = ij.minus(j);
        // D(K) = sum_{L subset J} (-1)^{|L|} y_{I u L u K}
        auto product = [&](SubsetKey k, const Rational& scale, std::map<SubsetKey, Rational, CanonicalLess>& acc) {
          for_each_subset(j, [&](SubsetKey l) {
            Rational c = l.size() % 2 == 0 ? scale : Rational(-scale);
            acc[i | l | k] += c;
          });
        };
        SAInequality cap;
        cap.i = i;
        cap.j = j;
        cap.kind = SAKind::kCapacity;
        std::map<SubsetKey, Rational, CanonicalLess> acc;
        product(SubsetKey(), inst.capacity(), acc);
        for (int item = 0; item < n; ++item) product(SubsetKey::singleton(item), -inst.sizes()[item], acc);
        cap.terms = to_terms(acc);
        out.push_back(std::move(cap));
        for (int item = 0; item < n; ++item) {
          SAInequality lo{i, j, SAKind::kLower, item, {}, 0};
          acc.clear();
          product(SubsetKey::singleton(item), Rational(1), acc);
          lo.terms = to_terms(acc);
          out.push_back(std::move(lo));
          SAInequality hi{i, j, SAKind::kUpper, item, {}, 0};
          acc.clear();
          product(SubsetKey(), Rational(1), acc);
          product(SubsetKey::singleton(item), Rational(-1), acc);
          hi.terms = to_terms(acc);
          out.push_back(std::move(hi));
        }
      }
    }
  }
  return out;
}

Rational gap_certificate_alpha(int n, const Rational& eps, int t) {
  if (sgn(eps) <= 0 || eps >= Rational(1, 2)) throw InvalidArgument("certificate: eps must lie in (0, 1/2)");
  if (t < 2) throw InvalidArgument("certificate: level must be at least 2");
  if (t >= n) throw InvalidArgument("certificate: level must be below n");
  Rational c = 2 * (1 - eps);
  return c / (n + (t - 1) * (1 - eps));
}

LiftedVector sa_gap_certificate(int n, const Rational& eps, int t) {
  Rational alpha = gap_certificate_alpha(n, eps, t);
  LiftedVector out{SetVector(level_family(n, t)), t};
  out.y.set(SubsetKey(), 1);
  for (int i = 0; i < n; ++i) out.y.set(SubsetKey::singleton(i), alpha);
  return out;
}

GapCertificateCheck verify_gap_certificate(int n, const Rational& eps, int t, const Rational& delta,
                                           const MembershipOptions& opts) {
  if (sgn(delta) <= 0) throw InvalidArgument("certificate: delta must be positive");
  if (Rational(t) > delta * n) throw InvalidArgument("certificate: requires t <= delta * n");
  GapCertificateCheck out;
  out.alpha = gap_certificate_alpha(n, eps, t);
  out.value = n * out.alpha;
  out.bound = (2 - eps) / (1 + delta);
  out.bound_ok = out.value >= out.bound;
  LiftedVector cert = sa_gap_certificate(n, eps, t);
  out.report = sa_membership(cert.y, uniform_gap_instance(n, eps), t, opts);
  return out;
}

LiftedVector integer_to_moment(const KnapsackInstance& inst, const Solution& sol, int depth) {
  if (!sol.chosen.is_subset_of(SubsetKey::full(inst.size()))) throw InvalidArgument("solution uses unknown items");
  if (!inst.fits(sol.chosen)) throw InvalidArgument("solution is infeasible");
  if (depth < 0) throw InvalidArgument("depth must be non-negative");
  LiftedVector out{SetVector(level_family(inst.size(), depth)), depth};
  for (std::size_t a = 0; a < out.y.size(); ++a) {
    if (out.y.family()[a].is_subset_of(sol.chosen)) out.y[a] = 1;
  }
  return out;
}

LiftedVector convex_combination(const std::vector<std::pair<Rational, LiftedVector>>& parts) {
  if (parts.empty()) throw InvalidArgument("convex combination needs at least one part");
  Rational total = 0;
  for (const auto& [w, v] : parts) {
    if (sgn(w) < 0) throw InvalidArgument("convex combination weights must be non-negative");
    if (!(v.y.family() == parts.front().second.y.family())) throw InvalidArgument("parts have different supports");
    total += w;
  }
  if (total != 1) throw InvalidArgument("convex combination weights must sum to 1");
  LiftedVector out{SetVector(parts.front().second.y.family_ptr()), parts.front().second.level};
  for (const auto& [w, v] : parts) {
    if (is_zero(w)) continue;
    for (std::size_t a = 0; a < out.y.size(); ++a) out.y[a] += w * v.y[a];
  }
  return out;
}

}  // namespace liftlab
