#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/execution.hpp"
#include "liftlab/knapsack.hpp"
#include "liftlab/psd.hpp"
#include "liftlab/set_vector.hpp"

namespace liftlab {

// A moment vector together with the level it was built for. SA vectors live
// on P_t(V), Lasserre vectors on P_2t(V).
struct LiftedVector {
  SetVector y;
  int level = 0;
};

struct Violation {
  std::string constraint;  // "normalization", "moment", "capacity", "lower:3", ...
  std::string family;      // "P([0,2])", "P_2(V)", ...
  std::string margin;      // offending pivot or entry, exact
  std::vector<SubsetKey> rows;
  std::optional<SymMatrixExact> matrix;
};

struct MembershipReport {
  std::vector<Violation> violations;
  std::size_t checks = 0;
  bool accepted() const { return violations.empty(); }
};

struct MembershipOptions {
  Execution exec = Execution::kSerial;
  bool keep_matrices = false;
};

// P_t(V) with t clamped to [0, n].
FamilyPtr level_family(int n, int t);

MembershipReport sa_membership(const SetVector& y, const KnapsackInstance& inst, int t,
                               const MembershipOptions& opts = {});
MembershipReport lasserre_membership(const SetVector& y, const KnapsackInstance& inst, int t,
                                     const MembershipOptions& opts = {});

enum class SAKind { kNormalization, kCapacity, kLower, kUpper };

// sum_k terms[k].second * y_{terms[k].first} + constant >= 0 (or == 0 for
// kNormalization).
struct SAInequality {
  SubsetKey i;
  SubsetKey j;
  SAKind kind = SAKind::kCapacity;
  int item = -1;
  std::vector<std::pair<SubsetKey, Rational>> terms;
  Rational constant;

  Rational evaluate(const SetVector& y) const;
};

std::vector<SAInequality> sa_linear_constraints(const KnapsackInstance& inst, int t);

// y_0 = 1, y_{i} = alpha = C/(n + (t-1)(1-eps)) with C = 2(1-eps), zero on
// larger sets. Requires 0 < eps < 1/2 and 2 <= t < n.
Rational gap_certificate_alpha(int n, const Rational& eps, int t);
LiftedVector sa_gap_certificate(int n, const Rational& eps, int t);

struct GapCertificateCheck {
  Rational alpha;
  Rational value;  // n * alpha
  Rational bound;  // (2 - eps) / (1 + delta), with OPT = 1
  MembershipReport report;
  bool bound_ok = false;
};

// Requires t <= delta * n.
GapCertificateCheck verify_gap_certificate(int n, const Rational& eps, int t, const Rational& delta,
                                           const MembershipOptions& opts = {});

// y_I = 1 if I is a subset of the solution, else 0, for |I| <= depth.
LiftedVector integer_to_moment(const KnapsackInstance& inst, const Solution& sol, int depth);

LiftedVector convex_combination(const std::vector<std::pair<Rational, LiftedVector>>& parts);

}  // namespace liftlab
