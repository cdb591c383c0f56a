#pragma once

#include <utility>
#include <vector>

#include "liftlab/execution.hpp"
#include "liftlab/hierarchy.hpp"

namespace liftlab {

inline constexpr int kMaxDecompositionSet = 16;

struct DecompositionPart {
  SubsetKey x;
  Rational weight;  // z^X at the empty set
  SetVector w;      // over P_{2t-2k}(V)
};

struct DecompositionResult {
  SubsetKey s;
  int k = 0;
  int t = 0;
  std::vector<DecompositionPart> parts;  // increasing bitmask of X
};

// True iff y_I = 0 on every support set I with |I n S| >= k.
bool vanishing_condition(const SetVector& y, SubsetKey s, int k);

// Items with v_i > OPT / k.
SubsetKey big_items(const KnapsackInstance& inst, int k);

// Every support set I with |I| <= 2t whose items in S overflow the capacity
// must carry y_I = 0.
MembershipReport overflow_vanishing_check(const SetVector& y, const KnapsackInstance& inst, SubsetKey s, int t);
MembershipReport overflow_vanishing_check(const FloatSetVector& y, const KnapsackInstance& inst, SubsetKey s, int t,
                                          double tol = 1e-7);

// Splits y into the conditional pieces w^X, X subset of S. Throws
// InvalidArgument when k is outside [1, t) or |S| > 16, and HypothesisError
// when the vanishing condition fails or some weight is negative.
DecompositionResult decompose(const SetVector& y, const KnapsackInstance& inst, SubsetKey s, int k, int t,
                              Execution exec = Execution::kSerial);

struct DecompositionReport {
  MembershipReport pattern;         // w^X is 1 on X and 0 on S \ X
  MembershipReport level;           // w^X passes the level t-k Lasserre check
  MembershipReport residual;        // w^X on V \ S passes it for the residual instance
  MembershipReport reconstruction;  // sum weight * w^X equals y
  bool ok() const {
    return pattern.accepted() && level.accepted() && residual.accepted() && reconstruction.accepted();
  }
};

DecompositionReport verify_decomposition(const DecompositionResult& res, const SetVector& y,
                                         const KnapsackInstance& inst, const MembershipOptions& opts = {});

// w^X restricted to the unfixed items, re-indexed for residual(inst, {S, X}).
SetVector residual_vector(const SetVector& w, int n, SubsetKey s, int depth);

// T_1 = {A : |A \ S| <= t-k}, T_2 = {B : |B \ S| < t-k}.
std::pair<SubsetFamily, SubsetFamily> t_families(int n, SubsetKey s, int t, int k);

struct ChainBound {
  Rational value;     // sum_i v_i y_{i}
  Rational best_part; // max over parts of v(X) + lp_value(residual)
  Rational opt;
  Rational bound;     // best_part + opt / (t-1)
  bool holds = false;
};

ChainBound knapsack_chain_bound(const SetVector& y, const KnapsackInstance& inst, const DecompositionResult& res);

}  // namespace liftlab
