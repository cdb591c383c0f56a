#pragma once

#include <string>
#include <vector>

#include "liftlab/rational.hpp"
#include "liftlab/subset.hpp"

namespace liftlab {

// Affine form offset + sum_j coefficients[j] * x_j, read as ">= 0".
struct LinearConstraint {
  std::vector<Rational> coefficients;
  Rational offset;
  std::string label;

  Rational evaluate(const std::vector<Rational>& x) const;
};

// Items are indexed 0..n-1. Instances built through make() satisfy n >= 1,
// positive data, and c_i <= C for every item. Residual instances (see
// residual()) may have no items and items larger than the capacity.
class KnapsackInstance {
 public:
  static KnapsackInstance make(std::vector<Rational> sizes, std::vector<Rational> values, Rational capacity);

  int size() const { return static_cast<int>(sizes_.size()); }
  const std::vector<Rational>& sizes() const { return sizes_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& capacity() const { return capacity_; }
  bool is_residual() const { return residual_; }

  Rational cost(SubsetKey items) const;
  Rational value(SubsetKey items) const;
  bool fits(SubsetKey items) const { return cost(items) <= capacity_; }

  // g(x) = C - sum_i c_i x_i.
  LinearConstraint capacity_constraint() const;
  // Capacity first, then x_i >= 0 and 1 - x_i >= 0 for each item i.
  std::vector<LinearConstraint> constraints() const;

  // True when every item has the same size and the same value.
  bool is_uniform() const;

 private:
  friend KnapsackInstance residual_instance(std::vector<Rational>, std::vector<Rational>, Rational);
  KnapsackInstance(std::vector<Rational> sizes, std::vector<Rational> values, Rational capacity, bool residual)
      : sizes_(std::move(sizes)), values_(std::move(values)), capacity_(std::move(capacity)), residual_(residual) {}

  std::vector<Rational> sizes_;
  std::vector<Rational> values_;
  Rational capacity_;
  bool residual_ = false;
};

struct Solution {
  SubsetKey chosen;
};

struct GreedyResult {
  Solution solution;
  Rational value;
};

// Scans items by non-increasing v_i/c_i (lower index first on ties) and stops
// at the first item that does not fit.
GreedyResult greedy(const KnapsackInstance& inst);

inline constexpr int kMaxBruteForceItems = 24;

struct OptResult {
  Solution solution;
  Rational value;
};

// Exhaustive search; rejects n > 24.
OptResult opt_solution(const KnapsackInstance& inst);
Rational opt_bruteforce(const KnapsackInstance& inst);

// Closed-form optimum of the LP relaxation (fractional greedy).
Rational lp_value(const KnapsackInstance& inst);

// Fixes the items of `fixed`; those in `ones` are packed, the rest dropped.
struct PartialAssignment {
  SubsetKey fixed;
  SubsetKey ones;  // subset of fixed
};

// Instance on the unfixed items (original order kept) with the capacity
// reduced by the packed items. Rejects assignments that overflow C.
KnapsackInstance residual(const KnapsackInstance& inst, const PartialAssignment& assignment);

// Original indices of the items that survive in residual(inst, {fixed, ...}).
std::vector<int> residual_items(int n, SubsetKey fixed);

// All sizes and values 1, capacity 2(1 - eps); requires 0 < eps < 1/2.
KnapsackInstance uniform_gap_instance(int n, const Rational& eps);

}  // namespace liftlab
