#include "liftlab/knapsack.hpp"

#include <algorithm>
#include <numeric>

#include "liftlab/error.hpp"

namespace liftlab {

Rational LinearConstraint::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != coefficients.size()) throw InvalidArgument("point dimension mismatch");
  Rational r = offset;
  for (std::size_t j = 0; j < x.size(); ++j) r += coefficients[j] * x[j];
  return r;
}

KnapsackInstance residual_instance(std::vector<Rational> sizes, std::vector<Rational> values, Rational capacity) {
  return KnapsackInstance(std::move(sizes), std::move(values), std::move(capacity), true);
}

KnapsackInstance KnapsackInstance::make(std::vector<Rational> sizes, std::vector<Rational> values, Rational capacity) {
  if (sizes.empty()) throw InvalidArgument("instance needs at least one item");
  if (sizes.size() != values.size()) throw InvalidArgument("sizes and values differ in length");
  if (sizes.size() > static_cast<std::size_t>(kMaxGroundSize)) throw InvalidArgument("at most 63 items supported");
  capacity.canonicalize();
  if (sgn(capacity) <= 0) throw InvalidArgument("capacity must be positive");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    sizes[i].canonicalize();
    values[i].canonicalize();
    if (sgn(sizes[i]) <= 0 || sgn(values[i]) <= 0) {
      throw InvalidArgument("item " + std::to_string(i) + " has non-positive size or value");
    }
    if (sizes[i] > capacity) {
      throw InvalidArgument("item " + std::to_string(i) + " is larger than the capacity");
    }
  }
  return KnapsackInstance(std::move(sizes), std::move(values), std::move(capacity), false);
}

Rational KnapsackInstance::cost(SubsetKey items) const {
  Rational r = 0;
  for (int i : items.items()) {
    if (i >= size()) throw InvalidArgument("item index out of range");
    r += sizes_[i];
  }
  return r;
}

Rational KnapsackInstance::value(SubsetKey items) const {
  Rational r = 0;
  for (int i : items.items()) {
    if (i >= size()) throw InvalidArgument("item index out of range");
    r += values_[i];
  }
  return r;
}

LinearConstraint KnapsackInstance::capacity_constraint() const {
  LinearConstraint g;
  g.offset = capacity_;
  g.coefficients.reserve(sizes_.size());
  for (const auto& c : sizes_) g.coefficients.push_back(-c);
  g.label = "capacity";
  return g;
}

std::vector<LinearConstraint> KnapsackInstance::constraints() const {
  std::vector<LinearConstraint> out;
  out.push_back(capacity_constraint());
  const std::size_t n = sizes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint lower{std::vector<Rational>(n), 0, "lower:" + std::to_string(i)};
    lower.coefficients[i] = 1;
    LinearConstraint upper{std::vector<Rational>(n), 1, "upper:" + std::to_string(i)};
    upper.coefficients[i] = -1;
    out.push_back(std::move(lower));
    out.push_back(std::move(upper));
  }
  return out;
}

bool KnapsackInstance::is_uniform() const {
  for (std::size_t i = 1; i < sizes_.size(); ++i) {
    if (sizes_[i] != sizes_[0] || values_[i] != values_[0]) return false;
  }
  return true;
}

namespace {

std::vector<int> ratio_order(const KnapsackInstance& inst) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& c = inst.sizes();
  const auto& v = inst.values();
  // v_a/c_a > v_b/c_b  <=>  v_a c_b > v_b c_a (sizes are positive)
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] * c[b] > v[b] * c[a]; });
  return order;
}

}  // namespace

GreedyResult greedy(const KnapsackInstance& inst) {
  GreedyResult out;
  out.value = 0;
  Rational used = 0;
  for (int i : ratio_order(inst)) {
    if (used + inst.sizes()[i] > inst.capacity()) break;
    used += inst.sizes()[i];
    out.value += inst.values()[i];
    out.solution.chosen = out.solution.chosen.with(i);
  }
  return out;
}

OptResult opt_solution(const KnapsackInstance& inst) {
  const int n = inst.size();
  if (n > kMaxBruteForceItems) throw InvalidArgument("opt_bruteforce: n > 24");
  OptResult best;
  best.value = 0;
  // Depth-first enumeration of every feasible subset; overflowing branches
  // are cut since all sizes are positive.
  struct Frame {
    int next;
    std::uint64_t mask;
    Rational cost;
    Rational value;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.value > best.value || (f.value == best.value && f.mask < best.solution.chosen.mask())) {
      best.value = f.value;
      best.solution.chosen = SubsetKey(f.mask);
    }
    for (int i = n - 1; i >= f.next; --i) {
      Rational cost = f.cost + inst.sizes()[i];
      if (cost > inst.capacity()) continue;
      stack.push_back({i + 1, f.mask | (std::uint64_t{1} << i), std::move(cost), f.value + inst.values()[i]});
    }
  }
  return best;
}

Rational opt_bruteforce(const KnapsackInstance& inst) { return opt_solution(inst).value; }

Rational lp_value(const KnapsackInstance& inst) {
  Rational remaining = inst.capacity();
  Rational total = 0;
  for (int i : ratio_order(inst)) {
    if (sgn(remaining) <= 0) break;
    const Rational& c = inst.sizes()[i];
    if (c <= remaining) {
      total += inst.values()[i];
      remaining -= c;
    } else {
      total += inst.values()[i] * remaining / c;
      break;
    }
  }
  return total;
}

std::vector<int> residual_items(int n, SubsetKey fixed) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (!fixed.contains(i)) out.push_back(i);
  }
  return out;
}

KnapsackInstance residual(const KnapsackInstance& inst, const PartialAssignment& assignment) {
  SubsetKey ground = SubsetKey::full(inst.size());
  if (!assignment.fixed.is_subset_of(ground)) throw InvalidArgument("fixed items outside the instance");
  if (!assignment.ones.is_subset_of(assignment.fixed)) throw InvalidArgument("packed items must be fixed");
  Rational packed = inst.cost(assignment.ones);
  if (packed > inst.capacity()) throw InvalidArgument("fixed items overflow the capacity");
  std::vector<Rational> sizes;
  std::vector<Rational> values;
  for (int i : residual_items(inst.size(), assignment.fixed)) {
    sizes.push_back(inst.sizes()[i]);
    values.push_back(inst.values()[i]);
  }
  return residual_instance(std::move(sizes), std::move(values), inst.capacity() - packed);
}

KnapsackInstance uniform_gap_instance(int n, const Rational& eps) {
  if (n < 1) throw InvalidArgument("uniform instance needs n >= 1");
  if (sgn(eps) <= 0 || eps >= Rational(1, 2)) throw InvalidArgument("eps must lie in (0, 1/2)");
  return KnapsackInstance::make(std::vector<Rational>(n, 1), std::vector<Rational>(n, 1), 2 * (1 - eps));
}

}  // namespace liftlab
