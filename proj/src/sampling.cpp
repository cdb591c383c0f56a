#include "liftlab/sampling.hpp"

#include <algorithm>

#include "liftlab/error.hpp"

namespace liftlab {

std::vector<Solution> feasible_solutions(const KnapsackInstance& inst) {
  const int n = inst.size();
  if (n > kMaxDenseGround) throw InvalidArgument("feasible_solutions: n > 20");
  std::vector<Solution> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (inst.fits(SubsetKey(m))) out.push_back({SubsetKey(m)});
  }
  return out;
}

LiftedVector random_mixture(const KnapsackInstance& inst, int depth, int count, std::mt19937_64& rng,
                            const std::function<bool(SubsetKey)>& keep) {
  if (count < 1) throw InvalidArgument("random_mixture: count must be positive");
  std::vector<Solution> pool;
  for (const auto& s : feasible_solutions(inst)) {
    if (!keep || keep(s.chosen)) pool.push_back(s);
  }
  if (pool.empty()) throw InvalidArgument("random_mixture: no feasible packing passes the filter");
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> weight(1, 9);
  std::vector<std::pair<Solution, int>> draws;
  long total = 0;
  for (int i = 0; i < count; ++i) {
    draws.emplace_back(pool[pick(rng)], weight(rng));
    total += draws.back().second;
  }
  std::vector<std::pair<Rational, LiftedVector>> parts;
  for (const auto& [sol, w] : draws) parts.emplace_back(Rational(w, total), integer_to_moment(inst, sol, depth));
  for (auto& p : parts) p.first.canonicalize();
  return convex_combination(parts);
}

KnapsackInstance random_instance(int n, std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::vector<Rational> sizes;
  std::vector<Rational> values;
  Rational largest = 0;
  Rational total = 0;
  for (int i = 0; i < n; ++i) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    Rational v(num(rng), den(rng));
    v.canonicalize();
    largest = std::max(largest, c);
    total += c;
    sizes.push_back(c);
    values.push_back(v);
  }
  // Capacity between the largest item and the total size.
  std::uniform_int_distribution<int> frac(0, 8);
  Rational share(frac(rng), 8);
  share.canonicalize();
  Rational cap = largest + (total - largest) * share;
  return KnapsackInstance::make(std::move(sizes), std::move(values), cap);
}

}  // namespace liftlab
