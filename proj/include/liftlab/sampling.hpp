#pragma once

#include <functional>
#include <random>
#include <vector>

#include "liftlab/hierarchy.hpp"

namespace liftlab {

// Every feasible packing, in increasing bitmask order; n <= 20.
std::vector<Solution> feasible_solutions(const KnapsackInstance& inst);

// Mixture of `count` feasible packings (drawn with replacement from those
// accepted by `keep`) with random positive integer weights, as a moment
// vector over P_depth(V).
LiftedVector random_mixture(const KnapsackInstance& inst, int depth, int count, std::mt19937_64& rng,
                            const std::function<bool(SubsetKey)>& keep = {});

// Items with random sizes and values in {1..max_num}/{1..max_den} and a
// capacity no smaller than the largest item.
KnapsackInstance random_instance(int n, std::mt19937_64& rng, int max_num = 9, int max_den = 4);

}  // namespace liftlab
