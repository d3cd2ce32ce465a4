#pragma once

#include <cstdint>
#include <random>

#include "arboreal/phylo.hpp"

namespace arboreal {

// Seeded deterministic random weighted phylogenetic tree on `leaves` leaves
// (labels a, b, ... then x27, x28, ...). Weights are integers in [1,20]
// scaled by 1/2^k, k in {0,1,2}. Multifurcations appear with small
// probability.
WeightedPhyloTree random_tree(int leaves, std::uint64_t seed);

// Random tree whose leaf distance is an ultrametric (heights strictly
// decrease from a root), so its uprooting has a single root.
WeightedPhyloTree random_ultrametric_tree(int leaves, std::uint64_t seed);

// Bounded uniform integer from a raw 64-bit generator, stable across
// platforms (std::uniform_int_distribution is not).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);

std::string leaf_name(int index);

}  // namespace arboreal
