#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arboreal/network.hpp"
#include "arboreal/phylo.hpp"

namespace arboreal {

// Per-run bookkeeping: intermediate networks (one per processed leaf,
// starting from the two-leaf seed) and branch counters. The reuse_then_attach
// counter must stay zero; hitting that combination is an internal error.
struct UprootTrace {
  bool record_snapshots = false;
  std::vector<ArborealNetwork> snapshots;
  int subdivide_below = 0;     // pendant arc longer than the restricted edge
  int other_side = 0;          // pendant arc shorter (root splits)
  int reuse_parent = 0;        // equal
  int attach_arc = 0;
  int attach_new_root = 0;
};

struct UprootOptions {
  // When set, the cherry-picking sequence (if none is supplied) and the
  // choice among eligible neighbor leaves are randomized from this seed;
  // otherwise choices break ties on the smallest label.
  std::optional<std::uint64_t> random_choices;
  UprootTrace* trace = nullptr;
};

// The rooting algorithm: inserts roots into a weighted phylogenetic tree so
// that the result is an ultrametric network whose underlying weighted tree is
// the input. Throws std::invalid_argument when seq is not a weighted
// cherry-picking sequence.
ArborealNetwork ultrametric_uprooting(
    const WeightedPhyloTree& t,
    std::optional<std::vector<std::string>> seq = {},
    const UprootOptions& options = {});

// True iff the underlying weighted tree of n is isomorphic to t as a weighted
// leaf-labeled tree.
bool is_weight_preserving_uprooting(const ArborealNetwork& n,
                                    const WeightedPhyloTree& t);

// Leaves at minimum weighted distance from v.
std::set<std::string> closest_leaves(const WeightedPhyloTree& t, VertexId v);

// Independent second construction: orients each tree edge toward the side
// holding a closest leaf, inserting a two-arc root where neither side
// qualifies; root arc weights come from the closest-leaf distances. Output is
// isomorphic to ultrametric_uprooting(t).
ArborealNetwork uprooting_via_orientation(const WeightedPhyloTree& t);

}  // namespace arboreal
