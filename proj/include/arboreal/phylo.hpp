#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arboreal/distance.hpp"
#include "arboreal/graph.hpp"
#include "arboreal/rational.hpp"

namespace arboreal {

// Unrooted tree with labeled leaves, no degree-2 vertices, and strictly
// positive exact-rational edge weights.
class WeightedPhyloTree {
 public:
  // Validates shape and weights; throws std::invalid_argument on violation.
  WeightedPhyloTree(UndirectedGraph graph, std::map<Edge, Rational> weights);

  const UndirectedGraph& graph() const { return graph_; }
  const Rational& weight(Edge e) const;
  const std::map<Edge, Rational>& weights() const { return weights_; }

  std::vector<VertexId> leaves() const;
  std::vector<std::string> leaf_labels() const;  // sorted
  VertexId leaf_by_label(const std::string& label) const;
  const std::string* label(VertexId v) const { return graph_.label(v); }
  size_t leaf_count() const;

 private:
  UndirectedGraph graph_;
  std::map<Edge, Rational> weights_;
};

// Sum of edge weights along the unique path; zero iff u == v.
Rational path_length(const WeightedPhyloTree& t, VertexId u, VertexId v);

// Distances from v to every vertex, one traversal.
std::map<VertexId, Rational> distances_from(const WeightedPhyloTree& t,
                                            VertexId v);

DistanceMatrix leaf_distance_matrix(const WeightedPhyloTree& t);

// Tree induced on the leaf subset Y: prune, then suppress degree-2 vertices
// summing weights. Leaf distances among Y are preserved exactly.
WeightedPhyloTree restrict(const WeightedPhyloTree& t,
                           const std::vector<std::string>& Y);

// Single-leaf restriction, O(n); equivalent to restrict on X minus {label}.
WeightedPhyloTree remove_leaf(const WeightedPhyloTree& t,
                              const std::string& label);

struct FourPointWitness {
  std::string x, y, z, u;  // D(x,y)+D(z,u) > max of the other two pairings
};

std::optional<FourPointWitness> check_four_point(const DistanceMatrix& d);

struct ThreePointWitness {
  std::string x, y, z;  // D(x,y) > max(D(x,z), D(y,z))
};

// Vacuously satisfied when |X| <= 2.
std::optional<ThreePointWitness> check_three_point_ultrametric(
    const DistanceMatrix& d);

struct FourPointViolation : std::runtime_error {
  explicit FourPointViolation(FourPointWitness w);
  FourPointWitness witness;
};

// Realizes an exactly tree-like distance by sequential leaf insertion with
// Gromov products; the result reproduces d exactly and has no degree-2
// vertices. Throws FourPointViolation if the four-point condition fails, and
// std::invalid_argument if d needs a zero-length pendant edge.
WeightedPhyloTree tree_from_distance(const DistanceMatrix& d);

// Rooted tree in which every root-to-leaf path has the same length. Node 0 is
// the root; children clusters come from the strict-threshold components of the
// distance, recursively.
struct EquidistantTree {
  struct Node {
    Rational height;             // zero iff leaf
    std::string label;           // nonempty iff leaf
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = 0;

  Rational leaf_distance(const std::string& x, const std::string& y) const;
};

// Throws std::invalid_argument (with the witness in the message) when the
// three-point condition fails.
EquidistantTree equidistant_tree_from_ultrametric(const DistanceMatrix& d);

// Weighted cherry-picking sequences. compute_wcps breaks ties on the smallest
// leaf label unless an RNG seed is supplied.
std::vector<std::string> compute_wcps(const WeightedPhyloTree& t,
                                      std::optional<std::uint64_t> seed = {});
bool is_wcps(const WeightedPhyloTree& t, const std::vector<std::string>& seq);

// Equal strings iff the trees are isomorphic as weighted leaf-labeled trees
// via a map that is the identity on labels.
std::string tree_canonical_form(const WeightedPhyloTree& t);

}  // namespace arboreal
