#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arboreal/distance.hpp"
#include "arboreal/graph.hpp"
#include "arboreal/phylo.hpp"
#include "arboreal/rational.hpp"

namespace arboreal {

struct Arc {
  VertexId from;
  VertexId to;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Weighted rooted DAG whose underlying graph is a phylogenetic tree; possibly
// several roots. In relaxed mode leaves may have indegree above one. Mutating
// methods exist for builders; the free functions below treat networks as
// immutable values.
class ArborealNetwork {
 public:
  ArborealNetwork() = default;

  VertexId add_vertex();
  void add_vertex(VertexId v);
  void remove_vertex(VertexId v);
  void add_arc(VertexId u, VertexId v, const Rational& weight);
  void remove_arc(VertexId u, VertexId v);
  void set_weight(VertexId u, VertexId v, const Rational& weight);
  void set_label(VertexId v, const std::string& label);
  void clear_label(VertexId v);

  bool has_vertex(VertexId v) const { return out_.count(v) != 0; }
  bool has_arc(VertexId u, VertexId v) const;
  const Rational& weight(VertexId u, VertexId v) const;
  const std::map<VertexId, Rational>& children(VertexId v) const;
  const std::set<VertexId>& parents(VertexId v) const;
  int outdegree(VertexId v) const;
  int indegree(VertexId v) const;

  const std::string* label(VertexId v) const;
  VertexId leaf_by_label(const std::string& label) const;

  std::vector<VertexId> vertices() const;
  std::vector<Arc> arcs() const;  // sorted
  size_t vertex_count() const { return out_.size(); }
  size_t arc_count() const;

  std::vector<VertexId> roots() const;        // indegree 0
  std::vector<VertexId> leaves() const;       // outdegree 0
  std::vector<VertexId> roots_outdeg2() const;
  std::vector<std::string> leaf_labels() const;  // sorted

 private:
  std::map<VertexId, std::map<VertexId, Rational>> out_;
  std::map<VertexId, std::set<VertexId>> in_;
  std::map<VertexId, std::string> labels_;
  std::map<std::string, VertexId> by_label_;
  VertexId next_id_ = 0;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  std::optional<VertexId> vertex;
  std::optional<Arc> arc;
};

// Checks every network invariant including the bridge criterion for
// arboreality; reports the first violated clause.
ValidationReport validate(const ArborealNetwork& n, bool relaxed = false);

// Directed surgery, as used by the uprooting algorithm.
VertexId subdivide_arc(ArborealNetwork& n, VertexId u, VertexId v,
                       const Rational& upper, const Rational& lower);

std::set<VertexId> descendant_leaves(const ArborealNetwork& n, VertexId v);

// Unique lowest common ancestor of two distinct leaves, if they share an
// ancestor; uniqueness is asserted (it follows from arboreality).
std::optional<VertexId> lca(const ArborealNetwork& n, const std::string& x,
                            const std::string& y);

// Graph on the leaf labels with an edge wherever two leaves share an ancestor.
UndirectedGraph shared_ancestry_graph(const ArborealNetwork& n);

// Drops outdegree-2 roots, merging their two arcs into one edge of summed
// weight; requires a validated strict network.
WeightedPhyloTree underlying_weighted_tree(const ArborealNetwork& n);

// Finite where a lowest common ancestor exists (path length through it),
// infinite otherwise.
PartialDistance induced_partial_distance(const ArborealNetwork& n);

// Distance induced via the underlying weighted tree (all pairs finite).
DistanceMatrix induced_distance(const ArborealNetwork& n);

struct UltrametricWitness {
  VertexId vertex;
  std::string leaf_x, leaf_y;  // unequal path lengths from vertex
};

std::optional<UltrametricWitness> is_ultrametric_network(
    const ArborealNetwork& n);

struct VertexHeights {
  std::map<VertexId, Rational> delta;  // distance to any descendant leaf
  std::map<VertexId, Rational> label;  // non-leaves: twice delta
};

// Requires an ultrametric network (throws otherwise).
VertexHeights heights(const ArborealNetwork& n);

// Equal strings iff the networks are isomorphic as weighted leaf-labeled
// digraphs via a map that is the identity on leaf labels.
std::string canonical_form(const ArborealNetwork& n);
bool is_isomorphic(const ArborealNetwork& a, const ArborealNetwork& b);

// Repeatedly contracts the arc out of an outdegree-1 vertex, adding the
// contracted weight onto every parent arc; the result may have leaves of
// indegree above one (relaxed). Preserves the induced partial distance.
ArborealNetwork suppress_outdegree1(const ArborealNetwork& n);

// Inserts one vertex above each leaf of indegree 2 or more, restoring a
// strict network with the same induced partial distance. The inserted arc
// gets half the smallest incoming weight; parents keep the remainder.
ArborealNetwork normalize_leaves(const ArborealNetwork& n);

}  // namespace arboreal
