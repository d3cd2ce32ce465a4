#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;  // always stored (min,max)

inline Edge make_edge(VertexId u, VertexId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph over opaque integer vertex ids. Labels are attached
// metadata, never identity; surgery operations create and destroy vertices
// freely. Values are immutable from the caller's point of view: the surgery
// helpers below take a graph by value and return the rewritten one.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  VertexId add_vertex();
  void add_vertex(VertexId v);
  void remove_vertex(VertexId v);
  void add_edge(VertexId u, VertexId v);
  void remove_edge(VertexId u, VertexId v);

  bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
  bool has_edge(VertexId u, VertexId v) const;
  int degree(VertexId v) const;
  const std::set<VertexId>& neighbors(VertexId v) const;

  std::vector<VertexId> vertices() const;
  std::vector<Edge> edges() const;
  size_t vertex_count() const { return adj_.size(); }
  size_t edge_count() const;

  void set_label(VertexId v, const std::string& label);
  const std::string* label(VertexId v) const;
  std::vector<VertexId> labeled_vertices() const;

  bool operator==(const UndirectedGraph& other) const {
    return adj_ == other.adj_ && labels_ == other.labels_;
  }

 private:
  std::map<VertexId, std::set<VertexId>> adj_;
  std::map<VertexId, std::string> labels_;
  VertexId next_id_ = 0;
};

bool is_connected(const UndirectedGraph& g);

// Subgraph induced by the given vertex set (labels kept).
UndirectedGraph induced_subgraph(const UndirectedGraph& g,
                                 const std::set<VertexId>& keep);

// The three rewrite rules on undirected graphs. Directed variants live with
// the network type.
UndirectedGraph suppress_degree2(UndirectedGraph g, VertexId v);
std::pair<UndirectedGraph, VertexId> subdivide_edge(UndirectedGraph g, Edge e);
UndirectedGraph contract_edge(UndirectedGraph g, Edge e);

}  // namespace arboreal
