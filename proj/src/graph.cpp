#include "arboreal/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace arboreal {

VertexId UndirectedGraph::add_vertex() {
  while (adj_.count(next_id_)) ++next_id_;
  adj_[next_id_];
  return next_id_++;
}

void UndirectedGraph::add_vertex(VertexId v) {
  adj_[v];
}

void UndirectedGraph::remove_vertex(VertexId v) {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw std::invalid_argument("unknown vertex");
  for (VertexId u : it->second) adj_[u].erase(v);
  adj_.erase(it);
  labels_.erase(v);
}

void UndirectedGraph::add_edge(VertexId u, VertexId v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("unknown vertex");
  adj_[u].insert(v);
  adj_[v].insert(u);
}

void UndirectedGraph::remove_edge(VertexId u, VertexId v) {
  if (!has_edge(u, v)) throw std::invalid_argument("unknown edge");
  adj_[u].erase(v);
  adj_[v].erase(u);
}

bool UndirectedGraph::has_edge(VertexId u, VertexId v) const {
  auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v) != 0;
}

int UndirectedGraph::degree(VertexId v) const {
  return static_cast<int>(neighbors(v).size());
}

const std::set<VertexId>& UndirectedGraph::neighbors(VertexId v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw std::invalid_argument("unknown vertex");
  return it->second;
}

std::vector<VertexId> UndirectedGraph::vertices() const {
  std::vector<VertexId> vs;
  vs.reserve(adj_.size());
  for (const auto& [v, _] : adj_) vs.push_back(v);
  return vs;
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> es;
  for (const auto& [v, nb] : adj_)
    for (VertexId u : nb)
      if (v < u) es.push_back({v, u});
  return es;
}

size_t UndirectedGraph::edge_count() const {
  size_t total = 0;
  for (const auto& [v, nb] : adj_) total += nb.size();
  return total / 2;
}

void UndirectedGraph::set_label(VertexId v, const std::string& label) {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex");
  labels_[v] = label;
}

const std::string* UndirectedGraph::label(VertexId v) const {
  auto it = labels_.find(v);
  return it == labels_.end() ? nullptr : &it->second;
}

std::vector<VertexId> UndirectedGraph::labeled_vertices() const {
  std::vector<VertexId> vs;
  for (const auto& [v, _] : labels_) vs.push_back(v);
  return vs;
}

bool is_connected(const UndirectedGraph& g) {
  auto vs = g.vertices();
  if (vs.size() <= 1) return true;
  std::set<VertexId> seen{vs.front()};
  std::vector<VertexId> stack{vs.front()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : g.neighbors(v))
      if (seen.insert(u).second) stack.push_back(u);
  }
  return seen.size() == vs.size();
}

UndirectedGraph induced_subgraph(const UndirectedGraph& g,
                                 const std::set<VertexId>& keep) {
  UndirectedGraph h;
  for (VertexId v : keep) {
    if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex");
    h.add_vertex(v);
    if (const std::string* l = g.label(v)) h.set_label(v, *l);
  }
  for (VertexId v : keep)
    for (VertexId u : g.neighbors(v))
      if (v < u && keep.count(u)) h.add_edge(v, u);
  return h;
}

UndirectedGraph suppress_degree2(UndirectedGraph g, VertexId v) {
  if (g.degree(v) != 2) throw std::invalid_argument("vertex degree is not 2");
  auto nb = g.neighbors(v);
  auto it = nb.begin();
  VertexId u = *it++;
  VertexId w = *it;
  g.remove_vertex(v);
  if (!g.has_edge(u, w)) g.add_edge(u, w);
  return g;
}

std::pair<UndirectedGraph, VertexId> subdivide_edge(UndirectedGraph g, Edge e) {
  if (!g.has_edge(e.first, e.second)) throw std::invalid_argument("unknown edge");
  g.remove_edge(e.first, e.second);
  VertexId v = g.add_vertex();
  g.add_edge(e.first, v);
  g.add_edge(v, e.second);
  return {std::move(g), v};
}

UndirectedGraph contract_edge(UndirectedGraph g, Edge e) {
  auto [u, v] = e;
  if (!g.has_edge(u, v)) throw std::invalid_argument("unknown edge");
  auto nb = g.neighbors(v);
  g.remove_vertex(v);
  for (VertexId w : nb)
    if (w != u && !g.has_edge(u, w)) g.add_edge(u, w);
  return g;
}

}  // namespace arboreal
