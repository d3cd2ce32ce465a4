#include "arboreal/network.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace arboreal {

VertexId ArborealNetwork::add_vertex() {
  while (out_.count(next_id_)) ++next_id_;
  out_[next_id_];
  in_[next_id_];
  return next_id_++;
}

void ArborealNetwork::add_vertex(VertexId v) {
  out_[v];
  in_[v];
}

void ArborealNetwork::remove_vertex(VertexId v) {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex");
  for (const auto& [c, _] : out_[v]) in_[c].erase(v);
  for (VertexId p : in_[v]) out_[p].erase(v);
  out_.erase(v);
  in_.erase(v);
  clear_label(v);
}

void ArborealNetwork::add_arc(VertexId u, VertexId v, const Rational& weight) {
  if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("unknown vertex");
  if (u == v) throw std::invalid_argument("self-loop arc");
  if (out_[u].count(v)) throw std::invalid_argument("duplicate arc");
  out_[u][v] = weight;
  in_[v].insert(u);
}

void ArborealNetwork::remove_arc(VertexId u, VertexId v) {
  if (!has_arc(u, v)) throw std::invalid_argument("unknown arc");
  out_[u].erase(v);
  in_[v].erase(u);
}

void ArborealNetwork::set_weight(VertexId u, VertexId v, const Rational& weight) {
  if (!has_arc(u, v)) throw std::invalid_argument("unknown arc");
  out_[u][v] = weight;
}

void ArborealNetwork::set_label(VertexId v, const std::string& label) {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex");
  if (by_label_.count(label) && by_label_[label] != v)
    throw std::invalid_argument("duplicate label: " + label);
  clear_label(v);
  labels_[v] = label;
  by_label_[label] = v;
}

void ArborealNetwork::clear_label(VertexId v) {
  auto it = labels_.find(v);
  if (it == labels_.end()) return;
  by_label_.erase(it->second);
  labels_.erase(it);
}

bool ArborealNetwork::has_arc(VertexId u, VertexId v) const {
  auto it = out_.find(u);
  return it != out_.end() && it->second.count(v) != 0;
}

const Rational& ArborealNetwork::weight(VertexId u, VertexId v) const {
  auto it = out_.find(u);
  if (it == out_.end()) throw std::invalid_argument("unknown vertex");
  auto jt = it->second.find(v);
  if (jt == it->second.end()) throw std::invalid_argument("unknown arc");
  return jt->second;
}

const std::map<VertexId, Rational>& ArborealNetwork::children(VertexId v) const {
  auto it = out_.find(v);
  if (it == out_.end()) throw std::invalid_argument("unknown vertex");
  return it->second;
}

const std::set<VertexId>& ArborealNetwork::parents(VertexId v) const {
  auto it = in_.find(v);
  if (it == in_.end()) throw std::invalid_argument("unknown vertex");
  return it->second;
}

int ArborealNetwork::outdegree(VertexId v) const {
  return static_cast<int>(children(v).size());
}

int ArborealNetwork::indegree(VertexId v) const {
  return static_cast<int>(parents(v).size());
}

const std::string* ArborealNetwork::label(VertexId v) const {
  auto it = labels_.find(v);
  return it == labels_.end() ? nullptr : &it->second;
}

VertexId ArborealNetwork::leaf_by_label(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) throw std::invalid_argument("unknown leaf label: " + label);
  return it->second;
}

std::vector<VertexId> ArborealNetwork::vertices() const {
  std::vector<VertexId> vs;
  vs.reserve(out_.size());
  for (const auto& [v, _] : out_) vs.push_back(v);
  return vs;
}

std::vector<Arc> ArborealNetwork::arcs() const {
  std::vector<Arc> as;
  for (const auto& [u, cs] : out_)
    for (const auto& [v, _] : cs) as.push_back({u, v});
  return as;
}

size_t ArborealNetwork::arc_count() const {
  size_t total = 0;
  for (const auto& [u, cs] : out_) total += cs.size();
  return total;
}

std::vector<VertexId> ArborealNetwork::roots() const {
  std::vector<VertexId> rs;
  for (const auto& [v, ps] : in_)
    if (ps.empty()) rs.push_back(v);
  return rs;
}

std::vector<VertexId> ArborealNetwork::leaves() const {
  std::vector<VertexId> ls;
  for (const auto& [v, cs] : out_)
    if (cs.empty()) ls.push_back(v);
  return ls;
}

std::vector<VertexId> ArborealNetwork::roots_outdeg2() const {
  std::vector<VertexId> rs;
  for (VertexId r : roots())
    if (outdegree(r) == 2) rs.push_back(r);
  return rs;
}

std::vector<std::string> ArborealNetwork::leaf_labels() const {
  std::vector<std::string> ls;
  for (const auto& [l, _] : by_label_) ls.push_back(l);
  return ls;
}

namespace {

ValidationReport fail_vertex(std::string msg, VertexId v) {
  return {false, std::move(msg), v, std::nullopt};
}

ValidationReport fail_arc(std::string msg, Arc a) {
  return {false, std::move(msg), std::nullopt, a};
}

bool connected_ignoring_arc(const ArborealNetwork& n,
                            std::optional<Arc> skip) {
  auto vs = n.vertices();
  if (vs.empty()) return true;
  std::set<VertexId> seen{vs.front()};
  std::deque<VertexId> queue{vs.front()};
  auto skipped = [&](VertexId a, VertexId b) {
    return skip && ((skip->from == a && skip->to == b) ||
                    (skip->from == b && skip->to == a));
  };
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& [c, _] : n.children(v))
      if (!skipped(v, c) && seen.insert(c).second) queue.push_back(c);
    for (VertexId p : n.parents(v))
      if (!skipped(p, v) && seen.insert(p).second) queue.push_back(p);
  }
  return seen.size() == vs.size();
}

bool is_acyclic(const ArborealNetwork& n) {
  std::map<VertexId, int> indeg;
  std::deque<VertexId> queue;
  for (VertexId v : n.vertices()) {
    indeg[v] = n.indegree(v);
    if (indeg[v] == 0) queue.push_back(v);
  }
  size_t seen = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    ++seen;
    for (const auto& [c, _] : n.children(v))
      if (--indeg[c] == 0) queue.push_back(c);
  }
  return seen == n.vertex_count();
}

}  // namespace

ValidationReport validate(const ArborealNetwork& n, bool relaxed) {
  if (n.vertex_count() == 0) return {false, "empty network", {}, {}};
  for (VertexId v : n.vertices()) {
    for (const auto& [c, w] : n.children(v))
      if (!w.is_positive())
        return fail_arc("nonpositive arc weight", {v, c});
  }
  for (VertexId v : n.vertices()) {
    bool is_leaf = n.outdegree(v) == 0;
    const std::string* l = n.label(v);
    if (is_leaf && !l) return fail_vertex("unlabeled leaf", v);
    if (!is_leaf && l) return fail_vertex("labeled non-leaf vertex", v);
  }
  if (!connected_ignoring_arc(n, std::nullopt))
    return {false, "not connected", {}, {}};
  if (!is_acyclic(n)) return {false, "directed cycle", {}, {}};
  for (VertexId v : n.vertices()) {
    int in = n.indegree(v);
    int out = n.outdegree(v);
    if (in == 0 && out < 2)
      return fail_vertex("root with outdegree below 2", v);
    if (out == 0 && in != 1 && !relaxed)
      return fail_vertex("leaf with indegree other than 1", v);
    if (out == 0 && in < 1)
      return fail_vertex("leaf with indegree 0", v);
    if (in == 1 && out == 1)
      return fail_vertex("vertex with indegree and outdegree 1", v);
  }
  for (const Arc& a : n.arcs()) {
    if (connected_ignoring_arc(n, a))
      return fail_arc("arc is not a bridge", a);
  }
  return {};
}

VertexId subdivide_arc(ArborealNetwork& n, VertexId u, VertexId v,
                       const Rational& upper, const Rational& lower) {
  if (!n.has_arc(u, v)) throw std::invalid_argument("unknown arc");
  n.remove_arc(u, v);
  VertexId mid = n.add_vertex();
  n.add_arc(u, mid, upper);
  n.add_arc(mid, v, lower);
  return mid;
}

std::set<VertexId> descendant_leaves(const ArborealNetwork& n, VertexId v) {
  if (!n.has_vertex(v)) throw std::invalid_argument("unknown vertex");
  std::set<VertexId> out;
  std::set<VertexId> seen{v};
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId a = stack.back();
    stack.pop_back();
    if (n.outdegree(a) == 0) out.insert(a);
    for (const auto& [c, _] : n.children(a))
      if (seen.insert(c).second) stack.push_back(c);
  }
  return out;
}

namespace {

std::set<VertexId> ancestors_of(const ArborealNetwork& n, VertexId v) {
  std::set<VertexId> seen{v};
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId a = stack.back();
    stack.pop_back();
    for (VertexId p : n.parents(a))
      if (seen.insert(p).second) stack.push_back(p);
  }
  return seen;
}

}  // namespace

std::optional<VertexId> lca(const ArborealNetwork& n, const std::string& x,
                            const std::string& y) {
  VertexId vx = n.leaf_by_label(x);
  VertexId vy = n.leaf_by_label(y);
  if (vx == vy) throw std::invalid_argument("lca needs two distinct leaves");
  if (n.outdegree(vx) != 0 || n.outdegree(vy) != 0)
    throw std::invalid_argument("lca arguments must be leaves");
  auto ax = ancestors_of(n, vx);
  auto ay = ancestors_of(n, vy);
  std::set<VertexId> common;
  std::set_intersection(ax.begin(), ax.end(), ay.begin(), ay.end(),
                        std::inserter(common, common.begin()));
  if (common.empty()) return std::nullopt;
  // lowest: no child is also a common ancestor
  std::vector<VertexId> minimal;
  for (VertexId v : common) {
    bool child_common = false;
    for (const auto& [c, _] : n.children(v))
      if (common.count(c)) {
        child_common = true;
        break;
      }
    if (!child_common) minimal.push_back(v);
  }
  if (minimal.size() != 1)
    throw std::logic_error("non-unique lowest common ancestor; network is not arboreal");
  return minimal.front();
}

UndirectedGraph shared_ancestry_graph(const ArborealNetwork& n) {
  auto labels = n.leaf_labels();
  UndirectedGraph g;
  std::map<std::string, VertexId> vertex_of;
  for (size_t i = 0; i < labels.size(); ++i) {
    VertexId v = g.add_vertex();
    g.set_label(v, labels[i]);
    vertex_of[labels[i]] = v;
  }
  for (VertexId v : n.vertices()) {
    auto desc = descendant_leaves(n, v);
    std::vector<VertexId> ds(desc.begin(), desc.end());
    for (size_t i = 0; i < ds.size(); ++i)
      for (size_t j = i + 1; j < ds.size(); ++j) {
        VertexId a = vertex_of.at(*n.label(ds[i]));
        VertexId b = vertex_of.at(*n.label(ds[j]));
        if (!g.has_edge(a, b)) g.add_edge(a, b);
      }
  }
  return g;
}

WeightedPhyloTree underlying_weighted_tree(const ArborealNetwork& n) {
  ValidationReport report = validate(n, false);
  if (!report.ok)
    throw std::invalid_argument("invalid network: " + report.message);
  std::set<VertexId> r2;
  for (VertexId r : n.roots_outdeg2()) r2.insert(r);
  UndirectedGraph g;
  std::map<Edge, Rational> w;
  for (VertexId v : n.vertices())
    if (!r2.count(v)) {
      g.add_vertex(v);
      if (const std::string* l = n.label(v)) g.set_label(v, *l);
    }
  for (const Arc& a : n.arcs()) {
    if (r2.count(a.from)) continue;
    g.add_edge(a.from, a.to);
    w[make_edge(a.from, a.to)] = n.weight(a.from, a.to);
  }
  for (VertexId r : r2) {
    auto it = n.children(r).begin();
    auto [u, wu] = *it++;
    auto [v, wv] = *it;
    g.add_edge(u, v);
    w[make_edge(u, v)] = wu + wv;
  }
  return WeightedPhyloTree(std::move(g), std::move(w));
}

namespace {

// Arc-path lengths from v to each of its descendants.
std::map<VertexId, Rational> descent_lengths(const ArborealNetwork& n,
                                             VertexId v) {
  std::map<VertexId, Rational> dist;
  dist[v] = Rational(0);
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId a = stack.back();
    stack.pop_back();
    for (const auto& [c, w] : n.children(a)) {
      Rational len = dist[a] + w;
      auto it = dist.find(c);
      if (it == dist.end()) {
        dist[c] = len;
        stack.push_back(c);
      } else if (it->second != len) {
        throw std::logic_error("descendant reachable at two different lengths");
      }
    }
  }
  return dist;
}

}  // namespace

PartialDistance induced_partial_distance(const ArborealNetwork& n) {
  auto labels = n.leaf_labels();
  PartialDistance d(labels);
  std::map<VertexId, std::map<VertexId, Rational>> length_cache;
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j) {
      auto v = lca(n, labels[i], labels[j]);
      if (!v) continue;
      auto it = length_cache.find(*v);
      if (it == length_cache.end())
        it = length_cache.emplace(*v, descent_lengths(n, *v)).first;
      d.set(i, j, it->second.at(n.leaf_by_label(labels[i])) +
                      it->second.at(n.leaf_by_label(labels[j])));
    }
  return d;
}

DistanceMatrix induced_distance(const ArborealNetwork& n) {
  return leaf_distance_matrix(underlying_weighted_tree(n));
}

std::optional<UltrametricWitness> is_ultrametric_network(
    const ArborealNetwork& n) {
  for (VertexId v : n.vertices()) {
    if (n.outdegree(v) == 0) continue;
    auto lens = descent_lengths(n, v);
    std::optional<VertexId> first;
    for (VertexId leaf : descendant_leaves(n, v)) {
      if (!first) {
        first = leaf;
        continue;
      }
      if (lens.at(leaf) != lens.at(*first))
        return UltrametricWitness{v, *n.label(*first), *n.label(leaf)};
    }
  }
  return std::nullopt;
}

VertexHeights heights(const ArborealNetwork& n) {
  if (auto w = is_ultrametric_network(n))
    throw std::invalid_argument("network is not ultrametric (witness at vertex " +
                                std::to_string(w->vertex) + ")");
  VertexHeights h;
  for (VertexId v : n.vertices()) {
    if (n.outdegree(v) == 0) {
      h.delta[v] = Rational(0);
      continue;
    }
    auto lens = descent_lengths(n, v);
    VertexId leaf = *descendant_leaves(n, v).begin();
    h.delta[v] = lens.at(leaf);
    h.label[v] = h.delta[v] + h.delta[v];
  }
  return h;
}

namespace {

// The underlying multigraph of a validated network is a tree, so
// canonicalization roots that tree at the vertex carrying the smallest leaf
// label and serializes with children sorted by their own serialization. Arc
// direction and weight are encoded on each edge.
struct UnderlyingView {
  std::map<VertexId, std::set<VertexId>> adjacent;
};

std::string canon_node(const ArborealNetwork& n, const UnderlyingView& view,
                       VertexId v, VertexId parent) {
  std::vector<std::string> parts;
  for (VertexId u : view.adjacent.at(v)) {
    if (u == parent) continue;
    std::string edge;
    if (n.has_arc(v, u))
      edge = "d" + n.weight(v, u).str();
    else
      edge = "u" + n.weight(u, v).str();
    parts.push_back(edge + ":" + canon_node(n, view, u, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  if (const std::string* l = n.label(v)) s += *l;
  for (const auto& p : parts) {
    s += '|';
    s += p;
  }
  s += ')';
  return s;
}

}  // namespace

std::string canonical_form(const ArborealNetwork& n) {
  auto labels = n.leaf_labels();
  if (labels.empty()) throw std::invalid_argument("network has no leaves");
  UnderlyingView view;
  for (VertexId v : n.vertices()) view.adjacent[v];
  for (const Arc& a : n.arcs()) {
    view.adjacent[a.from].insert(a.to);
    view.adjacent[a.to].insert(a.from);
  }
  VertexId root = n.leaf_by_label(labels.front());
  return canon_node(n, view, root, -1);
}

bool is_isomorphic(const ArborealNetwork& a, const ArborealNetwork& b) {
  return canonical_form(a) == canonical_form(b);
}

ArborealNetwork suppress_outdegree1(const ArborealNetwork& n) {
  ArborealNetwork r = n;
  while (true) {
    VertexId u = -1;
    for (VertexId v : r.vertices())
      if (r.outdegree(v) == 1) {
        u = v;
        break;
      }
    if (u == -1) break;
    VertexId child = r.children(u).begin()->first;
    Rational w = r.weight(u, child);
    // contract (u, child): u takes the child's arcs and label; u's own
    // parents absorb the contracted weight, the child's other parents keep
    // theirs
    std::string child_label;
    bool child_labeled = r.label(child) != nullptr;
    if (child_labeled) child_label = *r.label(child);
    std::vector<std::pair<VertexId, Rational>> grand;
    for (const auto& [g, gw] : r.children(child)) grand.push_back({g, gw});
    std::vector<std::pair<VertexId, Rational>> coparents;
    for (VertexId p : r.parents(child))
      if (p != u) coparents.push_back({p, r.weight(p, child)});
    std::vector<VertexId> ps(r.parents(u).begin(), r.parents(u).end());
    r.remove_vertex(child);
    for (const auto& [g, gw] : grand) r.add_arc(u, g, gw);
    for (const auto& [p, pw] : coparents) r.add_arc(p, u, pw);
    for (VertexId p : ps) r.set_weight(p, u, r.weight(p, u) + w);
    if (child_labeled) r.set_label(u, child_label);
  }
  return r;
}

ArborealNetwork normalize_leaves(const ArborealNetwork& n) {
  ArborealNetwork r = n;
  for (VertexId leaf : r.leaves()) {
    if (r.indegree(leaf) < 2) continue;
    std::vector<VertexId> ps(r.parents(leaf).begin(), r.parents(leaf).end());
    Rational min_w = r.weight(ps.front(), leaf);
    for (VertexId p : ps) min_w = std::min(min_w, r.weight(p, leaf));
    Rational below = min_w.half();
    VertexId mid = r.add_vertex();
    for (VertexId p : ps) {
      Rational w = r.weight(p, leaf);
      r.remove_arc(p, leaf);
      r.add_arc(p, mid, w - below);
    }
    r.add_arc(mid, leaf, below);
  }
  return r;
}

}  // namespace arboreal
