#include "arboreal/phylo.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arboreal {

WeightedPhyloTree::WeightedPhyloTree(UndirectedGraph graph,
                                     std::map<Edge, Rational> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  size_t n = graph_.vertex_count();
  if (graph_.edge_count() + 1 != n || !is_connected(graph_))
    throw std::invalid_argument("not a tree");
  size_t labeled = 0;
  std::set<std::string> seen;
  for (VertexId v : graph_.vertices()) {
    int deg = graph_.degree(v);
    const std::string* l = graph_.label(v);
    if (deg <= 1) {
      if (!l) throw std::invalid_argument("unlabeled leaf");
      if (!seen.insert(*l).second) throw std::invalid_argument("duplicate label");
      ++labeled;
    } else if (deg == 2) {
      throw std::invalid_argument("degree-2 vertex");
    } else if (l) {
      throw std::invalid_argument("labeled internal vertex");
    }
  }
  if (labeled < 2) throw std::invalid_argument("fewer than two leaves");
  for (Edge e : graph_.edges()) {
    auto it = weights_.find(e);
    if (it == weights_.end()) throw std::invalid_argument("unweighted edge");
    if (!it->second.is_positive())
      throw std::invalid_argument("nonpositive edge weight");
  }
  if (weights_.size() != graph_.edge_count())
    throw std::invalid_argument("weight on a non-edge");
}

const Rational& WeightedPhyloTree::weight(Edge e) const {
  auto it = weights_.find(make_edge(e.first, e.second));
  if (it == weights_.end()) throw std::invalid_argument("unknown edge");
  return it->second;
}

std::vector<VertexId> WeightedPhyloTree::leaves() const {
  std::vector<VertexId> ls;
  for (VertexId v : graph_.vertices())
    if (graph_.degree(v) <= 1) ls.push_back(v);
  return ls;
}

std::vector<std::string> WeightedPhyloTree::leaf_labels() const {
  std::vector<std::string> ls;
  for (VertexId v : leaves()) ls.push_back(*graph_.label(v));
  std::sort(ls.begin(), ls.end());
  return ls;
}

VertexId WeightedPhyloTree::leaf_by_label(const std::string& label) const {
  for (VertexId v : leaves())
    if (*graph_.label(v) == label) return v;
  throw std::invalid_argument("unknown leaf label: " + label);
}

size_t WeightedPhyloTree::leaf_count() const { return leaves().size(); }

std::map<VertexId, Rational> distances_from(const WeightedPhyloTree& t,
                                            VertexId v) {
  if (!t.graph().has_vertex(v)) throw std::invalid_argument("unknown vertex");
  std::map<VertexId, Rational> dist;
  dist[v] = Rational(0);
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId a = stack.back();
    stack.pop_back();
    for (VertexId b : t.graph().neighbors(a)) {
      if (dist.count(b)) continue;
      dist[b] = dist[a] + t.weight(make_edge(a, b));
      stack.push_back(b);
    }
  }
  return dist;
}

Rational path_length(const WeightedPhyloTree& t, VertexId u, VertexId v) {
  if (!t.graph().has_vertex(u) || !t.graph().has_vertex(v))
    throw std::invalid_argument("unknown vertex");
  if (u == v) return Rational(0);
  return distances_from(t, u).at(v);
}

DistanceMatrix leaf_distance_matrix(const WeightedPhyloTree& t) {
  auto labels = t.leaf_labels();
  DistanceMatrix d(labels);
  for (size_t i = 0; i < labels.size(); ++i) {
    auto dist = distances_from(t, t.leaf_by_label(labels[i]));
    for (size_t j = i + 1; j < labels.size(); ++j)
      d.set(i, j, dist.at(t.leaf_by_label(labels[j])));
  }
  return d;
}

WeightedPhyloTree restrict(const WeightedPhyloTree& t,
                           const std::vector<std::string>& Y) {
  if (Y.size() < 2) throw std::invalid_argument("restriction needs two leaves");
  std::set<std::string> keep(Y.begin(), Y.end());
  for (const auto& l : Y)
    t.leaf_by_label(l);  // throws on labels outside X

  UndirectedGraph g = t.graph();
  std::map<Edge, Rational> w = t.weights();

  auto drop_vertex = [&](VertexId v) {
    for (VertexId u : g.neighbors(v)) w.erase(make_edge(u, v));
    g.remove_vertex(v);
  };

  // prune unwanted leaves and any unlabeled vertices they expose
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : g.vertices()) {
      const std::string* l = g.label(v);
      bool unwanted_leaf = l && !keep.count(*l);
      bool bare = !l && g.degree(v) <= 1;
      if (unwanted_leaf || bare) {
        drop_vertex(v);
        changed = true;
        break;
      }
    }
  }
  // suppress unlabeled degree-2 vertices, summing weights
  changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : g.vertices()) {
      if (g.label(v) || g.degree(v) != 2) continue;
      auto nb = g.neighbors(v);
      auto it = nb.begin();
      VertexId a = *it++;
      VertexId b = *it;
      Rational sum = w.at(make_edge(a, v)) + w.at(make_edge(v, b));
      drop_vertex(v);
      g.add_edge(a, b);
      w[make_edge(a, b)] = sum;
      changed = true;
      break;
    }
  }
  return WeightedPhyloTree(std::move(g), std::move(w));
}

WeightedPhyloTree remove_leaf(const WeightedPhyloTree& t,
                              const std::string& label) {
  VertexId leaf = t.leaf_by_label(label);
  UndirectedGraph g = t.graph();
  std::map<Edge, Rational> w = t.weights();
  VertexId u = *g.neighbors(leaf).begin();
  w.erase(make_edge(leaf, u));
  g.remove_vertex(leaf);
  if (!g.label(u) && g.degree(u) == 2) {
    auto nb = g.neighbors(u);
    auto it = nb.begin();
    VertexId a = *it++;
    VertexId b = *it;
    Rational sum = w.at(make_edge(a, u)) + w.at(make_edge(u, b));
    w.erase(make_edge(a, u));
    w.erase(make_edge(u, b));
    g.remove_vertex(u);
    g.add_edge(a, b);
    w[make_edge(a, b)] = sum;
  }
  return WeightedPhyloTree(std::move(g), std::move(w));
}

std::optional<FourPointWitness> check_four_point(const DistanceMatrix& d) {
  size_t n = d.size();
  const auto& L = d.labels();
  // Degenerate quadruples (repeated points) reduce to the triangle
  // inequality, which is not implied by the distinct-quadruple checks.
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (d.at(x, y) > d.at(x, z) + d.at(z, y))
          return FourPointWitness{L[x], L[y], L[z], L[z]};
      }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y)
      for (size_t z = y + 1; z < n; ++z)
        for (size_t u = z + 1; u < n; ++u) {
          Rational s1 = d.at(x, y) + d.at(z, u);
          Rational s2 = d.at(x, z) + d.at(y, u);
          Rational s3 = d.at(x, u) + d.at(y, z);
          if (s1 > std::max(s2, s3)) return FourPointWitness{L[x], L[y], L[z], L[u]};
          if (s2 > std::max(s1, s3)) return FourPointWitness{L[x], L[z], L[y], L[u]};
          if (s3 > std::max(s1, s2)) return FourPointWitness{L[x], L[u], L[y], L[z]};
        }
  return std::nullopt;
}

std::optional<ThreePointWitness> check_three_point_ultrametric(
    const DistanceMatrix& d) {
  size_t n = d.size();
  const auto& L = d.labels();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (d.at(x, y) > std::max(d.at(x, z), d.at(y, z)))
          return ThreePointWitness{L[x], L[y], L[z]};
      }
  return std::nullopt;
}

FourPointViolation::FourPointViolation(FourPointWitness w)
    : std::runtime_error("four-point condition violated by (" + w.x + "," +
                         w.y + "," + w.z + "," + w.u + ")"),
      witness(std::move(w)) {}

WeightedPhyloTree tree_from_distance(const DistanceMatrix& d) {
  d.check_valid();
  if (auto w = check_four_point(d)) throw FourPointViolation(*w);
  const auto& L = d.labels();
  size_t n = L.size();

  UndirectedGraph g;
  std::map<Edge, Rational> w;
  std::map<size_t, VertexId> leaf_of;

  leaf_of[0] = g.add_vertex();
  g.set_label(leaf_of[0], L[0]);
  leaf_of[1] = g.add_vertex();
  g.set_label(leaf_of[1], L[1]);
  g.add_edge(leaf_of[0], leaf_of[1]);
  w[make_edge(leaf_of[0], leaf_of[1])] = d.at(0, 1);

  for (size_t zi = 2; zi < n; ++zi) {
    WeightedPhyloTree cur(g, w);
    // pendant length of the new leaf is the smallest Gromov product
    // (x|y)_z over present leaf pairs; the minimizing pair's path carries the
    // attachment point
    std::optional<Rational> best;
    size_t bx = 0, by = 0;
    for (size_t i = 0; i < zi; ++i)
      for (size_t j = i + 1; j < zi; ++j) {
        Rational gp = (d.at(i, zi) + d.at(j, zi) - d.at(i, j)).half();
        if (!best || gp < *best) {
          best = gp;
          bx = i;
          by = j;
        }
      }
    Rational pendant = *best;
    if (!pendant.is_positive())
      throw std::invalid_argument(
          "distance is not realizable with positive pendant weights");
    // walk from bx toward by, stopping at distance d(bx,z) - pendant
    Rational target = d.at(bx, zi) - pendant;
    auto from_by = distances_from(cur, leaf_of[by]);
    VertexId at = leaf_of[bx];
    Rational walked(0);
    VertexId attach = -1;
    while (true) {
      if (walked == target) {
        attach = at;
        break;
      }
      // next vertex on the path toward by
      VertexId next = -1;
      for (VertexId nb : cur.graph().neighbors(at)) {
        if (from_by.at(nb) + cur.weight(make_edge(at, nb)) == from_by.at(at)) {
          next = nb;
          break;
        }
      }
      Rational step = cur.weight(make_edge(at, next));
      if (walked + step > target) {
        // attachment point is inside this edge: subdivide
        VertexId mid = g.add_vertex();
        Rational first = target - walked;
        g.remove_edge(at, next);
        w.erase(make_edge(at, next));
        g.add_edge(at, mid);
        g.add_edge(mid, next);
        w[make_edge(at, mid)] = first;
        w[make_edge(mid, next)] = step - first;
        attach = mid;
        break;
      }
      walked += step;
      at = next;
    }
    if (g.label(attach))
      throw std::invalid_argument(
          "distance places a point on top of an existing leaf");
    VertexId leaf = g.add_vertex();
    g.set_label(leaf, L[zi]);
    g.add_edge(attach, leaf);
    w[make_edge(attach, leaf)] = pendant;
    leaf_of[zi] = leaf;
  }
  return WeightedPhyloTree(std::move(g), std::move(w));
}

Rational EquidistantTree::leaf_distance(const std::string& x,
                                        const std::string& y) const {
  // distance through the lowest node whose subtree holds both leaves
  auto contains = [&](int node, const std::string& l) {
    std::vector<int> stack{node};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (nodes[v].label == l) return true;
      for (int c : nodes[v].children) stack.push_back(c);
    }
    return false;
  };
  int at = root;
  while (true) {
    bool descended = false;
    for (int c : nodes[at].children) {
      if (contains(c, x) && contains(c, y)) {
        at = c;
        descended = true;
        break;
      }
    }
    if (!descended) break;
  }
  return nodes[at].height + nodes[at].height;
}

namespace {

int build_equidistant(const DistanceMatrix& d, const std::vector<size_t>& members,
                      EquidistantTree& out) {
  if (members.size() == 1) {
    out.nodes.push_back({Rational(0), d.labels()[members[0]], {}});
    return static_cast<int>(out.nodes.size() - 1);
  }
  Rational max_d = d.at(members[0], members[1]);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      max_d = std::max(max_d, d.at(members[i], members[j]));
  // components of the strict-threshold graph {D < max}
  std::map<size_t, int> comp;
  int ncomp = 0;
  for (size_t seed : members) {
    if (comp.count(seed)) continue;
    int c = ncomp++;
    std::vector<size_t> stack{seed};
    comp[seed] = c;
    while (!stack.empty()) {
      size_t a = stack.back();
      stack.pop_back();
      for (size_t b : members) {
        if (comp.count(b) || d.at(a, b) >= max_d || a == b) continue;
        comp[b] = c;
        stack.push_back(b);
      }
    }
  }
  int me = static_cast<int>(out.nodes.size());
  out.nodes.push_back({max_d.half(), "", {}});
  for (int c = 0; c < ncomp; ++c) {
    std::vector<size_t> sub;
    for (size_t m : members)
      if (comp[m] == c) sub.push_back(m);
    int child = build_equidistant(d, sub, out);
    out.nodes[me].children.push_back(child);
  }
  return me;
}

}  // namespace

EquidistantTree equidistant_tree_from_ultrametric(const DistanceMatrix& d) {
  d.check_valid();
  if (auto w = check_three_point_ultrametric(d))
    throw std::invalid_argument("three-point condition violated by (" + w->x +
                                "," + w->y + "," + w->z + ")");
  EquidistantTree t;
  std::vector<size_t> all(d.size());
  for (size_t i = 0; i < d.size(); ++i) all[i] = i;
  t.root = build_equidistant(d, all, t);
  return t;
}

namespace {

// Eligible picks at one step: leaves x adjacent to a vertex v that has another
// leaf neighbor, where the pendant weight of x is maximal at v.
std::vector<std::string> long_end_choices(const WeightedPhyloTree& t) {
  std::vector<std::string> out;
  for (VertexId v : t.graph().vertices()) {
    if (t.graph().degree(v) <= 1) continue;
    std::vector<VertexId> leaf_nb;
    for (VertexId u : t.graph().neighbors(v))
      if (t.graph().degree(u) <= 1) leaf_nb.push_back(u);
    if (leaf_nb.size() < 2) continue;
    Rational best = t.weight(make_edge(v, leaf_nb[0]));
    for (VertexId u : leaf_nb) best = std::max(best, t.weight(make_edge(v, u)));
    for (VertexId u : leaf_nb)
      if (t.weight(make_edge(v, u)) == best) out.push_back(*t.label(u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<std::string> compute_wcps(const WeightedPhyloTree& t,
                                      std::optional<std::uint64_t> seed) {
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  auto pick = [&](const std::vector<std::string>& options) {
    if (rng) return options[(*rng)() % options.size()];
    return options.front();
  };
  std::vector<std::string> reversed;
  WeightedPhyloTree cur = t;
  while (cur.leaf_count() > 2) {
    auto options = long_end_choices(cur);
    std::string x = pick(options);
    reversed.push_back(x);
    cur = remove_leaf(cur, x);
  }
  auto last = cur.leaf_labels();
  if (rng && (*rng)() % 2) std::swap(last[0], last[1]);
  reversed.push_back(last[1]);
  reversed.push_back(last[0]);
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

bool is_wcps(const WeightedPhyloTree& t, const std::vector<std::string>& seq) {
  auto labels = t.leaf_labels();
  std::vector<std::string> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != labels) throw std::invalid_argument("not a permutation of the leaf set");
  std::vector<WeightedPhyloTree> prefixes{t};  // prefixes[k] is t on seq[0..n-1-k]
  for (size_t k = seq.size(); k > 3; --k)
    prefixes.push_back(remove_leaf(prefixes.back(), seq[k - 1]));
  for (size_t i = 3; i <= seq.size(); ++i) {
    const WeightedPhyloTree& ti = prefixes[seq.size() - i];
    VertexId xi = ti.leaf_by_label(seq[i - 1]);
    VertexId v = *ti.graph().neighbors(xi).begin();
    Rational mine = ti.weight(make_edge(v, xi));
    bool in_cherry = false;
    bool longest = true;
    for (VertexId u : ti.graph().neighbors(v)) {
      if (u == xi || ti.graph().degree(u) > 1) continue;
      in_cherry = true;
      if (ti.weight(make_edge(v, u)) > mine) longest = false;
    }
    if (!in_cherry || !longest) return false;
  }
  return true;
}

namespace {

std::string tree_canon(const WeightedPhyloTree& t, VertexId v, VertexId parent) {
  std::vector<std::string> parts;
  for (VertexId u : t.graph().neighbors(v)) {
    if (u == parent) continue;
    parts.push_back(t.weight(make_edge(v, u)).str() + ":" +
                    tree_canon(t, u, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  if (const std::string* l = t.label(v)) s += *l;
  for (const auto& p : parts) {
    s += '|';
    s += p;
  }
  s += ')';
  return s;
}

}  // namespace

std::string tree_canonical_form(const WeightedPhyloTree& t) {
  // Root at the smallest leaf label; a label-preserving isomorphism must map
  // that vertex to itself.
  VertexId root = t.leaf_by_label(t.leaf_labels().front());
  return tree_canon(t, root, -1);
}

}  // namespace arboreal
