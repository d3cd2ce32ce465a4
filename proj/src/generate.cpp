#include "arboreal/generate.hpp"

#include <map>
#include <stdexcept>

namespace arboreal {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  // rejection sampling keeps the draw unbiased and platform-stable
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::string leaf_name(int index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "x" + std::to_string(index + 1);
}

namespace {

Rational random_weight(std::mt19937_64& rng) {
  long long num = static_cast<long long>(bounded(rng, 20)) + 1;
  long long den = 1LL << bounded(rng, 3);
  return Rational(num, den);
}

}  // namespace

WeightedPhyloTree random_tree(int leaves, std::uint64_t seed) {
  if (leaves < 2) throw std::invalid_argument("need at least two leaves");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // topology first, weights on the final edge set
  UndirectedGraph g;
  VertexId a = g.add_vertex();
  VertexId b = g.add_vertex();
  g.set_label(a, leaf_name(0));
  g.set_label(b, leaf_name(1));
  g.add_edge(a, b);
  for (int i = 2; i < leaves; ++i) {
    std::vector<VertexId> internals;
    for (VertexId v : g.vertices())
      if (!g.label(v)) internals.push_back(v);
    VertexId attach;
    if (!internals.empty() && bounded(rng, 5) == 0) {
      attach = internals[bounded(rng, internals.size())];
    } else {
      auto edges = g.edges();
      Edge e = edges[bounded(rng, edges.size())];
      g.remove_edge(e.first, e.second);
      attach = g.add_vertex();
      g.add_edge(e.first, attach);
      g.add_edge(attach, e.second);
    }
    VertexId leaf = g.add_vertex();
    g.set_label(leaf, leaf_name(i));
    g.add_edge(attach, leaf);
  }
  std::map<Edge, Rational> w;
  for (Edge e : g.edges()) w[e] = random_weight(rng);
  return WeightedPhyloTree(std::move(g), std::move(w));
}

WeightedPhyloTree random_ultrametric_tree(int leaves, std::uint64_t seed) {
  if (leaves < 2) throw std::invalid_argument("need at least two leaves");
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  // rooted equidistant tree by recursive partition; heights in quarter units,
  // kept large enough that every subtree has room for strictly decreasing
  // positive levels
  UndirectedGraph g;
  std::map<Edge, Rational> w;
  VertexId root = g.add_vertex();
  std::vector<int> all(leaves);
  for (int i = 0; i < leaves; ++i) all[i] = i;
  auto split = [&](const std::vector<int>& members, VertexId vertex,
                   long long h4, auto&& self) -> void {
    if (members.size() == 1) {
      g.set_label(vertex, leaf_name(members[0]));
      return;
    }
    size_t groups = 2;
    if (members.size() > 2 && bounded(rng, 4) == 0) groups = 3;
    groups = std::min(groups, members.size());
    std::vector<std::vector<int>> parts(groups);
    std::vector<int> shuffled = members;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[bounded(rng, i)]);
    for (size_t i = 0; i < shuffled.size(); ++i)
      parts[i < groups ? i : bounded(rng, groups)].push_back(shuffled[i]);
    for (auto& part : parts) {
      long long child_h4 = 0;
      if (part.size() > 1) {
        // invariant: h4 >= |members| - 1, so the range below is nonempty
        long long lo = static_cast<long long>(part.size()) - 1;
        child_h4 = lo + static_cast<long long>(bounded(rng, h4 - lo));
      }
      VertexId child = g.add_vertex();
      g.add_edge(vertex, child);
      w[make_edge(vertex, child)] = Rational(h4 - child_h4, 4);
      self(part, child, child_h4, self);
    }
  };
  long long top = 8LL * leaves + static_cast<long long>(bounded(rng, 8 * leaves));
  split(all, root, top, split);
  // unroot: suppress the root when it has degree 2
  if (g.degree(root) == 2) {
    auto nb = g.neighbors(root);
    auto it = nb.begin();
    VertexId x = *it++;
    VertexId y = *it;
    Rational sum = w.at(make_edge(root, x)) + w.at(make_edge(root, y));
    w.erase(make_edge(root, x));
    w.erase(make_edge(root, y));
    g.remove_vertex(root);
    g.add_edge(x, y);
    w[make_edge(x, y)] = sum;
  }
  return WeightedPhyloTree(std::move(g), std::move(w));
}

}  // namespace arboreal
