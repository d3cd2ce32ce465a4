#include "arboreal/recognize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "arboreal/phylo.hpp"

namespace arboreal {

UndirectedGraph support_graph(const PartialDistance& d) {
  UndirectedGraph g;
  std::vector<VertexId> ids(d.size());
  for (size_t i = 0; i < d.size(); ++i) {
    ids[i] = g.add_vertex();
    g.set_label(ids[i], d.labels()[i]);
  }
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j)
      if (d.finite(i, j)) g.add_edge(ids[i], ids[j]);
  return g;
}

U1Result check_u1(const PartialDistance& d) {
  U1Result r;
  UndirectedGraph g = support_graph(d);
  if (!is_connected(g)) {
    // witness: first label against the first label it cannot reach
    std::set<VertexId> seen{0};
    std::vector<VertexId> stack{0};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : g.neighbors(v))
        if (seen.insert(u).second) stack.push_back(u);
    }
    for (VertexId v : g.vertices())
      if (!seen.count(v)) {
        r.disconnected = {*g.label(0), *g.label(v)};
        break;
      }
    return r;
  }
  auto cert = chordality_certificate(g);
  if (auto* cyc = std::get_if<InducedCycleWitness>(&cert)) {
    std::vector<std::string> labels;
    for (VertexId v : cyc->cycle) labels.push_back(*g.label(v));
    r.cycle = labels;
    return r;
  }
  r.pass = true;
  return r;
}

U2Result check_u2(const PartialDistance& d) {
  size_t n = d.size();
  const auto& L = d.labels();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      if (!d.finite(x, y)) continue;
      for (size_t z = 0; z < n; ++z) {
        if (z == x || z == y || !d.finite(x, z) || !d.finite(y, z)) continue;
        if (*d.at(x, y) > std::max(*d.at(x, z), *d.at(y, z)))
          return {false, std::array<std::string, 3>{L[x], L[y], L[z]}};
      }
    }
  return {true, std::nullopt};
}

U3Result check_u3(const PartialDistance& d) {
  size_t n = d.size();
  const auto& L = d.labels();
  // finite-adjacency rows as bitsets to keep the quadruple scan cheap
  size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> finite_bits(n * words, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && d.finite(i, j))
        finite_bits[i * words + j / 64] |= std::uint64_t(1) << (j % 64);
  auto fin = [&](size_t i, size_t j) {
    return (finite_bits[i * words + j / 64] >> (j % 64)) & 1;
  };
  std::vector<std::pair<size_t, size_t>> inf_pairs;
  for (size_t z = 0; z < n; ++z)
    for (size_t u = z + 1; u < n; ++u)
      if (!d.finite(z, u)) inf_pairs.push_back({z, u});
  // scanning finite pairs in label order first makes the returned witness the
  // lexicographically smallest violating tuple
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      if (!fin(x, y)) continue;
      const Rational& dxy = *d.at(x, y);
      for (auto [z, u] : inf_pairs) {
        if (z == x || z == y || u == x || u == y) continue;
        if (!fin(x, z) || !fin(x, u) || !fin(y, z) || !fin(y, u)) continue;
        Rational m = std::min(std::min(*d.at(x, z), *d.at(x, u)),
                              std::min(*d.at(y, z), *d.at(y, u)));
        if (!(dxy < m))
          return {false, std::array<std::string, 4>{L[x], L[y], L[z], L[u]}};
      }
    }
  return {true, std::nullopt};
}

RecognitionReport recognize(const PartialDistance& d) {
  d.check_valid();
  RecognitionReport r;
  r.u1 = check_u1(d);
  r.u2 = check_u2(d);
  r.u3 = check_u3(d);
  r.verdict = r.u1.pass && r.u2.pass && r.u3.pass;
  return r;
}

bool check_gem_free_consequence(const PartialDistance& d) {
  UndirectedGraph g = support_graph(d);
  return !find_induced_gem(g).has_value() && !find_induced_w5(g).has_value();
}

RecognitionFailure::RecognitionFailure(RecognitionReport r)
    : std::runtime_error("partial distance is not an arboreal ultrametric"),
      report(std::move(r)) {}

ArborealNetwork reconstruct(const PartialDistance& d) {
  RecognitionReport report = recognize(d);
  if (!report.verdict) throw RecognitionFailure(std::move(report));

  UndirectedGraph g = support_graph(d);
  auto cert = chordality_certificate(g);
  const auto& peo = std::get<PerfectEliminationOrdering>(cert);
  auto cliques = maximal_cliques_chordal(g, peo);

  // One network vertex per distinct leaf-cluster; the cluster's height is
  // half the largest pairwise distance inside it, so equal clusters agree on
  // height across cliques.
  using Cluster = std::set<std::string>;
  ArborealNetwork net;
  std::map<Cluster, VertexId> vertex_of;
  auto vertex_for = [&](const Cluster& c) {
    auto it = vertex_of.find(c);
    if (it != vertex_of.end()) return it->second;
    VertexId v = net.add_vertex();
    if (c.size() == 1) net.set_label(v, *c.begin());
    vertex_of.emplace(c, v);
    return v;
  };

  for (const auto& clique : cliques) {
    std::vector<std::string> members;
    for (VertexId v : clique) members.push_back(*g.label(v));
    std::sort(members.begin(), members.end());
    auto sub = to_distance_matrix(d.restricted(members));
    if (!sub)
      throw std::logic_error("clique of the support graph has an infinite entry");
    EquidistantTree tree = equidistant_tree_from_ultrametric(*sub);

    // clusters of each node, then arcs along the tree with height differences
    std::vector<Cluster> cluster(tree.nodes.size());
    std::vector<int> order;  // children before parents
    {
      std::vector<int> stack{tree.root};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int c : tree.nodes[v].children) stack.push_back(c);
      }
      std::reverse(order.begin(), order.end());
    }
    for (int v : order) {
      if (tree.nodes[v].children.empty()) {
        cluster[v] = {tree.nodes[v].label};
      } else {
        for (int c : tree.nodes[v].children)
          cluster[v].insert(cluster[c].begin(), cluster[c].end());
      }
    }
    for (int v : order) {
      VertexId nv = vertex_for(cluster[v]);
      for (int c : tree.nodes[v].children) {
        VertexId nc = vertex_for(cluster[c]);
        Rational w = tree.nodes[v].height - tree.nodes[c].height;
        if (net.has_arc(nv, nc)) {
          if (net.weight(nv, nc) != w)
            throw std::logic_error("conflicting arc weights while gluing cliques");
        } else {
          net.add_arc(nv, nc, w);
        }
      }
    }
  }

  // hard verification gate: structure, ultrametricity, and the exact distance
  ValidationReport vr = validate(net, true);
  if (!vr.ok)
    throw std::logic_error("reconstructed network fails validation: " + vr.message);
  if (is_ultrametric_network(net))
    throw std::logic_error("reconstructed network is not ultrametric");
  for (VertexId v : net.vertices())
    if (net.outdegree(v) == 1)
      throw std::logic_error("reconstructed network has an outdegree-1 vertex");
  PartialDistance back = induced_partial_distance(net);
  if (back.labels() != d.labels())
    throw std::logic_error("reconstructed network changed the label set");
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j)
      if (back.at(i, j) != d.at(i, j))
        throw std::logic_error("reconstructed network does not reproduce the input distance");
  return net;
}

bool restriction_is_arboreal(const PartialDistance& d,
                             const std::vector<std::string>& Y) {
  if (Y.size() < 2) throw std::invalid_argument("restriction needs two labels");
  UndirectedGraph g = support_graph(d);
  std::set<VertexId> keep;
  for (const auto& l : Y) {
    bool found = false;
    for (VertexId v : g.vertices())
      if (*g.label(v) == l) {
        keep.insert(v);
        found = true;
      }
    if (!found) throw std::invalid_argument("unknown label: " + l);
  }
  return is_connected(induced_subgraph(g, keep));
}

}  // namespace arboreal
