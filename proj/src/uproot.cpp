#include "arboreal/uproot.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace arboreal {

namespace {

// Common arc-length from v down to its descendant leaves; the intermediate
// networks are always ultrametric, which this asserts as it goes.
Rational height_below(const ArborealNetwork& n, VertexId v) {
  std::optional<Rational> h;
  std::vector<std::pair<VertexId, Rational>> stack{{v, Rational(0)}};
  while (!stack.empty()) {
    auto [a, len] = stack.back();
    stack.pop_back();
    if (n.outdegree(a) == 0) {
      if (h && *h != len)
        throw std::logic_error("intermediate network lost ultrametricity");
      h = len;
      continue;
    }
    for (const auto& [c, w] : n.children(a)) stack.push_back({c, len + w});
  }
  return *h;
}

}  // namespace

ArborealNetwork ultrametric_uprooting(
    const WeightedPhyloTree& t, std::optional<std::vector<std::string>> seq,
    const UprootOptions& options) {
  std::optional<std::mt19937_64> rng;
  if (options.random_choices) rng.emplace(*options.random_choices);

  std::vector<std::string> order;
  if (seq) {
    if (!is_wcps(t, *seq))
      throw std::invalid_argument("not a weighted cherry-picking sequence");
    order = *seq;
  } else {
    order = compute_wcps(t, options.random_choices
                                ? std::optional<std::uint64_t>((*rng)())
                                : std::nullopt);
  }
  size_t n_leaves = order.size();

  // restrictions of t to each prefix of the sequence
  std::vector<WeightedPhyloTree> prefix{t};
  for (size_t k = n_leaves; k > 2; --k)
    prefix.push_back(remove_leaf(prefix.back(), order[k - 1]));
  std::reverse(prefix.begin(), prefix.end());  // prefix[i] is t on order[0..i+1]

  ArborealNetwork net;
  std::map<std::string, VertexId> leaf_vertex;
  for (size_t i = 0; i < 2; ++i) {
    VertexId v = net.add_vertex();
    net.set_label(v, order[i]);
    leaf_vertex[order[i]] = v;
  }
  {
    const WeightedPhyloTree& t2 = prefix[0];
    Rational w = t2.weight(make_edge(t2.leaf_by_label(order[0]),
                                     t2.leaf_by_label(order[1])));
    VertexId root = net.add_vertex();
    net.add_arc(root, leaf_vertex[order[0]], w.half());
    net.add_arc(root, leaf_vertex[order[1]], w.half());
  }
  if (options.trace && options.trace->record_snapshots)
    options.trace->snapshots.push_back(net);

  for (size_t i = 3; i <= n_leaves; ++i) {
    const WeightedPhyloTree& ti = prefix[i - 2];
    VertexId xi_tree = ti.leaf_by_label(order[i - 1]);
    VertexId vi = *ti.graph().neighbors(xi_tree).begin();

    // a further leaf of the restricted tree adjacent to vi
    std::vector<std::string> eligible;
    for (VertexId u : ti.graph().neighbors(vi))
      if (u != xi_tree && ti.graph().degree(u) <= 1)
        eligible.push_back(*ti.label(u));
    if (eligible.empty())
      throw std::logic_error("sequence step has no cherry neighbor");
    std::sort(eligible.begin(), eligible.end());
    std::string x =
        rng ? eligible[(*rng)() % eligible.size()] : eligible.front();

    VertexId x_net = leaf_vertex.at(x);
    VertexId px = *net.parents(x_net).begin();
    Rational pendant = net.weight(px, x_net);
    Rational lam_x = ti.weight(make_edge(vi, ti.leaf_by_label(x)));

    VertexId v;
    bool entered_shorter = false;
    if (pendant > lam_x) {
      v = subdivide_arc(net, px, x_net, pendant - lam_x, lam_x);
      if (options.trace) ++options.trace->subdivide_below;
    } else if (pendant < lam_x) {
      entered_shorter = true;
      if (net.outdegree(px) != 2)
        throw std::logic_error("short pendant under a parent of outdegree != 2");
      VertexId u = -1;
      for (const auto& [c, _] : net.children(px))
        if (c != x_net) u = c;
      Rational across = pendant + net.weight(px, u);
      if (lam_x == across) {
        v = u;
      } else {
        v = subdivide_arc(net, px, u, lam_x - pendant, across - lam_x);
        if (!net.weight(v, u).is_positive())
          throw std::logic_error("nonpositive weight from subdivision");
      }
      if (options.trace) ++options.trace->other_side;
    } else {
      v = px;
      if (options.trace) ++options.trace->reuse_parent;
    }

    Rational lam_xi = ti.weight(make_edge(vi, xi_tree));
    Rational below = height_below(net, v);
    VertexId xi_net = net.add_vertex();
    net.set_label(xi_net, order[i - 1]);
    leaf_vertex[order[i - 1]] = xi_net;
    if (lam_xi == below) {
      if (entered_shorter)
        throw std::logic_error(
            "unreachable branch: short pendant followed by equal-length attach");
      net.add_arc(v, xi_net, lam_xi);
      if (options.trace) ++options.trace->attach_arc;
    } else {
      VertexId r = net.add_vertex();
      Rational rv = (lam_xi - below).half();
      Rational rxi = (lam_xi + below).half();
      if (!rv.is_positive() || !rxi.is_positive())
        throw std::logic_error("nonpositive root arc weight");
      net.add_arc(r, v, rv);
      net.add_arc(r, xi_net, rxi);
      if (options.trace) ++options.trace->attach_new_root;
    }
    if (options.trace && options.trace->record_snapshots)
      options.trace->snapshots.push_back(net);
  }
  return net;
}

bool is_weight_preserving_uprooting(const ArborealNetwork& n,
                                    const WeightedPhyloTree& t) {
  try {
    return tree_canonical_form(underlying_weighted_tree(n)) ==
           tree_canonical_form(t);
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::set<std::string> closest_leaves(const WeightedPhyloTree& t, VertexId v) {
  auto dist = distances_from(t, v);
  std::optional<Rational> best;
  for (VertexId leaf : t.leaves()) {
    if (!best || dist.at(leaf) < *best) best = dist.at(leaf);
  }
  std::set<std::string> out;
  for (VertexId leaf : t.leaves())
    if (dist.at(leaf) == *best) out.insert(*t.label(leaf));
  return out;
}

ArborealNetwork uprooting_via_orientation(const WeightedPhyloTree& t) {
  // Distances to the nearest leaf, and whether some closest leaf of v lies
  // beyond a given neighbor, decide each edge's fate.
  std::map<VertexId, std::map<VertexId, Rational>> dist;
  for (VertexId v : t.graph().vertices()) dist[v] = distances_from(t, v);
  std::map<VertexId, Rational> nearest;
  std::map<VertexId, std::set<VertexId>> closest;
  for (VertexId v : t.graph().vertices()) {
    std::optional<Rational> best;
    for (VertexId leaf : t.leaves())
      if (!best || dist[v].at(leaf) < *best) best = dist[v].at(leaf);
    nearest[v] = *best;
    for (VertexId leaf : t.leaves())
      if (dist[v].at(leaf) == *best) closest[v].insert(leaf);
  }
  // u lies on the path from v to leaf x iff d(v,x) = w(v,u) + d(u,x)
  auto through = [&](VertexId v, VertexId u, VertexId x) {
    return dist[v].at(x) == t.weight(make_edge(v, u)) + dist[u].at(x);
  };

  ArborealNetwork net;
  for (VertexId v : t.graph().vertices()) {
    net.add_vertex(v);
    if (const std::string* l = t.label(v)) net.set_label(v, *l);
  }
  for (Edge e : t.graph().edges()) {
    auto [u, v] = e;
    bool down_vu = false;  // some closest leaf of v lies through u
    for (VertexId x : closest[v])
      if (through(v, u, x)) down_vu = true;
    bool down_uv = false;
    for (VertexId y : closest[u])
      if (through(u, v, y)) down_uv = true;
    if (down_vu && down_uv)
      throw std::logic_error("edge oriented both ways by closest leaves");
    Rational w = t.weight(e);
    if (down_vu) {
      net.add_arc(v, u, w);
    } else if (down_uv) {
      net.add_arc(u, v, w);
    } else {
      VertexId r = net.add_vertex();
      Rational ru = (w + nearest[v] - nearest[u]).half();
      Rational rv = (w + nearest[u] - nearest[v]).half();
      if (!ru.is_positive() || !rv.is_positive())
        throw std::logic_error("nonpositive root arc weight in orientation");
      net.add_arc(r, u, ru);
      net.add_arc(r, v, rv);
    }
  }
  return net;
}

}  // namespace arboreal
