#include "arboreal/chordal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace arboreal {

namespace {

// Visit order maximizing the number of already-visited neighbors; the reverse
// of the visit order is a perfect elimination ordering iff the graph is
// chordal. Ties break on smallest id so runs are deterministic.
std::vector<VertexId> mcs_order(const UndirectedGraph& g) {
  auto vs = g.vertices();
  std::map<VertexId, int> weight;
  std::set<VertexId> unvisited;
  for (VertexId v : vs) {
    weight[v] = 0;
    unvisited.insert(v);
  }
  std::vector<VertexId> visit;
  visit.reserve(vs.size());
  while (!unvisited.empty()) {
    VertexId best = -1;
    int best_w = -1;
    for (VertexId v : unvisited) {
      if (weight[v] > best_w) {
        best_w = weight[v];
        best = v;
      }
    }
    unvisited.erase(best);
    visit.push_back(best);
    for (VertexId u : g.neighbors(best))
      if (unvisited.count(u)) ++weight[u];
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

// Shortest path from s to t inside the induced subgraph on `allowed`; empty
// when unreachable.
std::vector<VertexId> restricted_path(const UndirectedGraph& g, VertexId s,
                                      VertexId t,
                                      const std::set<VertexId>& allowed) {
  std::map<VertexId, VertexId> parent;
  std::deque<VertexId> queue{s};
  parent[s] = s;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (v == t) break;
    for (VertexId u : g.neighbors(v)) {
      if (!allowed.count(u) || parent.count(u)) continue;
      parent[u] = v;
      queue.push_back(u);
    }
  }
  if (!parent.count(t)) return {};
  std::vector<VertexId> path{t};
  while (path.back() != s) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Finds a chordless cycle of length >= 4 in a graph known to be non-chordal:
// for some vertex v with non-adjacent neighbors w,x, a shortest w-x path
// avoiding the rest of N[v] closes into an induced cycle through v.
InducedCycleWitness extract_induced_cycle(const UndirectedGraph& g) {
  auto vs = g.vertices();
  std::set<VertexId> all(vs.begin(), vs.end());
  for (VertexId v : vs) {
    const auto& nb = g.neighbors(v);
    for (auto wi = nb.begin(); wi != nb.end(); ++wi) {
      for (auto xi = std::next(wi); xi != nb.end(); ++xi) {
        if (g.has_edge(*wi, *xi)) continue;
        std::set<VertexId> allowed = all;
        allowed.erase(v);
        for (VertexId y : nb)
          if (y != *wi && y != *xi) allowed.erase(y);
        auto path = restricted_path(g, *wi, *xi, allowed);
        if (path.size() >= 3) {
          path.push_back(v);
          return InducedCycleWitness{path};
        }
      }
    }
  }
  throw std::logic_error("no induced cycle found in a non-chordal graph");
}

}  // namespace

bool verify_peo(const UndirectedGraph& g, const std::vector<VertexId>& order) {
  std::map<VertexId, int> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  if (pos.size() != g.vertex_count()) return false;
  for (VertexId v : g.vertices())
    if (!pos.count(v)) return false;
  for (VertexId v : order) {
    VertexId first = -1;
    int first_pos = static_cast<int>(order.size());
    for (VertexId u : g.neighbors(v)) {
      if (pos[u] > pos[v] && pos[u] < first_pos) {
        first_pos = pos[u];
        first = u;
      }
    }
    if (first == -1) continue;
    for (VertexId u : g.neighbors(v)) {
      if (pos[u] > pos[v] && u != first && !g.has_edge(first, u)) return false;
    }
  }
  return true;
}

ChordalityCertificate chordality_certificate(const UndirectedGraph& g) {
  auto order = mcs_order(g);
  if (verify_peo(g, order)) return PerfectEliminationOrdering{order};
  return extract_induced_cycle(g);
}

bool is_chordal(const UndirectedGraph& g) {
  return std::holds_alternative<PerfectEliminationOrdering>(
      chordality_certificate(g));
}

std::vector<std::set<VertexId>> maximal_cliques_chordal(
    const UndirectedGraph& g, const PerfectEliminationOrdering& peo) {
  if (!verify_peo(g, peo.order))
    throw std::invalid_argument("not a perfect elimination ordering");
  std::map<VertexId, int> pos;
  for (size_t i = 0; i < peo.order.size(); ++i)
    pos[peo.order[i]] = static_cast<int>(i);
  std::set<std::set<VertexId>> candidates;
  for (VertexId v : peo.order) {
    std::set<VertexId> c{v};
    for (VertexId u : g.neighbors(v))
      if (pos[u] > pos[v]) c.insert(u);
    candidates.insert(std::move(c));
  }
  std::vector<std::set<VertexId>> cliques;
  for (const auto& c : candidates) {
    bool strict_subset = false;
    for (const auto& other : candidates) {
      if (other.size() <= c.size()) continue;
      if (std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        strict_subset = true;
        break;
      }
    }
    if (!strict_subset) cliques.push_back(c);
  }
  return cliques;
}

std::optional<GemWitness> find_induced_gem(const UndirectedGraph& g) {
  // The apex of a gem is adjacent to the four path vertices, so enumerating
  // 4-subsets of each neighborhood is exhaustive. O(n^5) worst case, fine at
  // this scale.
  for (VertexId apex : g.vertices()) {
    const auto& nbset = g.neighbors(apex);
    if (nbset.size() < 4) continue;
    std::vector<VertexId> nb(nbset.begin(), nbset.end());
    size_t k = nb.size();
    for (size_t a = 0; a < k; ++a)
      for (size_t b = a + 1; b < k; ++b)
        for (size_t c = b + 1; c < k; ++c)
          for (size_t d = c + 1; d < k; ++d) {
            VertexId q[4] = {nb[a], nb[b], nb[c], nb[d]};
            // induced path on q: 3 edges, degree multiset {1,1,2,2}
            int deg[4] = {0, 0, 0, 0};
            int edges = 0;
            for (int i = 0; i < 4; ++i)
              for (int j = i + 1; j < 4; ++j)
                if (g.has_edge(q[i], q[j])) {
                  ++deg[i];
                  ++deg[j];
                  ++edges;
                }
            if (edges != 3) continue;
            int ones = 0, twos = 0;
            for (int i = 0; i < 4; ++i) {
              if (deg[i] == 1) ++ones;
              if (deg[i] == 2) ++twos;
            }
            if (ones != 2 || twos != 2) continue;  // would be a triangle+isolate
            // order the path from one endpoint
            std::vector<VertexId> path;
            for (int i = 0; i < 4 && path.empty(); ++i) {
              if (deg[i] != 1) continue;
              path.push_back(q[i]);
              while (path.size() < 4) {
                for (int j = 0; j < 4; ++j) {
                  VertexId cand = q[j];
                  if (std::find(path.begin(), path.end(), cand) != path.end())
                    continue;
                  if (g.has_edge(path.back(), cand)) {
                    path.push_back(cand);
                    break;
                  }
                }
              }
            }
            return GemWitness{apex, path};
          }
  }
  return std::nullopt;
}

std::optional<WheelWitness> find_induced_w5(const UndirectedGraph& g) {
  for (VertexId hub : g.vertices()) {
    const auto& nbset = g.neighbors(hub);
    if (nbset.size() < 4) continue;
    std::vector<VertexId> nb(nbset.begin(), nbset.end());
    size_t k = nb.size();
    for (size_t a = 0; a < k; ++a)
      for (size_t b = a + 1; b < k; ++b)
        for (size_t c = b + 1; c < k; ++c)
          for (size_t d = c + 1; d < k; ++d) {
            VertexId q[4] = {nb[a], nb[b], nb[c], nb[d]};
            int deg[4] = {0, 0, 0, 0};
            int edges = 0;
            for (int i = 0; i < 4; ++i)
              for (int j = i + 1; j < 4; ++j)
                if (g.has_edge(q[i], q[j])) {
                  ++deg[i];
                  ++deg[j];
                  ++edges;
                }
            if (edges != 4) continue;
            if (deg[0] != 2 || deg[1] != 2 || deg[2] != 2 || deg[3] != 2)
              continue;
            // induced 4-cycle: order it
            std::vector<VertexId> rim{q[0]};
            while (rim.size() < 4) {
              for (int j = 1; j < 4; ++j) {
                if (std::find(rim.begin(), rim.end(), q[j]) != rim.end())
                  continue;
                if (g.has_edge(rim.back(), q[j])) {
                  rim.push_back(q[j]);
                  break;
                }
              }
            }
            return WheelWitness{hub, rim};
          }
  }
  return std::nullopt;
}

PtolemaicResult is_ptolemaic(const UndirectedGraph& g) {
  PtolemaicResult result;
  auto cert = chordality_certificate(g);
  if (auto* cyc = std::get_if<InducedCycleWitness>(&cert)) {
    result.cycle = *cyc;
    return result;
  }
  if (auto gem = find_induced_gem(g)) {
    result.gem = *gem;
    return result;
  }
  result.ok = true;
  return result;
}

}  // namespace arboreal
