#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "pforest/error.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// A set of pairwise disjoint edges over the vertices 0..n-1.
class Matching {
 public:
  Matching() = default;

  Matching(std::size_t n, std::vector<Edge> edges) : mate_(n, kNoVertex) {
    edges_.reserve(edges.size());
    for (const Edge& raw : edges) {
      Edge e = make_edge(raw.u, raw.v);
      if (e.v >= n || e.u == e.v) throw Error(ErrorCode::InvalidMatching, "bad edge");
      if (mate_[e.u] != kNoVertex || mate_[e.v] != kNoVertex) {
        throw Error(ErrorCode::InvalidMatching,
                    "edges share an endpoint at {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
      }
      mate_[e.u] = e.v;
      mate_[e.v] = e.u;
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  /// As above, and additionally requires every edge to belong to `g`.
  static Matching in_graph(const UGraph& g, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
      if (!g.has_edge(e.u, e.v)) {
        throw Error(ErrorCode::InvalidMatching,
                    "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not an edge of the graph");
      }
    }
    return Matching(g.order(), std::move(edges));
  }

  std::size_t order() const { return mate_.size(); }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool covers(Vertex v) const { return mate_[v] != kNoVertex; }
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool is_perfect() const { return 2 * edges_.size() == mate_.size(); }

 private:
  std::vector<Edge> edges_;
  std::vector<Vertex> mate_;
};

namespace detail {

// Edmonds' blossom algorithm, O(V^3). Blossoms are contracted implicitly
// through `base_`; one BFS per exposed root.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const UGraph& g)
      : g_(g), n_(g.order()), mate_(n_, kNoVertex), parent_(n_), base_(n_), used_(n_), in_blossom_(n_) {}

  std::vector<Vertex> run() {
    greedy();
    for (Vertex root = 0; root < n_; ++root) {
      if (mate_[root] != kNoVertex) continue;
      Vertex end = find_augmenting_path(root);
      if (end != kNoVertex) augment(end);
    }
    return mate_;
  }

 private:
  void greedy() {
    for (Vertex v = 0; v < n_; ++v) {
      if (mate_[v] != kNoVertex) continue;
      for (Vertex w : g_.neighbors(v)) {
        if (mate_[w] == kNoVertex) {
          mate_[v] = w;
          mate_[w] = v;
          break;
        }
      }
    }
  }

  Vertex lca(Vertex a, Vertex b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (mate_[a] == kNoVertex) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = true;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  Vertex find_augmenting_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), kNoVertex);
    for (Vertex i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = true;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != kNoVertex && parent_[mate_[to]] != kNoVertex)) {
          Vertex b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (Vertex i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == kNoVertex) {
          parent_[to] = v;
          if (mate_[to] == kNoVertex) return to;
          used_[mate_[to]] = true;
          q.push(mate_[to]);
        }
      }
    }
    return kNoVertex;
  }

  void augment(Vertex v) {
    while (v != kNoVertex) {
      Vertex pv = parent_[v];
      Vertex next = mate_[pv];
      mate_[v] = pv;
      mate_[pv] = v;
      v = next;
    }
  }

  const UGraph& g_;
  std::size_t n_;
  std::vector<Vertex> mate_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> base_;
  std::vector<bool> used_;
  std::vector<bool> in_blossom_;
};

}  // namespace detail

/// Maximum-cardinality matching of a general graph.
inline Matching maximum_matching(const UGraph& g) {
  auto mate = detail::BlossomMatcher(g).run();
  std::vector<Edge> edges;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (mate[v] != kNoVertex && v < mate[v]) edges.push_back({v, mate[v]});
  }
  return Matching(g.order(), std::move(edges));
}

inline bool has_perfect_matching(const UGraph& g) {
  if (g.order() % 2 != 0) return false;
  return maximum_matching(g).is_perfect();
}

}  // namespace pforest
