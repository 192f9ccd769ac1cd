#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pforest/connectivity.hpp"
#include "pforest/error.hpp"
#include "pforest/forest.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// Splits an even-order out-tree into a weak perfect out-forest using only its arcs.
///
/// Repeatedly takes the deepest vertex u (smallest index on ties) with parent v.
/// If v has another leaf child w (smallest index), the arcs vu and vw stay and
/// u, w are removed; otherwise u is v's only child, vu becomes a tree of its own
/// and u, v are removed. Vertices of the universe outside the tree stay roots.
inline OutForest even_tree_to_weak(const OutTree& t) {
  if (t.order() % 2 != 0) throw Error(ErrorCode::OddOrder, "out-tree has odd order " + std::to_string(t.order()));

  std::map<Vertex, std::size_t> depth;
  std::map<Vertex, std::set<Vertex>> children;
  for (Vertex v : t.vertices()) children[v];
  for (const auto& [child, par] : t.parents()) children[par].insert(child);
  std::vector<Vertex> order{t.root()};
  depth[t.root()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex c : children[order[i]]) {
      depth[c] = depth[order[i]] + 1;
      order.push_back(c);
    }
  }

  // Removing leaves or a (leaf, only-parent) pair never changes depths of what remains.
  auto deeper = [&](Vertex a, Vertex b) { return depth[a] != depth[b] ? depth[a] > depth[b] : a < b; };
  std::set<Vertex, decltype(deeper)> remaining(deeper);
  for (Vertex v : t.vertices()) remaining.insert(v);

  std::vector<Vertex> parent(t.universe(), kNoVertex);
  while (!remaining.empty()) {
    const Vertex u = *remaining.begin();
    const auto pu = t.parent_of(u);
    if (!pu) throw Error(ErrorCode::ContractViolation, "deepest remaining vertex is the root");
    const Vertex v = *pu;
    auto& siblings = children[v];
    std::optional<Vertex> leaf;
    for (Vertex w : siblings) {
      if (w != u && children[w].empty()) {
        leaf = w;
        break;
      }
    }
    siblings.erase(u);
    remaining.erase(u);
    parent[u] = v;
    if (leaf) {
      siblings.erase(*leaf);
      remaining.erase(*leaf);
      parent[*leaf] = v;
    } else {
      if (auto pv = t.parent_of(v)) children[*pv].erase(v);
      remaining.erase(v);
    }
  }
  return OutForest(std::move(parent));
}

struct SwapTrace {
  OutForest forest;
  std::vector<Arc> swapped_in;          ///< the forward/cross arc added at each step
  std::vector<std::size_t> arc_counts;  ///< forest arc count before the first and after every step
};

/// Rewrites a weak perfect out-forest until no forward or cross arc remains.
///
/// Each step takes the first forward/cross arc (u,v) in ascending (tail, head)
/// order, deletes the forest arcs on the tree path between u and v, and adds
/// (u,v). Odd degrees survive and the arc count drops every step.
inline SwapTrace weak_to_almost_traced(const Digraph& d, const OutForest& f) {
  auto report = verify(d, f, ForestKind::WeakPerfect);
  if (!report.passed()) {
    throw Error(ErrorCode::NotWeakPerfect, "forest violates rule '" + report.violations.front().rule + "'");
  }
  SwapTrace trace{f, {}, {f.arc_count()}};
  for (;;) {
    const OutForest& cur = trace.forest;
    std::optional<Arc> target;
    for (const Arc& a : d.arcs()) {
      ArcClass c = classify_arc(d, cur, a);
      if (c == ArcClass::ForwardArc || c == ArcClass::CrossArc) {
        target = a;
        break;
      }
    }
    if (!target) break;
    if (trace.swapped_in.size() > d.order()) {
      throw Error(ErrorCode::ContractViolation, "arc swapping did not terminate");
    }
    std::vector<Vertex> parent = cur.parents();
    for (const Arc& p : cur.tree_path_arcs(target->tail, target->head)) parent[p.head] = kNoVertex;
    parent[target->head] = target->tail;
    trace.forest = OutForest(std::move(parent));
    trace.swapped_in.push_back(*target);
    trace.arc_counts.push_back(trace.forest.arc_count());
  }
  return trace;
}

inline OutForest weak_to_almost(const Digraph& d, const OutForest& f) {
  return weak_to_almost_traced(d, f).forest;
}

/// Almost perfect out-forest of an even digraph with a single initial strong component.
///
/// spanning out-tree -> even_tree_to_weak -> weak_to_almost.
inline OutForest construct_for_single_initial(const Digraph& d) {
  ConnectivityClass cls = classify(d);
  if (cls != ConnectivityClass::StronglyConnectedEven && cls != ConnectivityClass::SingleInitialEven) {
    throw Error(ErrorCode::WrongClass, std::string("digraph is ") + to_string(cls));
  }
  const Vertex root = *find_universal_root(d);
  OutForest weak = even_tree_to_weak(spanning_out_tree(d, root));
  return weak_to_almost(d, weak);
}

/// Perfect forest of a connected even-order graph, or nothing if `g` is odd or disconnected.
inline std::optional<std::vector<Edge>> perfect_forest_undirected(const UGraph& g) {
  if (g.order() % 2 != 0) return std::nullopt;
  Digraph d = bidirect(g);
  if (classify(d) != ConnectivityClass::StronglyConnectedEven) return std::nullopt;
  return extract_perfect_forest(g, construct_for_single_initial(d));
}

}  // namespace pforest
