#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pforest/error.hpp"
#include "pforest/forest.hpp"
#include "pforest/graph.hpp"
#include "pforest/matching.hpp"

namespace pforest {

/// One vertex block X_u of the gadget graph.
struct GadgetBlock {
  Vertex start = 0;
  std::size_t length = 0;
  Vertex y = 0;                     ///< the distinguished vertex y_u, always `start`
  std::vector<Edge> internal_pairs;  ///< k-1 disjoint edges covering X_u \ {y_u}
};

/// Correspondence between a digraph of order n = 2k and its matching gadget.
///
/// Block u occupies gadget vertices [u(2k-1), (u+1)(2k-1)); y_u is the first
/// vertex of its block and the internal pairs are consecutive vertices after it.
class GadgetCorrespondence {
 public:
  GadgetCorrespondence() = default;

  explicit GadgetCorrespondence(std::size_t source_order) : n_(source_order), k_(source_order / 2) {
    const std::size_t len = 2 * k_ - 1;
    blocks_.reserve(n_);
    for (Vertex u = 0; u < n_; ++u) {
      GadgetBlock b;
      b.start = u * len;
      b.length = len;
      b.y = b.start;
      for (std::size_t i = 0; i + 1 < k_; ++i) {
        b.internal_pairs.push_back({b.start + 1 + 2 * i, b.start + 2 + 2 * i});
      }
      blocks_.push_back(std::move(b));
    }
  }

  std::size_t source_order() const { return n_; }
  std::size_t half_order() const { return k_; }
  std::size_t block_length() const { return n_ == 0 ? 0 : 2 * k_ - 1; }
  std::size_t gadget_order() const { return n_ * block_length(); }

  const std::vector<GadgetBlock>& blocks() const { return blocks_; }
  const GadgetBlock& block(Vertex u) const { return blocks_[u]; }
  Vertex y(Vertex u) const { return blocks_[u].y; }

  /// Source vertex whose block contains gadget vertex `x`.
  Vertex owner(Vertex x) const { return x / block_length(); }

  /// Gadget edges {x, y_v} for x in X_u, for the arc (u, v).
  std::vector<Edge> arc_edges(const Arc& a) const {
    std::vector<Edge> out;
    const GadgetBlock& b = blocks_[a.tail];
    for (Vertex x = b.start; x < b.start + b.length; ++x) out.push_back(make_edge(x, y(a.head)));
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<GadgetBlock> blocks_;
};

struct Gadget {
  UGraph graph;
  GadgetCorrespondence correspondence;
};

/// Undirected graph whose perfect matchings correspond to weak perfect out-forests of `d`.
///
/// An antiparallel pair (u,v),(v,u) contributes the edge {y_u, y_v} twice; it is
/// stored once.
inline Gadget build_gadget(const Digraph& d) {
  const std::size_t n = d.order();
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::OddOrder, "gadget needs an even order n >= 2, got " + std::to_string(n));
  GadgetCorrespondence c(n);
  std::vector<Edge> edges;
  for (const GadgetBlock& b : c.blocks()) {
    edges.insert(edges.end(), b.internal_pairs.begin(), b.internal_pairs.end());
  }
  for (const Arc& a : d.arcs()) {
    for (const Edge& e : c.arc_edges(a)) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {UGraph(c.gadget_order(), std::move(edges)), std::move(c)};
}

/// Arc set with in-degree at most one per vertex; may contain directed cycles.
class ArcSet {
 public:
  ArcSet(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    std::vector<bool> has_parent(n_, false);
    for (const Arc& a : arcs_) {
      if (a.tail >= n_ || a.head >= n_ || a.tail == a.head) throw Error(ErrorCode::ContractViolation, "bad arc in arc set");
      if (has_parent[a.head]) {
        throw Error(ErrorCode::ContractViolation, "vertex " + std::to_string(a.head) + " has in-degree > 1");
      }
      has_parent[a.head] = true;
    }
  }

  std::size_t order() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::size_t incident_count(Vertex v) const {
    return static_cast<std::size_t>(
        std::count_if(arcs_.begin(), arcs_.end(), [v](const Arc& a) { return a.tail == v || a.head == v; }));
  }

 private:
  std::size_t n_;
  std::vector<Arc> arcs_;
};

/// Reads off the arcs selected by a perfect matching of the gadget.
///
/// A matched edge {x, y_v} with x in X_u selects (u, v). The edge {y_u, y_v}
/// is ambiguous when both (u,v) and (v,u) are arcs; the lower index is then
/// taken as the tail.
inline ArcSet matching_to_arcset(const Digraph& d, const Matching& m, const GadgetCorrespondence& c) {
  if (c.source_order() != d.order() || m.order() != c.gadget_order() || !m.is_perfect()) {
    throw Error(ErrorCode::NotPerfectMatching, "matching is not a perfect matching of this gadget");
  }
  std::vector<Arc> arcs;
  for (const Edge& e : m.edges()) {
    const Vertex ou = c.owner(e.u);
    const Vertex ov = c.owner(e.v);
    if (ou == ov) {
      const auto& pairs = c.block(ou).internal_pairs;
      if (std::find(pairs.begin(), pairs.end(), e) == pairs.end()) {
        throw Error(ErrorCode::NotPerfectMatching, "edge inside a block is not an internal pair");
      }
      continue;
    }
    const bool forward = e.v == c.y(ov) && d.has_arc(ou, ov);   // x = e.u in X_ou, y_ov
    const bool backward = e.u == c.y(ou) && d.has_arc(ov, ou);  // x = e.v in X_ov, y_ou
    if (forward && backward) {
      arcs.push_back(ou < ov ? Arc{ou, ov} : Arc{ov, ou});
    } else if (forward) {
      arcs.push_back({ou, ov});
    } else if (backward) {
      arcs.push_back({ov, ou});
    } else {
      throw Error(ErrorCode::NotPerfectMatching, "matched edge is not a gadget edge");
    }
  }
  return ArcSet(d.order(), std::move(arcs));
}

/// Deletes every directed cycle of an in-degree <= 1 arc set.
///
/// Requires every vertex to be incident to an odd number of arcs; the result
/// is then a weak perfect out-forest. Cycles are vertex-disjoint and are
/// removed in ascending order of their minimum vertex.
inline OutForest remove_cycles(const ArcSet& f) {
  const std::size_t n = f.order();
  std::vector<std::size_t> incident(n, 0);
  std::vector<Vertex> parent(n, kNoVertex);
  for (const Arc& a : f.arcs()) {
    ++incident[a.tail];
    ++incident[a.head];
    parent[a.head] = a.tail;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (incident[v] % 2 == 0) {
      throw Error(ErrorCode::ContractViolation, "vertex " + std::to_string(v) + " is incident to an even number of arcs");
    }
  }

  // Functional-graph cycle search along parent pointers.
  constexpr std::size_t kFresh = kNoVertex;
  std::vector<std::size_t> walk_of(n, kFresh);
  std::vector<std::vector<Vertex>> cycles;
  for (Vertex start = 0; start < n; ++start) {
    if (walk_of[start] != kFresh) continue;
    Vertex v = start;
    while (v != kNoVertex && walk_of[v] == kFresh) {
      walk_of[v] = start;
      v = parent[v];
    }
    if (v == kNoVertex || walk_of[v] != start) continue;
    std::vector<Vertex> cycle{v};
    for (Vertex w = parent[v]; w != v; w = parent[w]) cycle.push_back(w);
    cycles.push_back(std::move(cycle));
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  for (const auto& cycle : cycles) {
    for (Vertex w : cycle) parent[w] = kNoVertex;
  }
  return OutForest(std::move(parent));
}

/// Perfect matching of the gadget encoding a weak perfect out-forest.
///
/// A root routes its first out-arc through y_u; every other out-arc uses the
/// next internal vertex of X_u, so used internal vertices always fill whole
/// pairs and the untouched pairs match among themselves.
inline Matching forest_to_matching(const Digraph& d, const OutForest& f, const GadgetCorrespondence& c) {
  if (c.source_order() != d.order()) throw Error(ErrorCode::ContractViolation, "correspondence does not match digraph");
  auto report = verify(d, f, ForestKind::WeakPerfect);
  if (!report.passed()) {
    throw Error(ErrorCode::NotWeakPerfect, "forest violates rule '" + report.violations.front().rule + "'");
  }
  const std::size_t n = d.order();
  std::vector<Vertex> cursor(n);
  std::vector<bool> y_taken(n, false);
  for (Vertex u = 0; u < n; ++u) cursor[u] = c.block(u).start + 1;

  std::vector<Edge> edges;
  for (const Arc& a : f.arcs()) {
    const GadgetBlock& b = c.block(a.tail);
    Vertex x;
    if (f.is_root(a.tail) && !y_taken[a.tail]) {
      x = b.y;
      y_taken[a.tail] = true;
    } else {
      if (cursor[a.tail] >= b.start + b.length) {
        throw Error(ErrorCode::ContractViolation, "block of " + std::to_string(a.tail) + " exhausted");
      }
      x = cursor[a.tail]++;
    }
    edges.push_back(make_edge(x, c.y(a.head)));
  }
  for (Vertex u = 0; u < n; ++u) {
    const GadgetBlock& b = c.block(u);
    if ((cursor[u] - (b.start + 1)) % 2 != 0) {
      throw Error(ErrorCode::ContractViolation, "block of " + std::to_string(u) + " left a half-used pair");
    }
    for (const Edge& pair : b.internal_pairs) {
      if (pair.u >= cursor[u]) edges.push_back(pair);
    }
  }
  return Matching(c.gadget_order(), std::move(edges));
}

/// Polynomial decision for weak perfect out-forests via the matching gadget.
///
/// Returns a witness forest, or nothing when n is odd (or below 2) or the
/// gadget has no perfect matching. Connectivity of `d` is not required.
inline std::optional<OutForest> decide_weak(const Digraph& d) {
  if (d.order() < 2 || d.order() % 2 != 0) return std::nullopt;
  Gadget gadget = build_gadget(d);
  Matching m = maximum_matching(gadget.graph);
  if (!m.is_perfect()) return std::nullopt;
  return remove_cycles(matching_to_arcset(d, m, gadget.correspondence));
}

/// Sidecar text for a gadget: "block u start len y_index" lines, then "pair a b" lines.
inline std::string to_correspondence_text(const GadgetCorrespondence& c) {
  std::ostringstream out;
  out << "# gadget correspondence: n=" << c.source_order() << " k=" << c.half_order() << '\n';
  for (Vertex u = 0; u < c.source_order(); ++u) {
    const GadgetBlock& b = c.block(u);
    out << "block " << u << ' ' << b.start << ' ' << b.length << ' ' << b.y << '\n';
  }
  for (const GadgetBlock& b : c.blocks()) {
    for (const Edge& p : b.internal_pairs) out << "pair " << p.u << ' ' << p.v << '\n';
  }
  return out.str();
}

}  // namespace pforest
