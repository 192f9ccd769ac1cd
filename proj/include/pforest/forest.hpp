#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pforest/connectivity.hpp"
#include "pforest/error.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// Spanning out-forest stored as a parent array (kNoVertex marks a root).
///
/// Immutable; tree ids, depths and children are computed on construction.
/// Trees are numbered by ascending root index.
class OutForest {
 public:
  OutForest() = default;

  explicit OutForest(std::vector<Vertex> parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    for (Vertex v = 0; v < n; ++v) {
      if (parent_[v] == kNoVertex) continue;
      if (parent_[v] >= n) throw Error(ErrorCode::InvalidForest, "parent of " + std::to_string(v) + " out of range");
      if (parent_[v] == v) throw Error(ErrorCode::InvalidForest, "vertex " + std::to_string(v) + " is its own parent");
    }
    tree_id_.assign(n, kNoVertex);
    depth_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (parent_[v] == kNoVertex) roots_.push_back(v);
    }
    for (std::size_t t = 0; t < roots_.size(); ++t) tree_id_[roots_[t]] = t;
    // Resolve each vertex by walking up to the first resolved ancestor.
    std::vector<Vertex> chain;
    for (Vertex v = 0; v < n; ++v) {
      chain.clear();
      Vertex w = v;
      while (tree_id_[w] == kNoVertex) {
        chain.push_back(w);
        w = parent_[w];
        if (chain.size() > n) throw Error(ErrorCode::InvalidForest, "parent relation has a cycle through " + std::to_string(v));
      }
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        tree_id_[*it] = tree_id_[parent_[*it]];
        depth_[*it] = depth_[parent_[*it]] + 1;
      }
    }
    std::vector<std::pair<Vertex, Vertex>> child_pairs;
    for (Vertex v = 0; v < n; ++v) {
      if (parent_[v] != kNoVertex) child_pairs.emplace_back(parent_[v], v);
    }
    children_ = detail::Csr::build(n, child_pairs, [](const auto& p) { return p.first; },
                                   [](const auto& p) { return p.second; });
    tree_order_.assign(roots_.size(), 0);
    for (Vertex v = 0; v < n; ++v) ++tree_order_[tree_id_[v]];
  }

  /// Builds a forest from an arc set; throws InvalidForest on in-degree > 1 or a cycle.
  static OutForest from_arcs(std::size_t n, std::span<const Arc> arcs) {
    std::vector<Vertex> parent(n, kNoVertex);
    for (const Arc& a : arcs) {
      if (a.tail >= n || a.head >= n) throw Error(ErrorCode::InvalidForest, "arc endpoint out of range");
      if (parent[a.head] != kNoVertex) {
        throw Error(ErrorCode::InvalidForest, "vertex " + std::to_string(a.head) + " has in-degree > 1");
      }
      parent[a.head] = a.tail;
    }
    return OutForest(std::move(parent));
  }

  static OutForest from_tree(const OutTree& t) {
    std::vector<Vertex> parent(t.universe(), kNoVertex);
    for (const auto& [child, par] : t.parents()) parent[child] = par;
    return OutForest(std::move(parent));
  }

  std::size_t order() const { return parent_.size(); }
  const std::vector<Vertex>& parents() const { return parent_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  bool is_root(Vertex v) const { return parent_[v] == kNoVertex; }
  std::size_t tree_id(Vertex v) const { return tree_id_[v]; }
  std::size_t depth(Vertex v) const { return depth_[v]; }
  std::size_t tree_count() const { return roots_.size(); }
  const std::vector<Vertex>& roots() const { return roots_; }
  std::size_t tree_order(std::size_t tree) const { return tree_order_[tree]; }
  std::span<const Vertex> children(Vertex v) const { return children_.row(v); }
  std::size_t arc_count() const { return order() - tree_count(); }

  std::size_t underlying_degree(Vertex v) const {
    return children_.row(v).size() + (is_root(v) ? 0 : 1);
  }

  bool has_arc(const Arc& a) const { return a.head < order() && parent_[a.head] == a.tail; }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count());
    for (Vertex v = 0; v < order(); ++v) {
      if (!is_root(v)) out.push_back({parent_[v], v});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Vertex> tree_vertices(std::size_t tree) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < order(); ++v) {
      if (tree_id_[v] == tree) out.push_back(v);
    }
    return out;
  }

  /// True iff `a` lies strictly above `b` in the same tree.
  bool is_proper_ancestor(Vertex a, Vertex b) const {
    if (a == b || tree_id_[a] != tree_id_[b] || depth_[a] >= depth_[b]) return false;
    while (depth_[b] > depth_[a]) b = parent_[b];
    return a == b;
  }

  /// Forest arcs on the underlying tree path between `u` and `v` (same tree required).
  std::vector<Arc> tree_path_arcs(Vertex u, Vertex v) const {
    if (tree_id_[u] != tree_id_[v]) {
      throw Error(ErrorCode::ContractViolation, "vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                                    " lie in different trees");
    }
    std::vector<Arc> path;
    while (u != v) {
      if (depth_[u] >= depth_[v]) {
        path.push_back({parent_[u], u});
        u = parent_[u];
      } else {
        path.push_back({parent_[v], v});
        v = parent_[v];
      }
    }
    return path;
  }

  friend bool operator==(const OutForest& a, const OutForest& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> tree_id_;
  std::vector<std::size_t> depth_;
  std::vector<Vertex> roots_;
  std::vector<std::size_t> tree_order_;
  detail::Csr children_;
};

// ---------------------------------------------------------------------------
// Arc taxonomy

enum class ArcClass { TreeArc, BackwardArc, ForwardArc, CrossArc, InterTreeArc };

inline const char* to_string(ArcClass c) {
  switch (c) {
    case ArcClass::TreeArc: return "TreeArc";
    case ArcClass::BackwardArc: return "BackwardArc";
    case ArcClass::ForwardArc: return "ForwardArc";
    case ArcClass::CrossArc: return "CrossArc";
    case ArcClass::InterTreeArc: return "InterTreeArc";
  }
  return "Unknown";
}

/// Classifies an arc of `d` relative to `f`, which must have the same order.
inline ArcClass classify_arc(const Digraph& d, const OutForest& f, const Arc& a) {
  if (!d.has_arc(a)) {
    throw Error(ErrorCode::ArcNotInDigraph,
                "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") is not an arc");
  }
  if (f.order() != d.order()) throw Error(ErrorCode::ContractViolation, "forest and digraph differ in order");
  if (f.has_arc(a)) return ArcClass::TreeArc;
  if (f.tree_id(a.tail) != f.tree_id(a.head)) return ArcClass::InterTreeArc;
  if (f.is_proper_ancestor(a.head, a.tail)) return ArcClass::BackwardArc;
  if (f.is_proper_ancestor(a.tail, a.head)) return ArcClass::ForwardArc;
  return ArcClass::CrossArc;
}

// ---------------------------------------------------------------------------
// Verification

enum class ForestKind { Perfect, AlmostPerfect, WeakPerfect, Even };

inline const char* to_string(ForestKind k) {
  switch (k) {
    case ForestKind::Perfect: return "perfect";
    case ForestKind::AlmostPerfect: return "almost-perfect";
    case ForestKind::WeakPerfect: return "weak-perfect";
    case ForestKind::Even: return "even";
  }
  return "unknown";
}

inline std::optional<ForestKind> parse_forest_kind(std::string_view name) {
  for (auto k : {ForestKind::Perfect, ForestKind::AlmostPerfect, ForestKind::WeakPerfect, ForestKind::Even}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

/// Rule identifiers reported by `verify`.
namespace rules {
inline constexpr std::string_view kOrderMismatch = "order-mismatch";
inline constexpr std::string_view kArcNotInDigraph = "arc-not-in-digraph";
inline constexpr std::string_view kEvenDegree = "even-degree";
inline constexpr std::string_view kNonInducedTree = "non-induced-tree";
inline constexpr std::string_view kForwardArc = "forward-arc";
inline constexpr std::string_view kCrossArc = "cross-arc";
inline constexpr std::string_view kOddOrderTree = "odd-order-tree";
}  // namespace rules

struct Violation {
  std::string rule;
  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;
};

struct VerificationReport {
  ForestKind kind = ForestKind::WeakPerfect;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  bool has_rule(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
  }
};

/// Checks `f` against the definition of `kind` and collects every violation.
inline VerificationReport verify(const Digraph& d, const OutForest& f, ForestKind kind) {
  VerificationReport report{kind, {}};
  auto add = [&](std::string_view rule, std::vector<Vertex> vs, std::vector<Arc> as) {
    report.violations.push_back({std::string(rule), std::move(vs), std::move(as)});
  };
  if (f.order() != d.order()) {
    add(rules::kOrderMismatch, {}, {});
    return report;
  }
  for (const Arc& a : f.arcs()) {
    if (!d.has_arc(a)) add(rules::kArcNotInDigraph, {}, {a});
  }

  if (kind == ForestKind::Even) {
    for (std::size_t t = 0; t < f.tree_count(); ++t) {
      if (f.tree_order(t) % 2 != 0) add(rules::kOddOrderTree, f.tree_vertices(t), {});
    }
    return report;
  }

  for (Vertex v = 0; v < f.order(); ++v) {
    if (f.underlying_degree(v) % 2 == 0) add(rules::kEvenDegree, {v}, {});
  }

  if (kind == ForestKind::Perfect) {
    for (const Arc& a : d.arcs()) {
      if (!f.has_arc(a) && f.tree_id(a.tail) == f.tree_id(a.head)) add(rules::kNonInducedTree, {}, {a});
    }
  } else if (kind == ForestKind::AlmostPerfect) {
    for (const Arc& a : d.arcs()) {
      ArcClass c = classify_arc(d, f, a);
      if (c == ArcClass::ForwardArc) add(rules::kForwardArc, {}, {a});
      if (c == ArcClass::CrossArc) add(rules::kCrossArc, {}, {a});
    }
  }
  return report;
}

/// Underlying edge set of an almost perfect out-forest of `bidirect(g)`.
///
/// In a bidirected digraph a backward arc would pair with a forward arc, so the
/// trees are induced and the result is a perfect forest of `g`.
inline std::vector<Edge> extract_perfect_forest(const UGraph& g, const OutForest& f) {
  auto report = verify(bidirect(g), f, ForestKind::AlmostPerfect);
  if (!report.passed()) {
    throw Error(ErrorCode::NotAlmostPerfect, "forest violates rule '" + report.violations.front().rule + "'");
  }
  std::vector<Edge> edges;
  for (const Arc& a : f.arcs()) edges.push_back(make_edge(a.tail, a.head));
  std::sort(edges.begin(), edges.end());
  return edges;
}

// ---------------------------------------------------------------------------
// Forest text format: one line per vertex, either "root v" or "child parent".

inline std::string to_forest_text(const OutForest& f) {
  std::ostringstream out;
  out << "# out-forest: " << f.order() << " vertices, " << f.tree_count() << " trees\n";
  for (Vertex v = 0; v < f.order(); ++v) {
    if (f.is_root(v)) {
      out << "root " << v << '\n';
    } else {
      out << v << ' ' << f.parent(v) << '\n';
    }
  }
  return out.str();
}

/// Reads the forest text format; the order is the number of entries and every
/// vertex 0..n-1 must appear exactly once.
inline OutForest parse_forest(std::string_view text) {
  auto lines = detail::content_lines(text);
  const std::size_t n = lines.size();
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<bool> seen(n, false);
  for (const auto& line : lines) {
    Vertex v;
    Vertex p = kNoVertex;
    if (line.text.starts_with("root")) {
      detail::NumberedLine rest{line.number, line.text.substr(4)};
      v = detail::read_integers(rest, 1)[0];
    } else {
      auto xs = detail::read_integers(line, 2);
      v = xs[0];
      p = xs[1];
      if (p >= n) throw ParseError(ErrorCode::VertexOutOfRange, line.number, "parent out of range");
    }
    if (v >= n) throw ParseError(ErrorCode::VertexOutOfRange, line.number, "vertex out of range");
    if (seen[v]) throw ParseError(ErrorCode::DuplicateArc, line.number, "vertex " + std::to_string(v) + " listed twice");
    seen[v] = true;
    parent[v] = p;
  }
  return OutForest(std::move(parent));
}

}  // namespace pforest
