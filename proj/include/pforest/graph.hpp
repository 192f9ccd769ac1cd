#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pforest/error.hpp"

namespace pforest {

/// Vertices are dense indices 0..n-1.
using Vertex = std::size_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  auto operator<=>(const Arc&) const = default;
};

/// Undirected edge, always stored with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;

  bool touches(Vertex w) const { return u == w || v == w; }
  Vertex other(Vertex w) const { return w == u ? v : u; }
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::ostream& operator<<(std::ostream& os, const Arc& a) {
  return os << a.tail << "->" << a.head;
}
inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << e.u << "--" << e.v;
}

namespace detail {

// Compressed adjacency: neighbors of v are targets[offsets[v] .. offsets[v+1]).
struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> targets;

  Csr() : offsets(1, 0) {}

  template <typename PairRange, typename Key, typename Value>
  static Csr build(std::size_t n, const PairRange& pairs, Key key, Value value) {
    Csr csr;
    csr.offsets.assign(n + 1, 0);
    for (const auto& p : pairs) ++csr.offsets[key(p) + 1];
    for (std::size_t i = 0; i < n; ++i) csr.offsets[i + 1] += csr.offsets[i];
    csr.targets.resize(csr.offsets[n]);
    std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const auto& p : pairs) csr.targets[cursor[key(p)]++] = value(p);
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v]),
                csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v + 1]));
    }
    return csr;
  }

  std::span<const Vertex> row(Vertex v) const {
    return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
  bool contains(Vertex v, Vertex w) const {
    auto r = row(v);
    return std::binary_search(r.begin(), r.end(), w);
  }
};

}  // namespace detail

/// Simple digraph: no self-loops, no duplicate arcs; antiparallel pairs are allowed.
class Digraph {
 public:
  Digraph() = default;

  Digraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    for (const Arc& a : arcs_) {
      if (a.tail >= n_ || a.head >= n_) {
        throw Error(ErrorCode::VertexOutOfRange, "arc " + describe(a) + " with n=" + std::to_string(n_));
      }
      if (a.tail == a.head) throw Error(ErrorCode::SelfLoop, "arc " + describe(a));
    }
    std::sort(arcs_.begin(), arcs_.end());
    auto dup = std::adjacent_find(arcs_.begin(), arcs_.end());
    if (dup != arcs_.end()) throw Error(ErrorCode::DuplicateArc, "arc " + describe(*dup));
    out_ = detail::Csr::build(n_, arcs_, [](const Arc& a) { return a.tail; },
                              [](const Arc& a) { return a.head; });
    in_ = detail::Csr::build(n_, arcs_, [](const Arc& a) { return a.head; },
                             [](const Arc& a) { return a.tail; });
  }

  std::size_t order() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }

  /// Arcs in ascending (tail, head) order.
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_.row(v); }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_.row(v); }
  std::size_t out_degree(Vertex v) const { return out_.row(v).size(); }
  std::size_t in_degree(Vertex v) const { return in_.row(v).size(); }

  bool has_arc(Vertex tail, Vertex head) const {
    return tail < n_ && head < n_ && out_.contains(tail, head);
  }
  bool has_arc(const Arc& a) const { return has_arc(a.tail, a.head); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  static std::string describe(const Arc& a) {
    return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
  }

  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  detail::Csr out_;
  detail::Csr in_;
};

/// Simple undirected graph.
class UGraph {
 public:
  UGraph() = default;

  UGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u >= n_ || e.v >= n_) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} with n=" + std::to_string(n_));
      }
      if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "edge at vertex " + std::to_string(e.u));
      edges_.push_back(make_edge(e.u, e.v));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw Error(ErrorCode::DuplicateArc,
                  "edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");
    }
    std::vector<std::pair<Vertex, Vertex>> both;
    both.reserve(2 * edges_.size());
    for (const Edge& e : edges_) {
      both.emplace_back(e.u, e.v);
      both.emplace_back(e.v, e.u);
    }
    adj_ = detail::Csr::build(n_, both, [](const auto& p) { return p.first; },
                              [](const auto& p) { return p.second; });
  }

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.row(v); }
  std::size_t degree(Vertex v) const { return adj_.row(v).size(); }
  bool has_edge(Vertex a, Vertex b) const { return a < n_ && b < n_ && adj_.contains(a, b); }

  friend bool operator==(const UGraph& a, const UGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  detail::Csr adj_;
};

/// Forgets arc directions; antiparallel pairs collapse to one edge.
inline UGraph underlying_graph(const Digraph& d) {
  std::vector<Edge> edges;
  edges.reserve(d.arc_count());
  for (const Arc& a : d.arcs()) {
    if (a.tail < a.head || !d.has_arc(a.head, a.tail)) edges.push_back(make_edge(a.tail, a.head));
  }
  return UGraph(d.order(), std::move(edges));
}

/// Replaces every edge {x,y} by the arcs xy and yx.
inline Digraph bidirect(const UGraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    arcs.push_back({e.u, e.v});
    arcs.push_back({e.v, e.u});
  }
  return Digraph(g.order(), std::move(arcs));
}

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   # comment
//   n m
//   a b        (m lines; "tail head" for digraphs, "u v" for undirected graphs)
//
// Blank lines and lines starting with '#' are skipped but still counted for
// diagnostics.

namespace detail {

struct NumberedLine {
  std::size_t number;
  std::string_view text;
};

inline std::vector<NumberedLine> content_lines(std::string_view text) {
  std::vector<NumberedLine> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      lines.push_back({number, line.substr(first)});
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

/// Splits a line into exactly `count` unsigned integers, or throws MalformedLine.
inline std::vector<std::size_t> read_integers(const NumberedLine& line, std::size_t count) {
  std::vector<std::size_t> values;
  std::istringstream in{std::string(line.text)};
  std::string token;
  while (in >> token) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(ErrorCode::MalformedLine, line.number, "expected unsigned integer, got '" + token + "'");
    }
    try {
      values.push_back(static_cast<std::size_t>(std::stoull(token)));
    } catch (const std::out_of_range&) {
      throw ParseError(ErrorCode::MalformedLine, line.number, "integer out of range '" + token + "'");
    }
  }
  if (values.size() != count) {
    throw ParseError(ErrorCode::MalformedLine, line.number,
                     "expected " + std::to_string(count) + " integers, got " + std::to_string(values.size()));
  }
  return values;
}

struct RawEdgeList {
  std::size_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> pairs;
};

// `undirected` only changes what counts as a duplicate.
inline RawEdgeList read_edge_list(std::string_view text, bool undirected) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(ErrorCode::MalformedLine, 1, "missing header line 'n m'");
  auto header = read_integers(lines.front(), 2);
  RawEdgeList out;
  out.n = header[0];
  const std::size_t m = header[1];
  if (lines.size() - 1 != m) {
    std::size_t where = lines.size() - 1 > m ? lines[m + 1].number : lines.back().number + 1;
    throw ParseError(ErrorCode::CountMismatch, where,
                     "header declares " + std::to_string(m) + " entries, found " + std::to_string(lines.size() - 1));
  }
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto v = read_integers(lines[i], 2);
    if (v[0] >= out.n || v[1] >= out.n) {
      throw ParseError(ErrorCode::VertexOutOfRange, lines[i].number,
                       "vertex out of range for n=" + std::to_string(out.n));
    }
    if (v[0] == v[1]) throw ParseError(ErrorCode::SelfLoop, lines[i].number, "self-loop at " + std::to_string(v[0]));
    std::pair<Vertex, Vertex> key{v[0], v[1]};
    if (undirected && key.first > key.second) std::swap(key.first, key.second);
    auto it = std::lower_bound(seen.begin(), seen.end(), key);
    if (it != seen.end() && *it == key) {
      throw ParseError(ErrorCode::DuplicateArc, lines[i].number,
                       std::string(undirected ? "duplicate edge " : "duplicate arc ") + std::to_string(v[0]) + " " +
                           std::to_string(v[1]));
    }
    seen.insert(it, key);
    out.pairs.emplace_back(v[0], v[1]);
  }
  return out;
}

}  // namespace detail

inline Digraph parse_digraph(std::string_view text) {
  auto raw = detail::read_edge_list(text, false);
  std::vector<Arc> arcs;
  arcs.reserve(raw.pairs.size());
  for (auto [t, h] : raw.pairs) arcs.push_back({t, h});
  return Digraph(raw.n, std::move(arcs));
}

inline UGraph parse_ugraph(std::string_view text) {
  auto raw = detail::read_edge_list(text, true);
  std::vector<Edge> edges;
  edges.reserve(raw.pairs.size());
  for (auto [a, b] : raw.pairs) edges.push_back(make_edge(a, b));
  return UGraph(raw.n, std::move(edges));
}

inline std::string to_edge_list(const Digraph& d) {
  std::ostringstream out;
  out << d.order() << ' ' << d.arc_count() << '\n';
  for (const Arc& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
  return out.str();
}

inline std::string to_edge_list(const UGraph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace pforest
