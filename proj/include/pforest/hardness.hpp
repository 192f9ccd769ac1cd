#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pforest/error.hpp"
#include "pforest/forest.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// A hyperedge of a 3-dimensional matching instance, as class-local indices.
struct Triple {
  std::size_t a = 0;  ///< index into V1
  std::size_t b = 0;  ///< index into V2
  std::size_t c = 0;  ///< index into V3

  auto operator<=>(const Triple&) const = default;
  std::size_t at(std::size_t cls) const { return cls == 0 ? a : cls == 1 ? b : c; }
};

/// 3DM instance with classes of size k and distinct triples.
class ThreeDMInstance {
 public:
  ThreeDMInstance(std::size_t k, std::vector<Triple> triples) : k_(k), triples_(std::move(triples)) {
    if (k_ == 0) throw Error(ErrorCode::InvalidInstance, "class size k must be positive");
    if (triples_.empty()) throw Error(ErrorCode::InvalidInstance, "instance needs at least one triple");
    for (const Triple& t : triples_) {
      if (t.a >= k_ || t.b >= k_ || t.c >= k_) throw Error(ErrorCode::InvalidInstance, "triple index out of range");
    }
    auto sorted = triples_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidInstance, "duplicate triple");
    }
  }

  std::size_t k() const { return k_; }
  std::size_t m() const { return triples_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }

  /// True iff `sol` is k distinct triples of the instance covering every class vertex once.
  bool is_perfect_matching(const std::vector<Triple>& sol) const {
    if (sol.size() != k_) return false;
    std::array<std::vector<bool>, 3> used{std::vector<bool>(k_), std::vector<bool>(k_), std::vector<bool>(k_)};
    for (const Triple& t : sol) {
      if (std::find(triples_.begin(), triples_.end(), t) == triples_.end()) return false;
      for (std::size_t cls = 0; cls < 3; ++cls) {
        if (t.at(cls) >= k_ || used[cls][t.at(cls)]) return false;
        used[cls][t.at(cls)] = true;
      }
    }
    return true;
  }

 private:
  std::size_t k_;
  std::vector<Triple> triples_;
};

/// "k m" header, then m lines "a b c" of class-local indices; '#' starts a comment.
inline ThreeDMInstance parse_3dm(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(ErrorCode::MalformedLine, 1, "missing header line 'k m'");
  auto header = detail::read_integers(lines.front(), 2);
  const std::size_t k = header[0];
  const std::size_t m = header[1];
  if (lines.size() - 1 != m) {
    throw ParseError(ErrorCode::CountMismatch, lines.back().number,
                     "header declares " + std::to_string(m) + " triples, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Triple> triples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto v = detail::read_integers(lines[i], 3);
    if (v[0] >= k || v[1] >= k || v[2] >= k) {
      throw ParseError(ErrorCode::VertexOutOfRange, lines[i].number, "class index out of range for k=" + std::to_string(k));
    }
    Triple t{v[0], v[1], v[2]};
    if (std::find(triples.begin(), triples.end(), t) != triples.end()) {
      throw ParseError(ErrorCode::DuplicateArc, lines[i].number, "duplicate triple");
    }
    triples.push_back(t);
  }
  return ThreeDMInstance(k, std::move(triples));
}

/// Vertex layout of the reduced digraph: X, then Y (one vertex per triple), then V1, V2, V3.
struct ReductionMap {
  std::size_t k = 0;
  std::size_t m = 0;

  std::size_t x_count() const { return m - k; }
  Vertex x(std::size_t i) const { return i; }
  Vertex y(std::size_t triple) const { return x_count() + triple; }
  Vertex class_vertex(std::size_t cls, std::size_t i) const { return x_count() + m + cls * k + i; }
  std::size_t order() const { return x_count() + m + 3 * k; }

  enum class Block { X, Y, V1, V2, V3 };
  Block block_of(Vertex v) const {
    if (v < x_count()) return Block::X;
    if (v < x_count() + m) return Block::Y;
    return static_cast<Block>(2 + (v - x_count() - m) / k);
  }
  std::size_t triple_of(Vertex y_vertex) const { return y_vertex - x_count(); }
  std::size_t class_index_of(Vertex v) const { return (v - x_count() - m) % k; }
};

struct Reduction {
  Digraph digraph;
  ReductionMap map;
  bool degenerate = false;  ///< m == k: X is empty and strong connectivity may fail
};

/// Builds the digraph that has a perfect out-forest iff the instance has a perfect 3D matching.
inline Reduction reduce_3dm(const ThreeDMInstance& inst) {
  const std::size_t k = inst.k();
  const std::size_t m = inst.m();
  if (m < k) {
    throw Error(ErrorCode::TooFewTriples, "need m >= k, got m=" + std::to_string(m) + " k=" + std::to_string(k));
  }
  ReductionMap map{k, m};
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < map.x_count(); ++i) {
    for (std::size_t j = 0; j < m; ++j) arcs.push_back({map.x(i), map.y(j)});
    for (std::size_t cls = 0; cls < 3; ++cls) {
      for (std::size_t c = 0; c < k; ++c) {
        arcs.push_back({map.x(i), map.class_vertex(cls, c)});
        arcs.push_back({map.class_vertex(cls, c), map.x(i)});
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const Triple& t = inst.triples()[j];
    for (std::size_t cls = 0; cls < 3; ++cls) arcs.push_back({map.y(j), map.class_vertex(cls, t.at(cls))});
    for (std::size_t j2 = 0; j2 < m; ++j2) {
      if (j2 != j) arcs.push_back({map.y(j), map.y(j2)});
    }
  }
  return {Digraph(map.order(), std::move(arcs)), map, m == k};
}

/// Perfect out-forest built from a perfect 3D matching: one claw y -> {a, b, c}
/// per chosen triple, and X paired with the unchosen Y vertices in ascending order.
inline OutForest embed_solution(const ThreeDMInstance& inst, const std::vector<Triple>& sol, const ReductionMap& map) {
  if (!inst.is_perfect_matching(sol)) {
    throw Error(ErrorCode::NotAPerfectMatching, "solution is not a perfect 3-dimensional matching");
  }
  std::vector<Vertex> parent(map.order(), kNoVertex);
  std::vector<bool> chosen(inst.m(), false);
  for (const Triple& t : sol) {
    std::size_t j = static_cast<std::size_t>(std::find(inst.triples().begin(), inst.triples().end(), t) -
                                             inst.triples().begin());
    chosen[j] = true;
    for (std::size_t cls = 0; cls < 3; ++cls) parent[map.class_vertex(cls, t.at(cls))] = map.y(j);
  }
  std::size_t next_x = 0;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    if (!chosen[j]) parent[map.y(j)] = map.x(next_x++);
  }
  return OutForest(std::move(parent));
}

/// Reads the perfect 3D matching off a perfect out-forest of the reduced digraph.
///
/// Every tree must be either an (x, y) pair or a claw rooted at y with one leaf
/// per class; anything else raises StructureMismatch.
inline std::vector<Triple> extract_solution(const Digraph& d, const OutForest& f, const ReductionMap& map) {
  if (d.order() != map.order()) throw Error(ErrorCode::StructureMismatch, "digraph does not match the reduction map");
  auto report = verify(d, f, ForestKind::Perfect);
  if (!report.passed()) {
    throw Error(ErrorCode::NotPerfect, "forest violates rule '" + report.violations.front().rule + "'");
  }
  using Block = ReductionMap::Block;
  std::vector<Triple> sol;
  std::size_t pairs = 0;
  for (std::size_t t = 0; t < f.tree_count(); ++t) {
    auto vs = f.tree_vertices(t);
    const Vertex root = f.roots()[t];
    if (vs.size() == 2 && map.block_of(root) == Block::X) {
      Vertex other = vs[0] == root ? vs[1] : vs[0];
      if (map.block_of(other) != Block::Y) throw Error(ErrorCode::StructureMismatch, "X-rooted tree without a Y leaf");
      ++pairs;
      continue;
    }
    if (vs.size() == 4 && map.block_of(root) == Block::Y) {
      std::array<std::size_t, 3> idx{kNoVertex, kNoVertex, kNoVertex};
      for (Vertex v : vs) {
        if (v == root) continue;
        auto b = map.block_of(v);
        if (b == Block::X || b == Block::Y) throw Error(ErrorCode::StructureMismatch, "claw leaf outside the classes");
        idx[static_cast<std::size_t>(b) - 2] = map.class_index_of(v);
      }
      if (std::find(idx.begin(), idx.end(), kNoVertex) != idx.end()) {
        throw Error(ErrorCode::StructureMismatch, "claw does not hit all three classes");
      }
      Triple triple{idx[0], idx[1], idx[2]};
      // Leaves are out-neighbors of the root, so the triple is the root's own.
      sol.push_back(triple);
      continue;
    }
    throw Error(ErrorCode::StructureMismatch, "tree of order " + std::to_string(vs.size()) + " has an unexpected shape");
  }
  if (sol.size() != map.k || pairs != map.x_count()) {
    throw Error(ErrorCode::StructureMismatch, "unexpected number of claws or pairs");
  }
  std::sort(sol.begin(), sol.end());
  return sol;
}

/// Sidecar text for a reduction: sizes, then one "block NAME start len" line per block.
inline std::string to_reduction_map_text(const Reduction& r) {
  const ReductionMap& map = r.map;
  std::ostringstream out;
  out << "# reduction map\n";
  out << "k " << map.k << "\nm " << map.m << '\n';
  out << "block X " << 0 << ' ' << map.x_count() << '\n';
  out << "block Y " << map.y(0) << ' ' << map.m << '\n';
  for (std::size_t cls = 0; cls < 3; ++cls) {
    out << "block V" << cls + 1 << ' ' << map.class_vertex(cls, 0) << ' ' << map.k << '\n';
  }
  out << "degenerate " << (r.degenerate ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace pforest
