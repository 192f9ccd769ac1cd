#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pforest/error.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// Strongest applicable connectivity label of a digraph.
///
/// For even connected digraphs the labels nest: a strongly connected digraph
/// also has a single initial strong component, and both are connected.
enum class ConnectivityClass {
  StronglyConnectedEven,
  SingleInitialEven,
  ConnectedEven,
  ConnectedOdd,
  Disconnected,
};

inline const char* to_string(ConnectivityClass c) {
  switch (c) {
    case ConnectivityClass::StronglyConnectedEven: return "StronglyConnectedEven";
    case ConnectivityClass::SingleInitialEven: return "SingleInitialEven";
    case ConnectivityClass::ConnectedEven: return "ConnectedEven";
    case ConnectivityClass::ConnectedOdd: return "ConnectedOdd";
    case ConnectivityClass::Disconnected: return "Disconnected";
  }
  return "Unknown";
}

/// Strong components in the order Tarjan's algorithm closes them (reverse topological).
struct StrongComponents {
  std::vector<std::size_t> component_of;
  std::size_t count = 0;
};

inline StrongComponents strong_components(const Digraph& d) {
  const std::size_t n = d.order();
  constexpr std::size_t kUnvisited = kNoVertex;
  StrongComponents result;
  result.component_of.assign(n, kUnvisited);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::size_t next_index = 0;

  struct Frame {
    Vertex v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (Vertex start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto out = d.out_neighbors(f.v);
      if (f.edge < out.size()) {
        Vertex w = out[f.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component_of[w] = result.count;
        } while (w != v);
        ++result.count;
      }
    }
  }
  return result;
}

/// True iff the underlying graph is connected (the empty digraph is not).
inline bool is_weakly_connected(const Digraph& d) {
  const std::size_t n = d.order();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> todo{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (auto side : {d.out_neighbors(v), d.in_neighbors(v)}) {
      for (Vertex w : side) {
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          todo.push_back(w);
        }
      }
    }
  }
  return reached == n;
}

namespace detail {

// Components with no arc entering from another component.
inline std::vector<std::size_t> initial_components(const Digraph& d, const StrongComponents& scc) {
  std::vector<bool> entered(scc.count, false);
  for (const Arc& a : d.arcs()) {
    if (scc.component_of[a.tail] != scc.component_of[a.head]) entered[scc.component_of[a.head]] = true;
  }
  std::vector<std::size_t> initial;
  for (std::size_t c = 0; c < scc.count; ++c) {
    if (!entered[c]) initial.push_back(c);
  }
  return initial;
}

}  // namespace detail

inline ConnectivityClass classify(const Digraph& d) {
  if (!is_weakly_connected(d)) return ConnectivityClass::Disconnected;
  if (d.order() % 2 != 0) return ConnectivityClass::ConnectedOdd;
  auto scc = strong_components(d);
  if (scc.count == 1) return ConnectivityClass::StronglyConnectedEven;
  if (detail::initial_components(d, scc).size() == 1) return ConnectivityClass::SingleInitialEven;
  return ConnectivityClass::ConnectedEven;
}

/// Smallest vertex of the unique initial strong component, if there is exactly one.
///
/// Every vertex is then reachable from the returned vertex. Parity is not checked.
inline std::optional<Vertex> find_universal_root(const Digraph& d) {
  if (d.order() == 0) return std::nullopt;
  auto scc = strong_components(d);
  auto initial = detail::initial_components(d, scc);
  if (initial.size() != 1) return std::nullopt;
  // A single source component reaches everything, so the digraph is connected.
  for (Vertex v = 0; v < d.order(); ++v) {
    if (scc.component_of[v] == initial.front()) return v;
  }
  return std::nullopt;
}

/// An out-tree over a subset of the vertices 0..n-1.
class OutTree {
 public:
  /// `parent` maps every non-root member to its parent; members are the root plus all keys.
  OutTree(std::size_t n, Vertex root, std::map<Vertex, Vertex> parent)
      : n_(n), root_(root), parent_(std::move(parent)) {
    if (root_ >= n_) throw Error(ErrorCode::InvalidForest, "root out of range");
    if (parent_.count(root_)) throw Error(ErrorCode::InvalidForest, "root has a parent");
    members_.push_back(root_);
    for (const auto& [child, par] : parent_) {
      if (child >= n_ || par >= n_) throw Error(ErrorCode::InvalidForest, "vertex out of range");
      members_.push_back(child);
    }
    std::sort(members_.begin(), members_.end());
    // Every parent is a member and every member reaches the root.
    for (const auto& [child, par] : parent_) {
      if (par != root_ && !parent_.count(par)) {
        throw Error(ErrorCode::InvalidForest, "parent " + std::to_string(par) + " is not in the tree");
      }
      Vertex v = child;
      std::size_t steps = 0;
      while (v != root_) {
        v = parent_.at(v);
        if (++steps > parent_.size()) throw Error(ErrorCode::InvalidForest, "parent relation has a cycle");
      }
    }
  }

  std::size_t universe() const { return n_; }
  Vertex root() const { return root_; }
  std::size_t order() const { return members_.size(); }
  const std::vector<Vertex>& vertices() const { return members_; }
  const std::map<Vertex, Vertex>& parents() const { return parent_; }

  std::optional<Vertex> parent_of(Vertex v) const {
    auto it = parent_.find(v);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (const auto& [child, par] : parent_) out.push_back({par, child});
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t n_;
  Vertex root_;
  std::map<Vertex, Vertex> parent_;
  std::vector<Vertex> members_;
};

/// Breadth-first spanning out-tree rooted at `root`; neighbors are visited in ascending order.
inline OutTree spanning_out_tree(const Digraph& d, Vertex root) {
  const std::size_t n = d.order();
  if (root >= n) throw Error(ErrorCode::VertexOutOfRange, "root " + std::to_string(root));
  std::vector<bool> seen(n, false);
  std::map<Vertex, Vertex> parent;
  std::queue<Vertex> todo;
  todo.push(root);
  seen[root] = true;
  while (!todo.empty()) {
    Vertex v = todo.front();
    todo.pop();
    for (Vertex w : d.out_neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      parent.emplace(w, v);
      todo.push(w);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v]) {
      throw Error(ErrorCode::NotReachable, "vertex " + std::to_string(v) + " is not reachable from " + std::to_string(root));
    }
  }
  return OutTree(n, root, std::move(parent));
}

}  // namespace pforest
