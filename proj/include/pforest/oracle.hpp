#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "pforest/connectivity.hpp"
#include "pforest/error.hpp"
#include "pforest/forest.hpp"
#include "pforest/graph.hpp"
#include "pforest/hardness.hpp"
#include "pforest/matching.hpp"

namespace pforest {

/// Limits for the exhaustive searchers. Exceeding any of them raises BudgetExceeded.
struct OracleBudget {
  std::size_t max_vertices = 10;
  std::uint64_t max_states = 100'000'000;
  std::chrono::milliseconds time_limit{0};  ///< zero means no time limit
  unsigned workers = 1;                      ///< partitions on the first vertex's choice when > 1
};

namespace detail {

class StateMeter {
 public:
  explicit StateMeter(const OracleBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    std::uint64_t s = states_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (s > budget_.max_states) {
      throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget_.max_states) + " states");
    }
    if (budget_.time_limit.count() > 0 && (s & 0xFFF) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.time_limit) {
      throw Error(ErrorCode::BudgetExceeded, "time limit of " + std::to_string(budget_.time_limit.count()) + " ms");
    }
  }

  std::uint64_t states() const { return states_.load(); }

 private:
  const OracleBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> states_{0};
};

// Depth-first search over parent assignments: vertex v picks one of its
// in-neighbors (ascending) or becomes a root (last). Partial assignments that
// close a cycle are cut. For perfect out-forests an arc whose reverse is also
// present can never be a tree arc (its 2-cycle would sit inside one tree), so
// such parents are skipped.
class ForestSearch {
 public:
  static constexpr Vertex kUnassigned = kNoVertex - 1;

  ForestSearch(const Digraph& d, ForestKind kind, StateMeter& meter)
      : d_(d), kind_(kind), meter_(meter), candidates_(d.order()) {
    for (Vertex v = 0; v < d.order(); ++v) {
      for (Vertex p : d.in_neighbors(v)) {
        if (kind == ForestKind::Perfect && d.has_arc(v, p)) continue;
        candidates_[v].push_back(p);
      }
      candidates_[v].push_back(kNoVertex);
    }
  }

  const std::vector<Vertex>& candidates(Vertex v) const { return candidates_[v]; }

  /// Searches with vertex 0 fixed to `first_choice` (index into its candidates), or unrestricted.
  std::optional<OutForest> run(std::optional<std::size_t> first_choice = std::nullopt,
                               const std::atomic<std::size_t>* stop_above = nullptr) {
    first_choice_ = first_choice;
    stop_above_ = stop_above;
    parent_.assign(d_.order(), kUnassigned);
    if (d_.order() == 0) return std::nullopt;
    if (assign(0)) return OutForest(finished_);
    return std::nullopt;
  }

 private:
  bool closes_cycle(Vertex v, Vertex p) const {
    Vertex w = p;
    for (std::size_t steps = 0; steps <= d_.order(); ++steps) {
      if (w == v) return true;
      if (w == kNoVertex || w == kUnassigned) return false;
      w = parent_[w];
    }
    return true;
  }

  bool assign(Vertex v) {
    if (v == d_.order()) {
      std::vector<Vertex> parent = parent_;
      if (verify(d_, OutForest(parent), kind_).passed()) {
        finished_ = std::move(parent);
        return true;
      }
      return false;
    }
    const auto& cands = candidates_[v];
    std::size_t lo = 0;
    std::size_t hi = cands.size();
    if (v == 0 && first_choice_) {
      lo = *first_choice_;
      hi = lo + 1;
    }
    for (std::size_t i = lo; i < hi; ++i) {
      meter_.tick();
      if (stop_above_ && first_choice_ && *first_choice_ > stop_above_->load(std::memory_order_relaxed)) return false;
      Vertex p = cands[i];
      if (p != kNoVertex && closes_cycle(v, p)) continue;
      parent_[v] = p;
      if (assign(v + 1)) return true;
      parent_[v] = kUnassigned;
    }
    return false;
  }

  const Digraph& d_;
  ForestKind kind_;
  StateMeter& meter_;
  std::vector<std::vector<Vertex>> candidates_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> finished_;
  std::optional<std::size_t> first_choice_;
  const std::atomic<std::size_t>* stop_above_ = nullptr;
};

}  // namespace detail

/// First out-forest of the requested kind in enumeration order, or nothing.
///
/// The answer does not depend on `budget.workers`.
inline std::optional<OutForest> oracle_forest(const Digraph& d, ForestKind kind, const OracleBudget& budget = {}) {
  if (d.order() > budget.max_vertices) {
    throw Error(ErrorCode::BudgetExceeded, "order " + std::to_string(d.order()) + " exceeds the vertex budget");
  }
  detail::StateMeter meter(budget);
  if (budget.workers <= 1 || d.order() == 0) return detail::ForestSearch(d, kind, meter).run();

  const std::size_t parts = detail::ForestSearch(d, kind, meter).candidates(0).size();
  std::vector<std::optional<OutForest>> found(parts);
  std::vector<std::exception_ptr> failed(parts);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{parts};  // lowest partition known to hold an answer
  auto worker = [&] {
    for (std::size_t part = next++; part < parts; part = next++) {
      if (part > best.load()) continue;
      try {
        detail::ForestSearch search(d, kind, meter);
        found[part] = search.run(part, &best);
        if (found[part]) {
          std::size_t cur = best.load();
          while (part < cur && !best.compare_exchange_weak(cur, part)) {
          }
        }
      } catch (...) {
        failed[part] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < std::min<std::size_t>(budget.workers, parts); ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (std::size_t part = 0; part < parts; ++part) {
    if (failed[part]) std::rethrow_exception(failed[part]);
    if (found[part]) return found[part];
  }
  return std::nullopt;
}

/// Exact maximum matching by branch and bound; the first vertex not yet decided
/// is matched to each free neighbor in turn, then left exposed.
inline Matching oracle_matching(const UGraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.order();
  if (n > budget.max_vertices) {
    throw Error(ErrorCode::BudgetExceeded, "order " + std::to_string(n) + " exceeds the vertex budget");
  }
  detail::StateMeter meter(budget);
  std::vector<bool> decided(n, false);
  std::vector<Edge> current;
  std::vector<Edge> best;
  std::size_t open = n;

  std::function<void(Vertex)> search = [&](Vertex from) {
    meter.tick();
    Vertex v = from;
    while (v < n && decided[v]) ++v;
    if (v == n) {
      if (current.size() > best.size()) best = current;
      return;
    }
    if (current.size() + open / 2 <= best.size()) return;
    decided[v] = true;
    --open;
    for (Vertex w : g.neighbors(v)) {
      if (decided[w]) continue;
      decided[w] = true;
      --open;
      current.push_back(make_edge(v, w));
      search(v + 1);
      current.pop_back();
      ++open;
      decided[w] = false;
    }
    search(v + 1);
    ++open;
    decided[v] = false;
  };
  search(0);
  return Matching(n, best);
}

/// Brute-force 3DM: the first k-subset of triples (lexicographic by index) that is a perfect matching.
inline std::optional<std::vector<Triple>> solve_3dm(const ThreeDMInstance& inst) {
  const std::size_t k = inst.k();
  const std::size_t m = inst.m();
  if (k > m) return std::nullopt;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::vector<Triple> sol;
    for (std::size_t i : pick) sol.push_back(inst.triples()[i]);
    if (inst.is_perfect_matching(sol)) {
      std::sort(sol.begin(), sol.end());
      return sol;
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------
// Instance generation

using ClassFilter = std::function<bool(ConnectivityClass)>;

inline ClassFilter accept_all() {
  return [](ConnectivityClass) { return true; };
}

inline ClassFilter accept_classes(std::initializer_list<ConnectivityClass> classes) {
  std::vector<ConnectivityClass> keep(classes);
  return [keep](ConnectivityClass c) { return std::find(keep.begin(), keep.end(), c) != keep.end(); };
}

/// Connected digraphs of even order (StronglyConnectedEven, SingleInitialEven, ConnectedEven).
inline ClassFilter accept_connected_even() {
  return accept_classes({ConnectivityClass::StronglyConnectedEven, ConnectivityClass::SingleInitialEven,
                         ConnectivityClass::ConnectedEven});
}

inline constexpr std::size_t kMaxExhaustiveOrder = 4;

/// Calls `fn` on every digraph on n vertices accepted by `filter`.
/// Arc subsets are enumerated as bitmasks over ordered pairs in ascending (tail, head) order.
inline void for_each_digraph(std::size_t n, const ClassFilter& filter, const std::function<void(const Digraph&)>& fn) {
  if (n > kMaxExhaustiveOrder) {
    throw Error(ErrorCode::ContractViolation, "exhaustive enumeration is limited to n <= " +
                                                  std::to_string(kMaxExhaustiveOrder) + "; use sampling");
  }
  std::vector<Arc> pairs;
  for (Vertex t = 0; t < n; ++t) {
    for (Vertex h = 0; h < n; ++h) {
      if (t != h) pairs.push_back({t, h});
    }
  }
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) arcs.push_back(pairs[i]);
    }
    Digraph d(n, std::move(arcs));
    if (filter(classify(d))) fn(d);
  }
}

inline std::vector<Digraph> enumerate_digraphs(std::size_t n, const ClassFilter& filter) {
  std::vector<Digraph> out;
  for_each_digraph(n, filter, [&](const Digraph& d) { out.push_back(d); });
  return out;
}

/// Seeded random digraphs by rejection: each sample draws an arc density in
/// [0.15, 0.85] and keeps the digraph only if `filter` accepts it.
inline std::vector<Digraph> sample_digraphs(std::size_t n, std::size_t count, const ClassFilter& filter,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.15, 0.85);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Digraph> out;
  while (out.size() < count) {
    const double p = density(rng);
    std::vector<Arc> arcs;
    for (Vertex t = 0; t < n; ++t) {
      for (Vertex h = 0; h < n; ++h) {
        if (t != h && coin(rng) < p) arcs.push_back({t, h});
      }
    }
    Digraph d(n, std::move(arcs));
    if (filter(classify(d))) out.push_back(std::move(d));
  }
  return out;
}

/// Calls `fn` on every undirected graph on n vertices (edge-subset bitmasks).
inline void for_each_ugraph(std::size_t n, const std::function<void(const UGraph&)>& fn) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  if (pairs.size() > 28) throw Error(ErrorCode::ContractViolation, "exhaustive enumeration of undirected graphs needs n <= 8");
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) edges.push_back(pairs[i]);
    }
    fn(UGraph(n, std::move(edges)));
  }
}

/// Seeded random undirected graphs with a per-sample density in [0.15, 0.85].
inline std::vector<UGraph> sample_ugraphs(std::size_t n, std::size_t count, std::uint64_t seed,
                                          const std::function<bool(const UGraph&)>& keep = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.15, 0.85);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<UGraph> out;
  while (out.size() < count) {
    const double p = density(rng);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (coin(rng) < p) edges.push_back({u, v});
      }
    }
    UGraph g(n, std::move(edges));
    if (!keep || keep(g)) out.push_back(std::move(g));
  }
  return out;
}

/// Uniformly shuffled vertex order; each later vertex hangs below a random earlier one.
template <typename Rng>
OutTree random_out_tree(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<Vertex, Vertex> parent;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    parent[perm[i]] = perm[pick(rng)];
  }
  return OutTree(n, perm[0], std::move(parent));
}

}  // namespace pforest
