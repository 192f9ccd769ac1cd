#include <gtest/gtest.h>

#include <random>

#include "pforest/gadget.hpp"
#include "pforest/oracle.hpp"
#include "pforest/transform.hpp"
#include "support/checkers.hpp"

namespace pforest {
namespace {

Digraph two_cycle() { return Digraph(2, {{0, 1}, {1, 0}}); }
Digraph path4() { return Digraph(4, {{0, 1}, {1, 2}, {2, 3}}); }
OutForest forest(std::size_t n, std::vector<Arc> arcs) { return OutForest::from_arcs(n, arcs); }

TEST(EvenTreeToWeak, Examples) {
  OutTree pair(2, 0, {{1, 0}});
  EXPECT_EQ(even_tree_to_weak(pair).arcs(), (std::vector<Arc>{{0, 1}}));

  OutTree path(4, 0, {{1, 0}, {2, 1}, {3, 2}});
  EXPECT_EQ(even_tree_to_weak(path).arcs(), (std::vector<Arc>{{0, 1}, {2, 3}}));

  // star r=0 -> {1, 2, 3}: deepest u=1 pairs with leaf sibling 2, then 0 -> 3
  OutTree star(4, 0, {{1, 0}, {2, 0}, {3, 0}});
  OutForest f = even_tree_to_weak(star);
  EXPECT_EQ(f.arcs(), (std::vector<Arc>{{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(f.underlying_degree(0), 3u);
}

TEST(EvenTreeToWeak, MixedBranches) {
  // 0 -> 1 -> {2, 3}, 0 -> 4 -> 5: u=2 pairs with 3 under 1; then u=5 alone under 4
  // (split off as 4 -> 5); finally 0 -> 1 remains.
  OutTree t(6, 0, {{1, 0}, {2, 1}, {3, 1}, {4, 0}, {5, 4}});
  EXPECT_EQ(even_tree_to_weak(t).arcs(), (std::vector<Arc>{{0, 1}, {1, 2}, {1, 3}, {4, 5}}));
}

TEST(EvenTreeToWeak, OddOrderRejected) {
  try {
    even_tree_to_weak(OutTree(3, 0, {{1, 0}, {2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddOrder);
  }
}

TEST(EvenTreeToWeak, PartialTreeLeavesOtherVerticesAlone) {
  OutTree t(5, 3, {{1, 3}});
  OutForest f = even_tree_to_weak(t);
  EXPECT_EQ(f.order(), 5u);
  EXPECT_EQ(f.arcs(), (std::vector<Arc>{{3, 1}}));
}

TEST(EvenTreeToWeak, RandomTreesGiveOddDegreesWithinTheTree) {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t n = 2 * std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    OutTree t = random_out_tree(n, rng);
    OutForest f = even_tree_to_weak(t);
    auto tree_arcs = t.arcs();
    for (const Arc& a : f.arcs()) EXPECT_TRUE(std::binary_search(tree_arcs.begin(), tree_arcs.end(), a));
    for (Vertex v = 0; v < n; ++v) EXPECT_EQ(f.underlying_degree(v) % 2, 1u);
  }
}

TEST(EvenTreeToWeak, LongPathNeedsNoRecursion) {
  std::map<Vertex, Vertex> parent;
  for (Vertex v = 1; v < 20000; ++v) parent[v] = v - 1;
  OutForest f = even_tree_to_weak(OutTree(20000, 0, parent));
  EXPECT_EQ(f.tree_count(), 10000u);
}

TEST(WeakToAlmost, AlreadyAlmostPerfectIsUnchanged) {
  Digraph d(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  OutForest f = forest(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(classify_arc(d, f, {1, 2}), ArcClass::InterTreeArc);
  EXPECT_EQ(classify_arc(d, f, {0, 3}), ArcClass::InterTreeArc);
  auto trace = weak_to_almost_traced(d, f);
  EXPECT_TRUE(trace.swapped_in.empty());
  EXPECT_EQ(trace.forest, f);
}

TEST(WeakToAlmost, SingleForwardArcSwap) {
  // tree 0 -> 1 -> {2, 3} plus pair 4 -> 5; (0,2) is a forward arc
  Digraph d(6, {{0, 1}, {1, 2}, {1, 3}, {0, 2}, {4, 5}});
  OutForest f = forest(6, {{0, 1}, {1, 2}, {1, 3}, {4, 5}});
  ASSERT_TRUE(verify(d, f, ForestKind::WeakPerfect).passed());
  ASSERT_EQ(classify_arc(d, f, {0, 2}), ArcClass::ForwardArc);
  auto trace = weak_to_almost_traced(d, f);
  EXPECT_EQ(trace.swapped_in, (std::vector<Arc>{{0, 2}}));
  EXPECT_EQ(trace.arc_counts, (std::vector<std::size_t>{4, 3}));
  EXPECT_EQ(trace.forest.arcs(), (std::vector<Arc>{{0, 2}, {1, 3}, {4, 5}}));
  EXPECT_TRUE(verify(d, trace.forest, ForestKind::AlmostPerfect).passed());
}

TEST(WeakToAlmost, SingleCrossArcSwap) {
  Digraph d(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {4, 5}});
  OutForest f = forest(6, {{0, 1}, {0, 2}, {0, 3}, {4, 5}});
  auto trace = weak_to_almost_traced(d, f);
  EXPECT_EQ(trace.swapped_in, (std::vector<Arc>{{1, 2}}));
  EXPECT_EQ(trace.forest.arcs(), (std::vector<Arc>{{0, 3}, {1, 2}, {4, 5}}));
  EXPECT_TRUE(verify(d, trace.forest, ForestKind::AlmostPerfect).passed());
}

TEST(WeakToAlmost, RequiresWeakPerfectInput) {
  try {
    weak_to_almost(path4(), forest(4, {{0, 1}, {1, 2}, {2, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWeakPerfect);
  }
}

TEST(WeakToAlmost, ArcCountStrictlyDecreases) {
  std::size_t swaps = 0;
  for (std::size_t n : {4u, 6u, 8u, 10u}) {
    for (const Digraph& d : sample_digraphs(n, 150, accept_connected_even(), 7 * n)) {
      auto weak = decide_weak(d);
      if (!weak) continue;
      auto trace = weak_to_almost_traced(d, *weak);
      EXPECT_LE(trace.swapped_in.size(), n);
      for (std::size_t i = 1; i < trace.arc_counts.size(); ++i) EXPECT_LT(trace.arc_counts[i], trace.arc_counts[i - 1]);
      EXPECT_TRUE(verify(d, trace.forest, ForestKind::AlmostPerfect).passed());
      for (const Arc& a : d.arcs()) {
        auto c = classify_arc(d, trace.forest, a);
        EXPECT_TRUE(c != ArcClass::ForwardArc && c != ArcClass::CrossArc);
      }
      swaps += trace.swapped_in.size();
    }
  }
  EXPECT_GT(swaps, 0u);
}

// Small strongly connected digraphs where the spanning-tree pipeline must swap arcs.
TEST(WeakToAlmost, SwapWitnessesExistAtOrderFour) {
  std::size_t strongly_connected = 0;
  std::size_t witnesses = 0;
  for_each_digraph(4, accept_classes({ConnectivityClass::StronglyConnectedEven}), [&](const Digraph& d) {
    ++strongly_connected;
    OutForest weak = even_tree_to_weak(spanning_out_tree(d, *find_universal_root(d)));
    if (!weak_to_almost_traced(d, weak).swapped_in.empty()) ++witnesses;
  });
  std::cout << "order-4 strongly connected digraphs: " << strongly_connected << ", requiring a swap: " << witnesses
            << "\n";
  EXPECT_GT(witnesses, 0u);
}

TEST(ConstructForSingleInitial, Examples) {
  OutForest f = construct_for_single_initial(two_cycle());
  EXPECT_EQ(f.arcs(), (std::vector<Arc>{{0, 1}}));
  EXPECT_EQ(classify_arc(two_cycle(), f, {1, 0}), ArcClass::BackwardArc);
  EXPECT_TRUE(verify(two_cycle(), f, ForestKind::AlmostPerfect).passed());

  EXPECT_EQ(construct_for_single_initial(path4()).arcs(), (std::vector<Arc>{{0, 1}, {2, 3}}));
}

TEST(ConstructForSingleInitial, WrongClass) {
  for (const Digraph& d : {testing::inward_star(3), Digraph(3, {{0, 1}, {1, 2}}), Digraph(4, {{0, 1}, {2, 3}})}) {
    try {
      construct_for_single_initial(d);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::WrongClass);
    }
  }
}

TEST(ConstructForSingleInitial, AllSingleInitialDigraphsOfOrderFour) {
  for_each_digraph(4, accept_classes({ConnectivityClass::StronglyConnectedEven, ConnectivityClass::SingleInitialEven}),
                   [](const Digraph& d) {
                     ASSERT_TRUE(verify(d, construct_for_single_initial(d), ForestKind::AlmostPerfect).passed());
                   });
}

TEST(PerfectForestUndirected, Examples) {
  EXPECT_EQ(perfect_forest_undirected(UGraph(2, {{0, 1}})), (std::vector<Edge>{{0, 1}}));
  EXPECT_FALSE(perfect_forest_undirected(UGraph(3, {{0, 1}, {1, 2}})).has_value());
  EXPECT_FALSE(perfect_forest_undirected(UGraph(4, {{0, 1}, {2, 3}})).has_value());
  auto star = perfect_forest_undirected(UGraph(4, {{0, 1}, {0, 2}, {0, 3}}));
  ASSERT_TRUE(star.has_value());
  EXPECT_EQ(star->size(), 3u);
}

TEST(PerfectForestUndirected, OnlyReversedTreeArcsAreBackward) {
  for (const UGraph& g : sample_ugraphs(8, 200, 808, testing::ugraph_connected)) {
    Digraph d = bidirect(g);
    OutForest f = construct_for_single_initial(d);
    // the reverse of a tree arc is always backward; any other backward arc would
    // come with a forward twin
    for (const Arc& a : d.arcs()) {
      if (classify_arc(d, f, a) == ArcClass::BackwardArc) {
        EXPECT_TRUE(f.has_arc({a.head, a.tail}));
      }
    }
    auto edges = perfect_forest_undirected(g);
    ASSERT_TRUE(edges.has_value());
    EXPECT_TRUE(testing::is_perfect_forest(g, *edges));
  }
}

}  // namespace
}  // namespace pforest
