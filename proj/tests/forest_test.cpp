#include <gtest/gtest.h>

#include <random>

#include "pforest/forest.hpp"
#include "pforest/json.hpp"
#include "pforest/oracle.hpp"
#include "support/checkers.hpp"

namespace pforest {
namespace {

Digraph two_cycle() { return Digraph(2, {{0, 1}, {1, 0}}); }

OutForest forest(std::size_t n, std::vector<Arc> arcs) { return OutForest::from_arcs(n, arcs); }

// Random spanning out-forest of d: each vertex keeps a random in-neighbor unless that closes a cycle.
OutForest random_forest(const Digraph& d, std::mt19937_64& rng) {
  std::vector<Vertex> parent(d.order(), kNoVertex);
  std::vector<Vertex> order(d.order());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (Vertex v : order) {
    auto in = d.in_neighbors(v);
    std::uniform_int_distribution<std::size_t> pick(0, in.size());
    std::size_t i = pick(rng);
    if (i == in.size()) continue;
    Vertex p = in[i];
    Vertex w = p;
    bool cycle = false;
    while (w != kNoVertex) {
      if (w == v) cycle = true;
      if (cycle) break;
      w = parent[w];
    }
    if (!cycle) parent[v] = p;
  }
  return OutForest(parent);
}

TEST(OutForest, DerivedFields) {
  OutForest f = forest(6, {{0, 1}, {1, 2}, {1, 3}, {4, 5}});
  EXPECT_EQ(f.tree_count(), 2u);
  EXPECT_EQ(f.roots(), (std::vector<Vertex>{0, 4}));
  EXPECT_EQ(f.depth(3), 2u);
  EXPECT_EQ(f.tree_id(5), 1u);
  EXPECT_EQ(f.tree_order(0), 4u);
  EXPECT_EQ(f.underlying_degree(1), 3u);
  EXPECT_TRUE(f.is_proper_ancestor(0, 3));
  EXPECT_FALSE(f.is_proper_ancestor(3, 0));
  EXPECT_FALSE(f.is_proper_ancestor(2, 3));
  EXPECT_EQ(f.tree_path_arcs(2, 3), (std::vector<Arc>{{1, 2}, {1, 3}}));
  EXPECT_THROW(f.tree_path_arcs(2, 4), Error);
}

TEST(OutForest, RejectsInvalidStructures) {
  EXPECT_THROW(forest(3, {{0, 2}, {1, 2}}), Error);
  EXPECT_THROW(forest(3, {{0, 1}, {1, 2}, {2, 0}}), Error);
  EXPECT_THROW(OutForest(std::vector<Vertex>{1, 0}), Error);
  EXPECT_THROW(OutForest(std::vector<Vertex>{0}), Error);
}

TEST(ClassifyArc, Examples) {
  Digraph d(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  OutForest t = forest(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(classify_arc(d, t, {2, 0}), ArcClass::BackwardArc);
  EXPECT_EQ(classify_arc(d, t, {0, 2}), ArcClass::ForwardArc);
  EXPECT_EQ(classify_arc(d, t, {0, 1}), ArcClass::TreeArc);

  Digraph d2(4, {{0, 1}, {2, 3}, {1, 2}});
  EXPECT_EQ(classify_arc(d2, forest(4, {{0, 1}, {2, 3}}), {1, 2}), ArcClass::InterTreeArc);

  Digraph d3(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(classify_arc(d3, forest(3, {{0, 1}, {0, 2}}), {1, 2}), ArcClass::CrossArc);
}

TEST(ClassifyArc, ArcMustBelongToDigraph) {
  Digraph d(3, {{0, 1}});
  try {
    classify_arc(d, forest(3, {{0, 1}}), {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArcNotInDigraph);
  }
}

TEST(ClassifyArc, ClassesPartitionTheArcs) {
  std::mt19937_64 rng(5);
  for (const Digraph& d : sample_digraphs(7, 300, accept_all(), 11)) {
    OutForest f = random_forest(d, rng);
    std::array<std::size_t, 5> counts{};
    for (const Arc& a : d.arcs()) ++counts[static_cast<std::size_t>(classify_arc(d, f, a))];
    EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::size_t{0}), d.arc_count());
    EXPECT_EQ(counts[0], f.arc_count());
  }
}

TEST(Verify, Examples) {
  Digraph d = two_cycle();
  OutForest f = forest(2, {{0, 1}});
  auto perfect = verify(d, f, ForestKind::Perfect);
  EXPECT_FALSE(perfect.passed());
  EXPECT_TRUE(perfect.has_rule(rules::kNonInducedTree));
  EXPECT_TRUE(verify(d, f, ForestKind::AlmostPerfect).passed());

  Digraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  OutForest pairs = forest(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(verify(path, pairs, ForestKind::WeakPerfect).passed());
  EXPECT_TRUE(verify(path, pairs, ForestKind::Even).passed());
}

TEST(Verify, SingletonTreesFail) {
  Digraph d(4, {{0, 1}, {1, 2}, {2, 3}});
  OutForest f = forest(4, {{0, 1}, {1, 2}});
  auto weak = verify(d, f, ForestKind::WeakPerfect);
  EXPECT_FALSE(weak.passed());
  EXPECT_TRUE(weak.has_rule(rules::kEvenDegree));
  auto even = verify(d, f, ForestKind::Even);
  EXPECT_TRUE(even.has_rule(rules::kOddOrderTree));
}

TEST(Verify, CollectsEveryViolation) {
  Digraph d(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 0}});
  OutForest f = forest(4, {{0, 1}, {0, 2}, {0, 3}});
  auto r = verify(d, f, ForestKind::AlmostPerfect);
  EXPECT_TRUE(r.passed() == false);
  EXPECT_TRUE(r.has_rule(rules::kCrossArc));
  EXPECT_FALSE(r.has_rule(rules::kEvenDegree));
  auto p = verify(d, f, ForestKind::Perfect);
  EXPECT_EQ(p.violations.size(), 2u);  // (1,2) and (3,0) lie inside the tree
}

TEST(Verify, ForestArcsMustBeArcsOfTheDigraph) {
  Digraph d(2, {{1, 0}});
  auto r = verify(d, forest(2, {{0, 1}}), ForestKind::WeakPerfect);
  EXPECT_TRUE(r.has_rule(rules::kArcNotInDigraph));
  EXPECT_TRUE(verify(Digraph(3, {}), forest(2, {}), ForestKind::Even).has_rule(rules::kOrderMismatch));
}

TEST(Verify, KindsFormAnImplicationChain) {
  std::mt19937_64 rng(17);
  std::size_t perfect_seen = 0;
  for (std::size_t n : {4u, 6u}) {
    for (const Digraph& d : sample_digraphs(n, 1500, accept_all(), 23 + n)) {
      OutForest f = random_forest(d, rng);
      bool p = verify(d, f, ForestKind::Perfect).passed();
      bool a = verify(d, f, ForestKind::AlmostPerfect).passed();
      bool w = verify(d, f, ForestKind::WeakPerfect).passed();
      bool e = verify(d, f, ForestKind::Even).passed();
      EXPECT_TRUE(!p || a);
      EXPECT_TRUE(!a || w);
      EXPECT_TRUE(!w || e);
      perfect_seen += p;
      if (w) {
        EXPECT_LE(f.tree_count(), n / 2);
        EXPECT_GE(f.arc_count(), n / 2);
      }
    }
  }
  EXPECT_GT(perfect_seen, 0u);
}

TEST(Verify, PerfectAgreesWithInducedSubgraphCheck) {
  std::size_t forests = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for_each_digraph(n, accept_all(), [&](const Digraph& d) {
      // every spanning out-forest via parent assignments
      std::vector<std::size_t> choice(n, 0);
      for (;;) {
        std::vector<Arc> arcs;
        for (Vertex v = 0; v < n; ++v) {
          if (choice[v] < d.in_degree(v)) arcs.push_back({d.in_neighbors(v)[choice[v]], v});
        }
        if (testing::is_out_forest_in(d, arcs)) {
          OutForest f = OutForest::from_arcs(n, arcs);
          ASSERT_EQ(verify(d, f, ForestKind::Perfect).passed(), testing::is_perfect_out_forest(d, arcs));
          ++forests;
        }
        Vertex v = 0;
        while (v < n && ++choice[v] > d.in_degree(v)) choice[v++] = 0;
        if (v == n) break;
      }
    });
  }
  std::mt19937_64 rng(3);
  for (const Digraph& d : sample_digraphs(5, 2000, accept_all(), 99)) {
    OutForest f = random_forest(d, rng);
    ASSERT_EQ(verify(d, f, ForestKind::Perfect).passed(), testing::is_perfect_out_forest(d, f.arcs()));
  }
  EXPECT_GT(forests, 10000u);
}

TEST(ExtractPerfectForest, Examples) {
  UGraph edge(2, {{0, 1}});
  EXPECT_EQ(extract_perfect_forest(edge, forest(2, {{0, 1}})), (std::vector<Edge>{{0, 1}}));

  UGraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  auto m = extract_perfect_forest(path, forest(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(m, (std::vector<Edge>{{0, 1}, {2, 3}}));
  EXPECT_TRUE(testing::is_perfect_forest(path, m));
}

TEST(ExtractPerfectForest, RejectsForestsThatAreNotAlmostPerfect) {
  UGraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  try {
    extract_perfect_forest(path, forest(4, {{0, 1}, {1, 2}, {2, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAlmostPerfect);
  }
}

TEST(ForestText, RoundTrip) {
  std::mt19937_64 rng(8);
  for (const Digraph& d : sample_digraphs(8, 50, accept_all(), 4)) {
    OutForest f = random_forest(d, rng);
    EXPECT_EQ(parse_forest(to_forest_text(f)), f);
  }
}

TEST(ForestText, Errors) {
  EXPECT_THROW(parse_forest("root 0\n0 1\n"), ParseError);  // vertex listed twice
  EXPECT_THROW(parse_forest("root 0\n1 5\n"), ParseError);  // parent out of range
  EXPECT_THROW(parse_forest("root x\n"), ParseError);
  EXPECT_THROW(parse_forest("1 0\n0 1\n"), Error);          // cycle
  EXPECT_EQ(parse_forest("# c\nroot 0\n1 0\n").arcs(), (std::vector<Arc>{{0, 1}}));
}

TEST(ReportJson, Schema) {
  auto r = verify(two_cycle(), forest(2, {{0, 1}}), ForestKind::Perfect);
  auto j = to_json(r);
  EXPECT_EQ(j["schema"], kVerificationSchema);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["kind"], "perfect");
  ASSERT_EQ(j["violations"].size(), 1u);
  EXPECT_EQ(j["violations"][0]["rule"], "non-induced-tree");
  EXPECT_EQ(j["violations"][0]["arcs"][0], nlohmann::json::array({1, 0}));
}

}  // namespace
}  // namespace pforest
