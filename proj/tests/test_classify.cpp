#include <gtest/gtest.h>

#include "support.hpp"
#include "twopart/classify.hpp"

using namespace twopart;

namespace {

using Edges = std::vector<TwoPartiteDigraph::IdEdge>;

ApproximantSpec spec(std::size_t n, std::size_t t, std::uint64_t seed) {
  ApproximantSpec s;
  s.side_size = n;
  s.level = t;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(GgkClass, FiniteKinds) {
  const auto k33 = complete_bipartite_digraph(3, 3, Direction::LeftToRight).underlying_bipartite();
  EXPECT_EQ(ggk_class(k33, std::nullopt).subkind, GgkKind::CompleteBipartite);
  const auto m3 = matching_digraph(3, Direction::LeftToRight).underlying_bipartite();
  EXPECT_EQ(ggk_class(m3, std::nullopt).subkind, GgkKind::PerfectMatching);
  const auto c3 = complement_matching_digraph(3, Direction::LeftToRight).underlying_bipartite();
  EXPECT_EQ(ggk_class(c3, std::nullopt).subkind, GgkKind::ComplementOfMatching);
  EXPECT_EQ(ggk_class(empty_digraph(2, 4).underlying_bipartite(), std::nullopt).subkind, GgkKind::EmptyBipartite);
}

TEST(GgkClass, GenericAndInconclusive) {
  const auto g = generic_bipartite_approx(spec(12, 2, 4)).underlying_bipartite();
  const auto label = ggk_class(g, 2);
  EXPECT_EQ(label.kind, ClassCase::BipartiteHomogeneous);
  EXPECT_EQ(label.subkind, GgkKind::GenericBipartite);
  ASSERT_TRUE(label.report);
  EXPECT_TRUE(label.report->holds);

  const Edges path = {{"x1", "y1"}, {"x2", "y1"}};
  const auto p = UndirectedBipartiteGraph::build({"x1", "x2"}, {"y1"}, path);
  EXPECT_EQ(ggk_class(p, std::nullopt).subkind, GgkKind::CompleteBipartite);
  const Edges star = {{"x1", "y1"}, {"x1", "y2"}};
  const auto s = UndirectedBipartiteGraph::build({"x1", "x2"}, {"y1", "y2"}, star);
  const auto inc = ggk_class(s, 1);
  EXPECT_EQ(inc.kind, ClassCase::Inconclusive);
  EXPECT_FALSE(inc.reason.empty());
  ASSERT_TRUE(inc.report);
  EXPECT_FALSE(inc.report->holds);
}

TEST(DistinctNeighbourhoods, Examples) {
  EXPECT_TRUE(distinct_neighbourhoods(m_kappa(3, Direction::LeftToRight)));
  EXPECT_FALSE(distinct_neighbourhoods(complete_bipartite_digraph(2, 2, Direction::LeftToRight)));
  EXPECT_FALSE(distinct_neighbourhoods(complete_bipartite_digraph(2, 2, Direction::RightToLeft)));
  EXPECT_FALSE(distinct_neighbourhoods(empty_digraph(2, 2)));
}

TEST(IsMKappa, Examples) {
  EXPECT_EQ(is_m_kappa(directed_four_cycle()), 2u);
  EXPECT_EQ(is_m_kappa(m_kappa(5, Direction::LeftToRight)), 5u);
  EXPECT_EQ(is_m_kappa(m_kappa(5, Direction::RightToLeft)), 5u);
  EXPECT_EQ(m_kappa_direction(m_kappa(4, Direction::RightToLeft)), Direction::RightToLeft);
  EXPECT_FALSE(is_m_kappa(complete_bipartite_digraph(3, 3, Direction::LeftToRight)));
  EXPECT_FALSE(is_m_kappa(matching_digraph(1, Direction::LeftToRight)));
  EXPECT_THROW(m_kappa(1, Direction::LeftToRight), Error);
  EXPECT_FALSE(is_m_kappa(empty_digraph(3, 3)));
}

TEST(IsMKappa, RecognisesRelabelledCopies) {
  std::mt19937_64 rng(3);
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto r = gen::relabel(rng, m_kappa(k, Direction::RightToLeft));
    EXPECT_EQ(is_m_kappa(r.d), k);
  }
}

TEST(ClassifyExact, Examples) {
  const auto a = classify_exact(m_kappa(2, Direction::LeftToRight));
  EXPECT_EQ(a.kind, ClassCase::MKappa);
  EXPECT_EQ(a.kappa, 2u);

  const auto b = classify_exact(matching_digraph(2, Direction::LeftToRight));
  EXPECT_EQ(b.kind, ClassCase::BipartiteHomogeneous);
  EXPECT_EQ(b.subkind, GgkKind::PerfectMatching);
  EXPECT_EQ(b.direction, Direction::LeftToRight);

  const Edges e = {{"x1", "y1"}};
  const auto d = TwoPartiteDigraph::build({"x1", "x2"}, {"y1"}, e);
  const auto c = classify_exact(d);
  EXPECT_EQ(c.kind, ClassCase::NotHomogeneous);
  ASSERT_TRUE(c.verdict);
  ASSERT_TRUE(c.verdict->counterexample);
  EXPECT_FALSE(extends_to_automorphism(d, *c.verdict->counterexample));
}

TEST(ClassifyExact, EmptyHasNoDirection) {
  const auto l = classify_exact(empty_digraph(2, 2));
  EXPECT_EQ(l.kind, ClassCase::BipartiteHomogeneous);
  EXPECT_EQ(l.subkind, GgkKind::EmptyBipartite);
  EXPECT_FALSE(l.direction);
}

TEST(ClassifyExact, MKappaAcrossSizes) {
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto l = classify_exact(m_kappa(k, Direction::RightToLeft));
    EXPECT_EQ(l.kind, ClassCase::MKappa);
    EXPECT_EQ(l.kappa, k);
  }
}

TEST(ClassifyProfile, Examples) {
  const auto two = generic_2partite_approx(spec(24, 3, 2));
  const auto a = classify_profile(two, 3);
  EXPECT_EQ(a.kind, ClassCase::Generic2Partite);
  ASSERT_TRUE(a.report);
  EXPECT_TRUE(a.report->holds);
  EXPECT_FALSE(a.perp_irregular);

  const auto orient = generic_orientation_approx(spec(18, 2, 2));
  EXPECT_EQ(classify_profile(orient, 2).kind, ClassCase::GenericOrientation);

  const auto m = classify_profile(m_kappa(4, Direction::LeftToRight), 2);
  EXPECT_EQ(m.kind, ClassCase::MKappa);
  EXPECT_EQ(m.kappa, 4u);
}

TEST(ClassifyProfile, BipartiteBranchAndInconclusive) {
  const auto b = classify_profile(complement_matching_digraph(4, Direction::RightToLeft), 2);
  EXPECT_EQ(b.kind, ClassCase::BipartiteHomogeneous);
  EXPECT_EQ(b.subkind, GgkKind::ComplementOfMatching);
  EXPECT_EQ(b.direction, Direction::RightToLeft);

  std::mt19937_64 rng(8);
  const auto noisy = gen::random_digraph(rng, 4, 4, {0, 1, 1});
  const auto c = classify_profile(noisy, 3);
  EXPECT_EQ(c.kind, ClassCase::Inconclusive);
  EXPECT_NE(c.reason.find("2-partite"), std::string::npos);

  const Edges e = {{"x1", "y1"}, {"y2", "x1"}};
  const auto mixed = TwoPartiteDigraph::build({"x1", "x2"}, {"y1", "y2"}, e);
  const auto d = classify_profile(mixed, 1);
  EXPECT_EQ(d.kind, ClassCase::Inconclusive);
  EXPECT_TRUE(d.perp_irregular);
  EXPECT_NE(d.reason.find("orientation"), std::string::npos);
}

class ClassifyProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ClassifyProperties, ExactLabelsAgreeWithOracle) {
  std::mt19937_64 rng(GetParam());
  const auto d = gen::random_digraph(rng, 1 + rng() % 3, 1 + rng() % 3, {3, 1, 1});
  const auto label = classify_exact(d);
  EXPECT_EQ(label.kind == ClassCase::NotHomogeneous, !oracle::homogeneous(d));
  EXPECT_NE(label.kind, ClassCase::Inconclusive);
  if (label.kind == ClassCase::MKappa) {
    EXPECT_TRUE(distinct_neighbourhoods(d));
  }
}

TEST_P(ClassifyProperties, LabelsSurviveRelabelling) {
  std::mt19937_64 rng(GetParam());
  const auto d = gen::random_digraph(rng, 1 + rng() % 3, 1 + rng() % 3, {2, 1, 1});
  const auto r = gen::relabel(rng, d);
  const auto a = classify_exact(d), b = classify_exact(r.d);
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.subkind, b.subkind);
  EXPECT_EQ(a.direction, b.direction);
  const auto p = classify_profile(d, 2), q = classify_profile(r.d, 2);
  EXPECT_EQ(p.kind, q.kind);
  EXPECT_EQ(p.subkind, q.subkind);
  EXPECT_EQ(p.perp_irregular, q.perp_irregular);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ClassifyProperties, ::testing::Range<std::uint64_t>(0, 50));
