#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "twopart/catalog.hpp"
#include "twopart/genericity.hpp"

using namespace twopart;

namespace {

Requirement req(Side s, std::vector<std::size_t> a, std::vector<std::size_t> b, std::vector<std::size_t> c) {
  return Requirement{s, std::move(a), std::move(b), std::move(c)};
}

const GenericMode kModes[] = {GenericMode::Bipartite, GenericMode::TwoPartite, GenericMode::Orientation};

}  // namespace

TEST(BruteWitnessScan, Examples) {
  const auto d = m_kappa(3, Direction::LeftToRight);
  EXPECT_EQ(brute_witness_scan(d, req(Side::Left, {}, {}, {})), (Vertex{Side::Right, 0}));
  EXPECT_FALSE(brute_witness_scan(m_kappa(5, Direction::LeftToRight), req(Side::Left, {}, {0, 1}, {})));
  EXPECT_EQ(brute_witness_scan(complete_bipartite_digraph(2, 2, Direction::LeftToRight), req(Side::Right, {0}, {}, {})),
            (Vertex{Side::Left, 0}));
}

TEST(BruteWitnessScan, ExcludeSkipsCandidates) {
  const auto d = empty_digraph(2, 3);
  const std::vector<Vertex> skip = {{Side::Right, 0}, {Side::Right, 1}};
  EXPECT_EQ(brute_witness_scan(d, req(Side::Left, {}, {}, {0}), skip), (Vertex{Side::Right, 2}));
}

TEST(BruteWitnessScan, MalformedRequirements) {
  const auto d = empty_digraph(2, 2);
  EXPECT_THROW(brute_witness_scan(d, req(Side::Left, {0}, {0}, {})), Error);
  EXPECT_THROW(brute_witness_scan(d, req(Side::Left, {5}, {}, {})), Error);
  EXPECT_THROW(brute_witness_scan(d.underlying_bipartite(), req(Side::Left, {}, {1}, {})), Error);
}

TEST(CheckBipartite, Examples) {
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_TRUE(check_generic_bipartite(empty_digraph(n, n).underlying_bipartite(), 0).holds);
  }
  const auto k33 = complete_bipartite_digraph(3, 3, Direction::LeftToRight).underlying_bipartite();
  const auto r = check_generic_bipartite(k33, 1);
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.defects.empty());
  EXPECT_EQ(r.defects.front(), req(Side::Left, {}, {}, {0}));
}

TEST(CheckBipartite, EmptySideFailsEvenAtLevelZero) {
  const auto r = check_generic_bipartite(empty_digraph(2, 0).underlying_bipartite(), 0);
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.defects.size(), 1u);
  EXPECT_EQ(r.defects.front(), req(Side::Left, {}, {}, {}));
}

TEST(Check2Partite, Examples) {
  const auto m5 = m_kappa(5, Direction::LeftToRight);
  EXPECT_TRUE(check_generic_2partite(m5, 1).holds);
  const auto r = check_generic_2partite(m5, 2);
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.defects.empty());
  const Requirement& first = r.defects.front();
  EXPECT_EQ(first.side, Side::Left);
  EXPECT_TRUE(first.a.empty());
  EXPECT_EQ(first.b.size(), 2u);
  EXPECT_FALSE(brute_witness_scan(m5, first));

  const auto e = check_generic_2partite(empty_digraph(2, 2), 0);
  EXPECT_FALSE(e.holds);
  EXPECT_TRUE(e.defects.empty());
  EXPECT_EQ(e.structural_defect, (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(CheckOrientation, Examples) {
  EXPECT_TRUE(check_generic_orientation(empty_digraph(3, 2), 0).holds);
  const auto r = check_generic_orientation(complete_bipartite_digraph(3, 3, Direction::LeftToRight), 1);
  EXPECT_FALSE(r.holds);
  const auto want = req(Side::Left, {0}, {}, {});
  EXPECT_NE(std::find(r.defects.begin(), r.defects.end(), want), r.defects.end());
}

TEST(CheckOptions, TruncationAndJobs) {
  const auto d = complete_bipartite_digraph(4, 4, Direction::LeftToRight);
  const auto all = check_generic_orientation(d, 2);
  CheckOptions cut;
  cut.max_defects = 3;
  const auto some = check_generic_orientation(d, 2, cut);
  EXPECT_TRUE(some.truncated);
  EXPECT_FALSE(all.truncated);
  ASSERT_EQ(some.defects.size(), 3u);
  EXPECT_TRUE(std::is_sorted(some.defects.begin(), some.defects.end()));
  for (const Requirement& r : some.defects) {
    EXPECT_TRUE(std::binary_search(all.defects.begin(), all.defects.end(), r));
  }
  CheckOptions par;
  par.jobs = 3;
  EXPECT_EQ(check_generic_orientation(d, 2, par).defects, all.defects);
}

TEST(AchievedLevel, MKappa) {
  EXPECT_EQ(achieved_level(m_kappa(5, Direction::LeftToRight), GenericMode::TwoPartite, 4), 1);
  EXPECT_EQ(achieved_level(empty_digraph(2, 2), GenericMode::TwoPartite, 4), -1);
}

class GenericityProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GenericityProperties, DefectsAreExactlyTheUnwitnessedRequirements) {
  std::mt19937_64 rng(GetParam());
  const auto d = gen::random_digraph(rng, rng() % 6, rng() % 6);
  const std::size_t t = rng() % 3;
  for (GenericMode mode : kModes) {
    const auto report = check_generic(d, mode, t);
    std::set<Requirement> defects(report.defects.begin(), report.defects.end());
    EXPECT_EQ(defects.size(), report.defects.size());
    EXPECT_TRUE(std::is_sorted(report.defects.begin(), report.defects.end()));
    std::size_t expected = 0;
    for (const Requirement& r : oracle::requirements(d, mode, t)) {
      const bool w = oracle::witnessed(d, mode, r);
      expected += !w;
      EXPECT_EQ(defects.count(r) == 0, w) << to_string(mode) << " t=" << t;
    }
    EXPECT_EQ(defects.size(), expected);
  }
}

TEST_P(GenericityProperties, LevelsAreMonotone) {
  std::mt19937_64 rng(GetParam());
  const auto d = gen::random_digraph(rng, 3 + rng() % 6, 3 + rng() % 6, {1, 2, 2});
  for (GenericMode mode : kModes) {
    bool previous = true;
    for (std::size_t t = 0; t <= 3; ++t) {
      const bool holds = check_generic(d, mode, t).holds;
      if (!previous) {
        EXPECT_FALSE(holds);
      }
      previous = holds;
    }
  }
}

TEST_P(GenericityProperties, SideSwapMirrorsDefects) {
  std::mt19937_64 rng(GetParam());
  const auto d = gen::random_digraph(rng, 1 + rng() % 5, 1 + rng() % 5);
  const auto s = d.swap_sides();
  for (GenericMode mode : kModes) {
    const auto a = check_generic(d, mode, 2);
    const auto b = check_generic(s, mode, 2);
    std::set<Requirement> mirrored;
    for (Requirement r : a.defects) {
      r.side = opposite(r.side);
      mirrored.insert(r);
    }
    EXPECT_EQ(mirrored, std::set<Requirement>(b.defects.begin(), b.defects.end()));
  }
}

TEST_P(GenericityProperties, ModesAreCoherent) {
  std::mt19937_64 rng(GetParam());
  const std::size_t m = 2 + rng() % 7, n = 2 + rng() % 7;
  const auto full = gen::random_digraph(rng, m, n, {0, 1, 1});
  for (std::size_t t = 0; t <= 2; ++t) {
    EXPECT_TRUE(check_generic_2partite(full, t).structural_defect == std::nullopt);
  }
  const auto d = gen::random_digraph(rng, m, n);
  for (std::size_t t = 0; t <= 2; ++t) {
    if (check_generic_orientation(d, t).holds) {
      EXPECT_TRUE(check_generic_bipartite(d.underlying_bipartite(), t).holds);
    }
  }
  const auto two = gen::random_digraph(rng, m, n, {0, 1, 1});
  EXPECT_EQ(check_generic(two.underlying_bipartite().as_digraph(), GenericMode::Bipartite, 1).holds,
            check_generic_bipartite(two.underlying_bipartite(), 1).holds);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GenericityProperties, ::testing::Range<std::uint64_t>(0, 60));

TEST(GenericityApproximants, BuilderOutputsPassTheirLevel) {
  ApproximantSpec s;
  s.side_size = 12;
  s.level = 2;
  s.seed = 7;
  EXPECT_TRUE(check_generic_bipartite(generic_bipartite_approx(s).underlying_bipartite(), 2).holds);
  s.side_size = 18;
  EXPECT_TRUE(check_generic_orientation(generic_orientation_approx(s), 2).holds);
}
