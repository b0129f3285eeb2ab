#pragma once

// Classification of homogeneous 2-partite digraphs.
//
// A 2-partite digraph is homogeneous iff it is isomorphic to one of
//   (i)   a homogeneous bipartite digraph (an orientation, all edges one
//         way, of a complete / empty / perfect matching / complement of a
//         perfect matching / generic bipartite graph),
//   (ii)  M_kappa for some kappa >= 2,
//   (iii) the generic 2-partite digraph,
//   (iv)  the generic orientation of the generic bipartite graph.
// Only (i) with a finite kind and (ii) occur among finite structures.
//
// classify_exact decides homogeneity exactly and then names the class.
// classify_profile never runs the homogeneity decider; it walks the case
// split on structure and level-t extension properties, which is the only
// meaningful reading for finite approximants of (iii) and (iv).

#include <optional>
#include <string>

#include "twopart/catalog.hpp"
#include "twopart/core.hpp"
#include "twopart/genericity.hpp"
#include "twopart/iso.hpp"

namespace twopart {

enum class ClassCase {
  BipartiteHomogeneous,
  MKappa,
  Generic2Partite,
  GenericOrientation,
  NotHomogeneous,
  Inconclusive,
};

enum class GgkKind {
  CompleteBipartite,
  EmptyBipartite,
  PerfectMatching,
  ComplementOfMatching,
  GenericBipartite,
};

constexpr std::string_view to_string(ClassCase c) noexcept {
  switch (c) {
    case ClassCase::BipartiteHomogeneous: return "BipartiteHomogeneous";
    case ClassCase::MKappa: return "MKappa";
    case ClassCase::Generic2Partite: return "Generic2Partite";
    case ClassCase::GenericOrientation: return "GenericOrientation";
    case ClassCase::NotHomogeneous: return "NotHomogeneous";
    case ClassCase::Inconclusive: return "Inconclusive";
  }
  return "?";
}

constexpr std::string_view to_string(GgkKind k) noexcept {
  switch (k) {
    case GgkKind::CompleteBipartite: return "CompleteBipartite";
    case GgkKind::EmptyBipartite: return "EmptyBipartite";
    case GgkKind::PerfectMatching: return "PerfectMatching";
    case GgkKind::ComplementOfMatching: return "ComplementOfMatching";
    case GgkKind::GenericBipartite: return "GenericBipartite";
  }
  return "?";
}

struct ClassLabel {
  ClassCase kind = ClassCase::Inconclusive;
  /// BipartiteHomogeneous only.
  std::optional<GgkKind> subkind;
  /// BipartiteHomogeneous with at least one edge: the common edge direction.
  std::optional<Direction> direction;
  /// MKappa only (>= 2).
  std::size_t kappa = 0;
  /// Exact mode: the homogeneity verdict (counterexample when NotHomogeneous).
  std::optional<HomogeneityVerdict> verdict;
  /// Profile mode: the genericity report behind a generic label, or the
  /// failing one behind Inconclusive.
  std::optional<GenericityReport> report;
  /// Inconclusive: the branch condition that failed.
  std::string reason;
  /// Profile mode: some vertices have empty perp and others do not, which a
  /// homogeneous structure with infinite neighbourhoods cannot show.
  bool perp_irregular = false;
};

/// Matches the finite GGK kinds structurally (empty, complete, perfect
/// matching, complement of a perfect matching, in that order), then the
/// generic kind at level `t` when given.
inline ClassLabel ggk_class(const UndirectedBipartiteGraph& g, std::optional<std::size_t> t) {
  ClassLabel label;
  const std::size_t m = g.left_size(), n = g.right_size();
  auto all_degrees = [&](std::size_t want_left, std::size_t want_right) {
    for (std::size_t i = 0; i < m; ++i) {
      if (g.degree({Side::Left, i}) != want_left) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (g.degree({Side::Right, j}) != want_right) return false;
    }
    return true;
  };
  std::optional<GgkKind> kind;
  if (g.edge_count() == 0) {
    kind = GgkKind::EmptyBipartite;
  } else if (g.edge_count() == m * n) {
    kind = GgkKind::CompleteBipartite;
  } else if (m == n && all_degrees(1, 1)) {
    kind = GgkKind::PerfectMatching;
  } else if (m == n && all_degrees(n - 1, n - 1)) {
    // Every vertex misses exactly one vertex: the missing pairs form a
    // perfect matching.
    kind = GgkKind::ComplementOfMatching;
  } else if (t) {
    CheckOptions few;
    few.max_defects = 16;
    GenericityReport report = check_generic_bipartite(g, *t, few);
    if (report.holds) kind = GgkKind::GenericBipartite;
    label.report = std::move(report);
  }
  if (kind) {
    label.kind = ClassCase::BipartiteHomogeneous;
    label.subkind = kind;
  } else {
    label.kind = ClassCase::Inconclusive;
    label.reason = t ? "underlying graph matches no finite GGK kind and fails the level-" +
                           std::to_string(*t) + " generic bipartite check"
                     : "underlying graph matches no finite GGK kind";
  }
  return label;
}

/// Out-neighbourhoods pairwise distinct on each side, and likewise
/// in-neighbourhoods.
inline bool distinct_neighbourhoods(const TwoPartiteDigraph& d) {
  for (Side s : {Side::Left, Side::Right}) {
    for (Relation r : {Relation::Out, Relation::In}) {
      std::vector<std::vector<char>> rows;
      for (std::size_t u = 0; u < d.side_size(s); ++u) {
        std::vector<char> row(d.side_size(opposite(s)));
        for (std::size_t w = 0; w < row.size(); ++w) row[w] = d.relation({s, u}, w) == r;
        rows.push_back(std::move(row));
      }
      std::sort(rows.begin(), rows.end());
      if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) return false;
    }
  }
  return true;
}

/// The direction in which the perfect matching of an M_kappa runs, if `d`
/// is one (for kappa = 2 both directions qualify; X->Y is reported).
inline std::optional<Direction> m_kappa_direction(const TwoPartiteDigraph& d) {
  const std::size_t k = d.left_size();
  if (k < 2 || d.right_size() != k) return std::nullopt;
  for (PairState s : d.states()) {
    if (s == PairState::None) return std::nullopt;
  }
  for (Direction dir : {Direction::LeftToRight, Direction::RightToLeft}) {
    const PairState want = state_of(dir);
    bool matching = true;
    for (std::size_t i = 0; i < k && matching; ++i) {
      std::size_t row = 0, col = 0;
      for (std::size_t j = 0; j < k; ++j) {
        row += d.state(i, j) == want;
        col += d.state(j, i) == want;
      }
      matching = row == 1 && col == 1;
    }
    // Complete underlying graph: the other direction is then the complement.
    if (matching) return dir;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> is_m_kappa(const TwoPartiteDigraph& d) {
  if (m_kappa_direction(d)) return d.left_size();
  return std::nullopt;
}

inline std::optional<Direction> edge_direction(const TwoPartiteDigraph& d) {
  if (d.edges().empty() || !d.is_bipartite_digraph()) return std::nullopt;
  return d.edges().front().first.side == Side::Left ? Direction::LeftToRight : Direction::RightToLeft;
}

inline ClassLabel classify_exact(const TwoPartiteDigraph& d, const HomogeneityOptions& opts = {}) {
  ClassLabel label;
  HomogeneityVerdict verdict = is_homogeneous(d, opts);
  const bool holds = verdict.holds;
  label.verdict = std::move(verdict);
  if (!holds) {
    label.kind = ClassCase::NotHomogeneous;
    return label;
  }
  if (d.is_bipartite_digraph()) {
    ClassLabel ggk = ggk_class(d.underlying_bipartite(), std::nullopt);
    if (ggk.kind == ClassCase::Inconclusive) {
      label.kind = ClassCase::Inconclusive;
      label.reason = "homogeneous bipartite digraph whose " + ggk.reason;
      return label;
    }
    label.kind = ClassCase::BipartiteHomogeneous;
    label.subkind = ggk.subkind;
    label.direction = edge_direction(d);
    return label;
  }
  if (auto k = is_m_kappa(d)) {
    label.kind = ClassCase::MKappa;
    label.kappa = *k;
    return label;
  }
  label.kind = ClassCase::Inconclusive;
  label.reason = "homogeneous, not bipartite, and not an M_kappa";
  return label;
}

/// Mixed empty and non-empty perp sets.
inline bool perp_irregular(const TwoPartiteDigraph& d) {
  bool zero = false, nonzero = false;
  const DegreeProfile p = d.degree_profile();
  for (const auto* side : {&p.left, &p.right}) {
    for (const DegreeTriple& t : *side) (t.perp == 0 ? zero : nonzero) = true;
  }
  return zero && nonzero;
}

inline ClassLabel classify_profile(const TwoPartiteDigraph& d, std::size_t t) {
  ClassLabel label;
  label.perp_irregular = perp_irregular(d);
  if (d.is_bipartite_digraph()) {
    ClassLabel ggk = ggk_class(d.underlying_bipartite(), t);
    label.kind = ggk.kind;
    label.subkind = ggk.subkind;
    label.report = std::move(ggk.report);
    label.reason = std::move(ggk.reason);
    if (label.kind == ClassCase::BipartiteHomogeneous) label.direction = edge_direction(d);
    return label;
  }
  if (auto k = is_m_kappa(d)) {
    label.kind = ClassCase::MKappa;
    label.kappa = *k;
    return label;
  }
  CheckOptions few;
  few.max_defects = 16;
  const DegreeProfile p = d.degree_profile();
  bool perp_empty = true;
  for (const auto* side : {&p.left, &p.right}) {
    for (const DegreeTriple& tr : *side) perp_empty &= tr.perp == 0;
  }
  if (perp_empty) {
    GenericityReport r2 = check_generic_2partite(d, t, few);
    if (r2.holds) {
      label.kind = ClassCase::Generic2Partite;
      label.report = std::move(r2);
      return label;
    }
    label.report = std::move(r2);
    label.reason = "empty perp everywhere but the level-" + std::to_string(t) +
                   " generic 2-partite check fails";
  }
  GenericityReport ro = check_generic_orientation(d, t, few);
  if (ro.holds) {
    label.kind = ClassCase::GenericOrientation;
    label.report = std::move(ro);
    label.reason.clear();
    return label;
  }
  label.kind = ClassCase::Inconclusive;
  if (!perp_empty) {
    label.report = std::move(ro);
    label.reason = "the level-" + std::to_string(t) + " generic orientation check fails";
  }
  return label;
}

}  // namespace twopart
