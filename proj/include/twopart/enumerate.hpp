#pragma once

// Exhaustive enumeration of small 2-partite digraphs up to side-preserving
// isomorphism, the census of the homogeneous ones, and the finite check of
// the classification against it.

#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "twopart/catalog.hpp"
#include "twopart/classify.hpp"
#include "twopart/core.hpp"
#include "twopart/iso.hpp"

namespace twopart {

struct EnumerateOptions {
  /// Allow m * n above `budget`.
  bool force = false;
  std::size_t budget = 12;
  unsigned jobs = 1;
};

struct CensusEntry {
  CanonicalForm canonical;
  TwoPartiteDigraph representative;
  HomogeneityVerdict verdict;
  ClassLabel label;
};

namespace detail {

inline std::uint64_t power_of_three(std::size_t k) {
  std::uint64_t p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

/// The pair-state vector with index `code` in lexicographic order: the
/// first pair is the most significant base-3 digit.
inline TwoPartiteDigraph decode(std::size_t m, std::size_t n, std::uint64_t code) {
  std::vector<PairState> states(m * n);
  for (std::size_t k = m * n; k-- > 0; code /= 3) states[k] = static_cast<PairState>(code % 3);
  return from_grid(m, n, std::move(states));
}

inline void check_budget(std::size_t m, std::size_t n, const EnumerateOptions& opts) {
  if (m * n > opts.budget && !opts.force) {
    throw Error(ErrorCode::BudgetExceeded,
                "3^" + std::to_string(m * n) + " pair-state vectors exceed the budget of 3^" +
                    std::to_string(opts.budget) + "; pass force to override");
  }
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      for (std::size_t i = j; i < count; i += jobs) fn(i);
    });
  }
}

}  // namespace detail

/// One representative per isomorphism class with |X| = m, |Y| = n: the
/// lexicographically first pair-state vector of the class, listed in
/// lexicographic order (ids x1.., y1..).
inline std::vector<TwoPartiteDigraph> enumerate_all(std::size_t m, std::size_t n,
                                                    const EnumerateOptions& opts = {}) {
  detail::check_budget(m, n, opts);
  const std::uint64_t total = detail::power_of_three(m * n);
  std::map<std::string, std::uint64_t> first_code;
  std::mutex guard;
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::jthread> workers;
  auto work = [&](unsigned j) {
    for (std::uint64_t code = j; code < total; code += jobs) {
      std::string key = canonical_form(detail::decode(m, n, code)).bytes;
      std::lock_guard lock(guard);
      auto [it, inserted] = first_code.emplace(std::move(key), code);
      if (!inserted && code < it->second) it->second = code;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(work, j);
    workers.clear();
  }
  std::vector<std::uint64_t> codes;
  codes.reserve(first_code.size());
  for (const auto& [key, code] : first_code) codes.push_back(code);
  std::sort(codes.begin(), codes.end());
  std::vector<TwoPartiteDigraph> out;
  out.reserve(codes.size());
  for (std::uint64_t code : codes) out.push_back(detail::decode(m, n, code));
  return out;
}

/// Homogeneous classes over 0 <= m <= m_max, 0 <= n <= n_max, sorted by
/// canonical form, each labeled by classify_exact.
inline std::vector<CensusEntry> census_homogeneous(std::size_t m_max, std::size_t n_max,
                                                   const EnumerateOptions& opts = {}) {
  for (std::size_t m = 0; m <= m_max; ++m) {
    for (std::size_t n = 0; n <= n_max; ++n) detail::check_budget(m, n, opts);
  }
  std::vector<TwoPartiteDigraph> all;
  for (std::size_t m = 0; m <= m_max; ++m) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      auto classes = enumerate_all(m, n, opts);
      all.insert(all.end(), std::make_move_iterator(classes.begin()), std::make_move_iterator(classes.end()));
    }
  }
  std::vector<std::optional<CensusEntry>> slots(all.size());
  detail::parallel_for(all.size(), opts.jobs, [&](std::size_t i) {
    ClassLabel label = classify_exact(all[i]);
    if (!label.verdict || !label.verdict->holds) return;
    HomogeneityVerdict verdict = *label.verdict;
    slots[i] = CensusEntry{canonical_form(all[i]), all[i], std::move(verdict), std::move(label)};
  });
  std::vector<CensusEntry> census;
  for (auto& s : slots) {
    if (s) census.push_back(std::move(*s));
  }
  std::sort(census.begin(), census.end(),
            [](const CensusEntry& a, const CensusEntry& b) { return a.canonical < b.canonical; });
  return census;
}

struct TheoremReport {
  bool pass = true;
  std::size_t entries = 0;
  std::size_t bipartite_homogeneous = 0;
  std::size_t m_kappa = 0;
  /// Catalog structures looked up in the census.
  std::size_t catalog_checked = 0;
  struct Discrepancy {
    std::string what;
    TwoPartiteDigraph structure;
  };
  std::vector<Discrepancy> discrepancies;
};

/// Every catalog-constructible structure within the bounds, one per
/// (constructor, parameters, direction).
inline std::vector<std::pair<std::string, TwoPartiteDigraph>> catalog_structures(std::size_t m_max,
                                                                                  std::size_t n_max) {
  std::vector<std::pair<std::string, TwoPartiteDigraph>> out;
  auto name = [](std::string head, std::initializer_list<std::size_t> args, std::optional<Direction> dir) {
    head += "(";
    bool first = true;
    for (std::size_t a : args) {
      head += (first ? "" : ",") + std::to_string(a);
      first = false;
    }
    if (dir) head += std::string(",") + std::string(to_string(*dir));
    return head + ")";
  };
  for (std::size_t m = 0; m <= m_max; ++m) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      out.emplace_back(name("empty_digraph", {m, n}, std::nullopt), empty_digraph(m, n));
      if (m == 0 || n == 0) continue;
      for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
        out.emplace_back(name("complete_bipartite_digraph", {m, n}, d), complete_bipartite_digraph(m, n, d));
      }
    }
  }
  for (std::size_t k = 1; k <= std::min(m_max, n_max); ++k) {
    for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
      out.emplace_back(name("matching_digraph", {k}, d), matching_digraph(k, d));
      out.emplace_back(name("complement_matching_digraph", {k}, d), complement_matching_digraph(k, d));
      if (k >= 2) out.emplace_back(name("m_kappa", {k}, d), m_kappa(k, d));
    }
  }
  return out;
}

/// Checks a census against the finite classification: every entry is
/// homogeneous and labeled BipartiteHomogeneous or MKappa, every MKappa
/// entry is square with exactly |X| edges one way, and every catalog
/// structure within the bounds occurs.
inline TheoremReport check_census(const std::vector<CensusEntry>& census, std::size_t m_max, std::size_t n_max) {
  TheoremReport report;
  report.entries = census.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < census.size(); ++i) {
    const CensusEntry& e = census[i];
    index.emplace(e.canonical.bytes, i);
    auto flag = [&](std::string what) {
      report.pass = false;
      report.discrepancies.push_back({std::move(what), e.representative});
    };
    if (!e.verdict.holds) flag("census entry is not homogeneous");
    switch (e.label.kind) {
      case ClassCase::BipartiteHomogeneous: ++report.bipartite_homogeneous; break;
      case ClassCase::MKappa: {
        ++report.m_kappa;
        const TwoPartiteDigraph& d = e.representative;
        std::size_t lr = 0, rl = 0;
        for (PairState s : d.states()) {
          lr += s == PairState::LeftToRight;
          rl += s == PairState::RightToLeft;
        }
        if (d.left_size() != d.right_size() || (lr != d.left_size() && rl != d.left_size())) {
          flag("MKappa entry without a one-way perfect matching");
        }
        break;
      }
      default:
        flag("label " + std::string(to_string(e.label.kind)) + " is not realizable at finite size");
    }
  }
  for (auto& [what, d] : catalog_structures(m_max, n_max)) {
    ++report.catalog_checked;
    if (!index.contains(canonical_form(d).bytes)) {
      report.pass = false;
      report.discrepancies.push_back({what + " is missing from the census", std::move(d)});
    }
  }
  return report;
}

inline TheoremReport verify_theorem_finite(std::size_t m_max, std::size_t n_max, const EnumerateOptions& opts = {}) {
  return check_census(census_homogeneous(m_max, n_max, opts), m_max, n_max);
}

}  // namespace twopart
