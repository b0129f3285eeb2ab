#pragma once

// Level-t extension properties.
//
// A requirement lives on one side S and names three disjoint vertex sets
// A, B, C of S. A witness is a vertex w of the opposite side with
// A ⊆ N+(w), B ⊆ N-(w) and C ⊆ w^perp. For undirected bipartite graphs A is
// "adjacent to w", C is "not adjacent to w" and B stays empty.
//
// Modes:
//   Bipartite    A, C over the underlying graph
//   TwoPartite   A, B; the underlying graph must also be complete
//   Orientation  A, B, C

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "twopart/core.hpp"

namespace twopart {

enum class GenericMode { Bipartite, TwoPartite, Orientation };

constexpr std::string_view to_string(GenericMode m) noexcept {
  switch (m) {
    case GenericMode::Bipartite: return "bipartite";
    case GenericMode::TwoPartite: return "2partite";
    case GenericMode::Orientation: return "orientation";
  }
  return "?";
}

struct Requirement {
  Side side = Side::Left;
  std::vector<std::size_t> a;  // indices on `side`, ascending
  std::vector<std::size_t> b;
  std::vector<std::size_t> c;

  std::size_t size() const noexcept { return a.size() + b.size() + c.size(); }

  /// Side, then sizes of A, B, C, then the index lists.
  friend bool operator<(const Requirement& x, const Requirement& y) {
    return std::tuple(x.side, x.a.size(), x.b.size(), x.c.size(), x.a, x.b, x.c) <
           std::tuple(y.side, y.a.size(), y.b.size(), y.c.size(), y.a, y.b, y.c);
  }
  friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct GenericityReport {
  GenericMode mode = GenericMode::TwoPartite;
  std::size_t level = 0;
  bool holds = true;
  /// Requirements with no witness, in normalized order.
  std::vector<Requirement> defects;
  /// TwoPartite only: a non-adjacent (X index, Y index) pair when the
  /// underlying graph is not complete.
  std::optional<std::pair<std::size_t, std::size_t>> structural_defect;
  /// Set when the defect list was cut short by CheckOptions::max_defects.
  bool truncated = false;
};

struct CheckOptions {
  /// Stop after this many defects; 0 collects all of them.
  std::size_t max_defects = 0;
  unsigned jobs = 1;
};

namespace detail {

inline void check_requirement(const Requirement& req, std::size_t side_size) {
  std::vector<std::size_t> all;
  for (const auto* s : {&req.a, &req.b, &req.c}) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw Error(ErrorCode::InvalidArgument, "requirement sets are not pairwise disjoint");
  }
  if (!all.empty() && all.back() >= side_size) {
    throw Error(ErrorCode::UnknownVertex, "requirement names a vertex outside its side");
  }
}

}  // namespace detail

/// First vertex w of the opposite side (stored order, skipping `exclude`)
/// with A ⊆ N+(w), B ⊆ N-(w), C ⊆ w^perp.
inline std::optional<Vertex> brute_witness_scan(const TwoPartiteDigraph& d, const Requirement& req,
                                                std::span<const Vertex> exclude = {}) {
  detail::check_requirement(req, d.side_size(req.side));
  const Side ws = opposite(req.side);
  for (std::size_t w = 0; w < d.side_size(ws); ++w) {
    const Vertex cand{ws, w};
    if (std::find(exclude.begin(), exclude.end(), cand) != exclude.end()) continue;
    auto all = [&](const std::vector<std::size_t>& set, Relation r) {
      return std::all_of(set.begin(), set.end(), [&](std::size_t u) { return d.relation(cand, u) == r; });
    };
    if (all(req.a, Relation::Out) && all(req.b, Relation::In) && all(req.c, Relation::Perp)) {
      return cand;
    }
  }
  return std::nullopt;
}

/// Undirected form: A adjacent to w, C not adjacent to w; B must be empty.
inline std::optional<Vertex> brute_witness_scan(const UndirectedBipartiteGraph& g,
                                                const Requirement& req,
                                                std::span<const Vertex> exclude = {}) {
  if (!req.b.empty()) {
    throw Error(ErrorCode::InvalidArgument, "undirected requirements have no B set");
  }
  detail::check_requirement(req, g.side_size(req.side));
  const Side ws = opposite(req.side);
  for (std::size_t w = 0; w < g.side_size(ws); ++w) {
    const Vertex cand{ws, w};
    if (std::find(exclude.begin(), exclude.end(), cand) != exclude.end()) continue;
    const bool ok =
        std::all_of(req.a.begin(), req.a.end(), [&](std::size_t u) { return g.adjacent_to(cand, u); }) &&
        std::all_of(req.c.begin(), req.c.end(), [&](std::size_t u) { return !g.adjacent_to(cand, u); });
    if (ok) return cand;
  }
  return std::nullopt;
}

namespace detail {

/// For each vertex u of each side and each label (A, B, C), the set of
/// opposite vertices w that satisfy that label for u, as 64-bit words.
class RelationTable {
 public:
  static constexpr int kA = 0, kB = 1, kC = 2;

  static RelationTable from_digraph(const TwoPartiteDigraph& d) {
    RelationTable t(d.left_size(), d.right_size());
    for (Side s : {Side::Left, Side::Right}) {
      for (std::size_t u = 0; u < d.side_size(s); ++u) {
        for (std::size_t w = 0; w < d.side_size(opposite(s)); ++w) {
          // u ∈ N+(w) iff u sees w as In.
          switch (d.relation({s, u}, w)) {
            case Relation::In: t.set(s, u, kA, w); break;
            case Relation::Out: t.set(s, u, kB, w); break;
            case Relation::Perp: t.set(s, u, kC, w); break;
          }
        }
      }
    }
    return t;
  }

  static RelationTable from_graph(const UndirectedBipartiteGraph& g) {
    RelationTable t(g.left_size(), g.right_size());
    for (Side s : {Side::Left, Side::Right}) {
      for (std::size_t u = 0; u < g.side_size(s); ++u) {
        for (std::size_t w = 0; w < g.side_size(opposite(s)); ++w) {
          t.set(s, u, g.adjacent_to({s, u}, w) ? kA : kC, w);
        }
      }
    }
    return t;
  }

  std::size_t side_size(Side s) const { return s == Side::Left ? m_ : n_; }
  std::size_t words(Side witness_side) const { return (side_size(witness_side) + 63) / 64; }

  const std::uint64_t* row(Side s, std::size_t u, int label) const {
    const auto& rows = s == Side::Left ? left_ : right_;
    return rows.data() + (u * 3 + static_cast<std::size_t>(label)) * words(opposite(s));
  }

 private:
  RelationTable(std::size_t m, std::size_t n) : m_(m), n_(n) {
    left_.assign(m * 3 * words(Side::Right), 0);
    right_.assign(n * 3 * words(Side::Left), 0);
  }

  void set(Side s, std::size_t u, int label, std::size_t w) {
    auto& rows = s == Side::Left ? left_ : right_;
    const std::size_t base = (u * 3 + static_cast<std::size_t>(label)) * words(opposite(s));
    rows[base + w / 64] |= std::uint64_t{1} << (w % 64);
  }

  std::size_t m_, n_;
  std::vector<std::uint64_t> left_, right_;
};

/// Walks every requirement of size <= level on one side, narrowing the set
/// of admissible witnesses one element at a time.
class DefectCollector {
 public:
  DefectCollector(const RelationTable& table, Side side, std::size_t level,
                  std::span<const int> labels, std::size_t max_defects)
      : table_(table),
        side_(side),
        level_(level),
        labels_(labels.begin(), labels.end()),
        max_defects_(max_defects),
        words_(table.words(opposite(side))) {
    buffers_.assign((level + 1) * std::max<std::size_t>(words_, 1), 0);
    const std::size_t n = table.side_size(opposite(side));
    for (std::size_t w = 0; w < n; ++w) buffers_[w / 64] |= std::uint64_t{1} << (w % 64);
  }

  /// Root (empty) requirement only.
  void visit_root() { emit_if_empty(0); }

  /// All requirements whose smallest element is `first`.
  void visit_from(std::size_t first) {
    if (level_ == 0 || full()) return;
    for (int label : labels_) {
      push(first, label);
      narrow(0, first, label);
      descend(1, first);
      pop(label);
      if (full()) return;
    }
  }

  std::vector<Requirement>& defects() { return defects_; }
  bool full() const { return max_defects_ != 0 && defects_.size() >= max_defects_; }

 private:
  std::uint64_t* buffer(std::size_t depth) { return buffers_.data() + depth * std::max<std::size_t>(words_, 1); }

  void narrow(std::size_t depth, std::size_t u, int label) {
    const std::uint64_t* src = buffer(depth);
    std::uint64_t* dst = buffer(depth + 1);
    const std::uint64_t* rel = table_.row(side_, u, label);
    for (std::size_t k = 0; k < words_; ++k) dst[k] = src[k] & rel[k];
  }

  void emit_if_empty(std::size_t depth) {
    const std::uint64_t* cur = buffer(depth);
    for (std::size_t k = 0; k < words_; ++k) {
      if (cur[k]) return;
    }
    if (full()) return;
    Requirement r{side_, current_[0], current_[1], current_[2]};
    defects_.push_back(std::move(r));
  }

  void push(std::size_t u, int label) { current_[static_cast<std::size_t>(label)].push_back(u); }
  void pop(int label) { current_[static_cast<std::size_t>(label)].pop_back(); }

  void descend(std::size_t depth, std::size_t last) {
    emit_if_empty(depth);
    if (depth == level_ || full()) return;
    const std::size_t n = table_.side_size(side_);
    for (std::size_t u = last + 1; u < n; ++u) {
      for (int label : labels_) {
        push(u, label);
        narrow(depth, u, label);
        descend(depth + 1, u);
        pop(label);
        if (full()) return;
      }
    }
  }

  const RelationTable& table_;
  Side side_;
  std::size_t level_;
  std::vector<int> labels_;
  std::size_t max_defects_;
  std::size_t words_;
  std::vector<std::uint64_t> buffers_;
  std::vector<std::size_t> current_[3];
  std::vector<Requirement> defects_;
};

inline std::vector<int> labels_for(GenericMode mode) {
  switch (mode) {
    case GenericMode::Bipartite: return {RelationTable::kA, RelationTable::kC};
    case GenericMode::TwoPartite: return {RelationTable::kA, RelationTable::kB};
    case GenericMode::Orientation: return {RelationTable::kA, RelationTable::kB, RelationTable::kC};
  }
  return {};
}

inline std::vector<Requirement> collect_defects(const RelationTable& table, GenericMode mode,
                                                std::size_t level, const CheckOptions& opts,
                                                bool& truncated) {
  const std::vector<int> labels = labels_for(mode);
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<Requirement> all;
  truncated = false;
  for (Side side : {Side::Left, Side::Right}) {
    const std::size_t n = table.side_size(side);
    std::vector<std::vector<Requirement>> parts(jobs);
    std::vector<char> part_full(jobs, 0);
    auto work = [&](unsigned j) {
      DefectCollector collector(table, side, level, labels, opts.max_defects);
      if (j == 0) collector.visit_root();
      for (std::size_t first = j; first < n; first += jobs) collector.visit_from(first);
      part_full[j] = collector.full();
      parts[j] = std::move(collector.defects());
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    }
    for (unsigned j = 0; j < jobs; ++j) {
      truncated |= part_full[j] != 0;
      all.insert(all.end(), std::make_move_iterator(parts[j].begin()),
                 std::make_move_iterator(parts[j].end()));
    }
  }
  std::sort(all.begin(), all.end());
  if (opts.max_defects != 0 && all.size() >= opts.max_defects) {
    truncated = true;
    all.resize(opts.max_defects);
  }
  return all;
}

inline GenericityReport finish(GenericMode mode, std::size_t level, std::vector<Requirement> defects,
                               bool truncated,
                               std::optional<std::pair<std::size_t, std::size_t>> structural = {}) {
  GenericityReport r;
  r.mode = mode;
  r.level = level;
  r.defects = std::move(defects);
  r.truncated = truncated;
  r.structural_defect = structural;
  r.holds = r.defects.empty() && !structural;
  return r;
}

}  // namespace detail

/// Every pair of disjoint U, V on one side with |U|+|V| <= t must have an
/// opposite vertex adjacent to all of U and none of V.
inline GenericityReport check_generic_bipartite(const UndirectedBipartiteGraph& g, std::size_t t,
                                                const CheckOptions& opts = {}) {
  bool truncated = false;
  auto defects = detail::collect_defects(detail::RelationTable::from_graph(g), GenericMode::Bipartite,
                                         t, opts, truncated);
  return detail::finish(GenericMode::Bipartite, t, std::move(defects), truncated);
}

/// Complete underlying graph, plus a witness for every disjoint (A, B) with
/// |A|+|B| <= t on either side.
inline GenericityReport check_generic_2partite(const TwoPartiteDigraph& d, std::size_t t,
                                               const CheckOptions& opts = {}) {
  std::optional<std::pair<std::size_t, std::size_t>> missing;
  for (std::size_t i = 0; i < d.left_size() && !missing; ++i) {
    for (std::size_t j = 0; j < d.right_size(); ++j) {
      if (d.state(i, j) == PairState::None) { missing = std::pair{i, j}; break; }
    }
  }
  bool truncated = false;
  auto defects = detail::collect_defects(detail::RelationTable::from_digraph(d),
                                         GenericMode::TwoPartite, t, opts, truncated);
  return detail::finish(GenericMode::TwoPartite, t, std::move(defects), truncated, missing);
}

/// A witness for every disjoint (A, B, C) with |A|+|B|+|C| <= t on either side.
inline GenericityReport check_generic_orientation(const TwoPartiteDigraph& d, std::size_t t,
                                                  const CheckOptions& opts = {}) {
  bool truncated = false;
  auto defects = detail::collect_defects(detail::RelationTable::from_digraph(d),
                                         GenericMode::Orientation, t, opts, truncated);
  return detail::finish(GenericMode::Orientation, t, std::move(defects), truncated);
}

/// Dispatch by mode; Bipartite runs on the underlying graph.
inline GenericityReport check_generic(const TwoPartiteDigraph& d, GenericMode mode, std::size_t t,
                                      const CheckOptions& opts = {}) {
  switch (mode) {
    case GenericMode::Bipartite: return check_generic_bipartite(d.underlying_bipartite(), t, opts);
    case GenericMode::TwoPartite: return check_generic_2partite(d, t, opts);
    case GenericMode::Orientation: return check_generic_orientation(d, t, opts);
  }
  return {};
}

/// Largest level <= cap at which the check still holds (-1 if level 0 fails).
inline int achieved_level(const TwoPartiteDigraph& d, GenericMode mode, std::size_t cap) {
  CheckOptions first_only;
  first_only.max_defects = 1;
  int best = -1;
  for (std::size_t t = 0; t <= cap; ++t) {
    if (!check_generic(d, mode, t, first_only).holds) break;
    best = static_cast<int>(t);
  }
  return best;
}

}  // namespace twopart
