#pragma once

// Finite representatives of the homogeneous classes and seeded finite
// approximants of the generic ones. Vertices are named x1..xm and y1..yn.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twopart/core.hpp"
#include "twopart/genericity.hpp"

namespace twopart {

enum class Direction { LeftToRight, RightToLeft };

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::LeftToRight ? "LeftToRight" : "RightToLeft";
}

constexpr Direction reverse(Direction d) noexcept {
  return d == Direction::LeftToRight ? Direction::RightToLeft : Direction::LeftToRight;
}

constexpr PairState state_of(Direction d) noexcept {
  return d == Direction::LeftToRight ? PairState::LeftToRight : PairState::RightToLeft;
}

namespace detail {

inline std::vector<std::string> numbered(std::string_view prefix, std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
  return ids;
}

inline TwoPartiteDigraph from_grid(std::size_t m, std::size_t n, std::vector<PairState> states) {
  return TwoPartiteDigraph::from_states(numbered("x", m), numbered("y", n), std::move(states));
}

}  // namespace detail

inline TwoPartiteDigraph complete_bipartite_digraph(std::size_t m, std::size_t n, Direction dir) {
  return detail::from_grid(m, n, std::vector<PairState>(m * n, state_of(dir)));
}

inline TwoPartiteDigraph empty_digraph(std::size_t m, std::size_t n) {
  return detail::from_grid(m, n, std::vector<PairState>(m * n, PairState::None));
}

/// Edges x_i -> y_i (or y_i -> x_i).
inline TwoPartiteDigraph matching_digraph(std::size_t n, Direction dir) {
  std::vector<PairState> st(n * n, PairState::None);
  for (std::size_t i = 0; i < n; ++i) st[i * n + i] = state_of(dir);
  return detail::from_grid(n, n, std::move(st));
}

/// Edges x_i -> y_j for all i != j (or reversed).
inline TwoPartiteDigraph complement_matching_digraph(std::size_t n, Direction dir) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "complement of a matching needs n >= 1");
  std::vector<PairState> st(n * n, state_of(dir));
  for (std::size_t i = 0; i < n; ++i) st[i * n + i] = PairState::None;
  return detail::from_grid(n, n, std::move(st));
}

/// M_kappa: the perfect matching x_i~y_i runs in `matching_dir`, every other
/// cross pair runs the opposite way.
inline TwoPartiteDigraph m_kappa(std::size_t kappa, Direction matching_dir) {
  if (kappa < 2) {
    throw Error(ErrorCode::KappaTooSmall, "M_kappa needs kappa >= 2, got " + std::to_string(kappa));
  }
  std::vector<PairState> st(kappa * kappa, state_of(reverse(matching_dir)));
  for (std::size_t i = 0; i < kappa; ++i) st[i * kappa + i] = state_of(matching_dir);
  return detail::from_grid(kappa, kappa, std::move(st));
}

/// x1->y1->x2->y2->x1.
inline TwoPartiteDigraph directed_four_cycle() {
  const std::vector<TwoPartiteDigraph::IdEdge> edges = {
      {"x1", "y1"}, {"y1", "x2"}, {"x2", "y2"}, {"y2", "x1"}};
  return TwoPartiteDigraph::build({"x1", "x2"}, {"y1", "y2"}, edges);
}

struct ApproximantSpec {
  std::size_t side_size = 1;
  std::size_t level = 0;
  std::uint64_t seed = 0;
  /// Vertex budget for witness_closure.
  std::size_t growth_cap = 64;

  void validate() const {
    if (side_size < 1) throw Error(ErrorCode::InvalidArgument, "side_size must be positive");
    if (level > side_size) {
      throw Error(ErrorCode::InvalidArgument, "level " + std::to_string(level) +
                                                  " exceeds side_size " + std::to_string(side_size));
    }
    if (growth_cap < 1) throw Error(ErrorCode::InvalidArgument, "growth_cap must be positive");
  }
};

struct BuilderOptions {
  std::size_t attempts = 32;
  /// Hill-climbing steps of the cyclic phase per attempt; 0 starts from a
  /// uniform random fill instead.
  std::size_t cyclic_steps = 5'000;
  /// Annealing steps on the whole grid afterwards; 0 disables them. With
  /// both searches off this is plain random-then-verify.
  std::size_t search_steps = 300'000;
  /// The annealing indexes every (side, subset, pattern) triple; above this
  /// many it is skipped.
  std::size_t max_indexed_requirements = 4'000'000;
  /// Annealing temperatures at the first and last step.
  double hot = 1.0;
  double cold = 0.05;
};

class ApproximantNotFound : public Error {
 public:
  ApproximantNotFound(GenericMode mode, const ApproximantSpec& spec, int best_level,
                      const std::string& reason = {})
      : Error(ErrorCode::ApproximantNotFound,
              std::string("no ") + std::string(to_string(mode)) + " approximant with side " +
                  std::to_string(spec.side_size) + " reached level " + std::to_string(spec.level) +
                  "; best level achieved " + std::to_string(best_level) +
                  (reason.empty() ? "" : " (" + reason + ")")),
        best_level_(best_level) {}
  /// Highest level any attempt satisfied; -1 when not even level 0 held.
  int best_level() const noexcept { return best_level_; }

 private:
  int best_level_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Pair state that puts a requirement vertex on `req_side` into `label`
/// relative to its witness. `adjacent` is the edge state used by the
/// undirected mode.
inline PairState wanted_state(GenericMode mode, Side req_side, int label, PairState adjacent) {
  if (mode == GenericMode::Bipartite) {
    return label == RelationTable::kA ? adjacent : PairState::None;
  }
  switch (label) {
    case RelationTable::kA: return state_for(req_side, Relation::In);  // witness -> u
    case RelationTable::kB: return state_for(req_side, Relation::Out);  // u -> witness
    default: return PairState::None;
  }
}

/// The pair states a mode draws from, in digit order.
inline std::vector<PairState> alphabet(GenericMode mode, PairState adjacent) {
  switch (mode) {
    case GenericMode::Bipartite: return {PairState::None, adjacent};
    case GenericMode::TwoPartite: return {PairState::LeftToRight, PairState::RightToLeft};
    case GenericMode::Orientation: return {PairState::None, PairState::LeftToRight, PairState::RightToLeft};
  }
  return {};
}

/// Searches a digit sequence f over Z_n such that the grid
/// cell(x, y) = f((x + y) mod n) realizes every pattern: for each t-subset
/// S of Z_n the words (f(s + z))_{s in S}, z in Z_n, cover all q^t words.
/// The grid is symmetric, so one condition serves both sides, and
/// translation invariance leaves only the subsets containing 0.
class CyclicSearch {
 public:
  CyclicSearch(std::size_t n, std::size_t t, std::size_t q) : n_(n), t_(t), q_(q) {
    patterns_ = 1;
    for (std::size_t k = 0; k < t; ++k) patterns_ *= q;
    if (t == 0) return;
    std::vector<std::size_t> cur{0};
    offsets(1, cur);
  }

  /// Hill climbing with sideways moves over single digits; returns the best
  /// sequence found (every word covered when successful). Occurrence counts
  /// per (subset, word) are kept up to date, so a move costs O(|subsets| t).
  std::vector<std::uint8_t> run(std::size_t steps, std::mt19937_64& rng) {
    f_.resize(n_);
    for (auto& x : f_) x = static_cast<std::uint8_t>(rng() % q_);
    count_.assign(subsets_.size() * patterns_, 0);
    missing_ = subsets_.size() * patterns_;
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      for (std::size_t z = 0; z < n_; ++z) {
        if (count_[k * patterns_ + word(k, z)]++ == 0) --missing_;
      }
    }
    for (std::size_t step = 0; step < steps && missing_ > 0; ++step) {
      const std::size_t i = rng() % n_;
      const std::uint8_t old = f_[i];
      const std::uint8_t next = static_cast<std::uint8_t>((old + 1 + rng() % (q_ - 1)) % q_);
      const std::size_t before = missing_;
      assign(i, next);
      if (missing_ > before) assign(i, old);
    }
    return f_;
  }

 private:
  std::size_t word(std::size_t k, std::size_t z) const {
    std::size_t c = 0;
    for (std::size_t off : subsets_[k]) c = c * q_ + f_[(z + off) % n_];
    return c;
  }

  /// Sets f(i) and moves every affected word: for each subset and each of
  /// its offsets, the translate z = i - offset.
  void assign(std::size_t i, std::uint8_t value) {
    const std::uint8_t old = f_[i];
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      std::uint32_t* counts = count_.data() + k * patterns_;
      for (std::size_t off : subsets_[k]) {
        const std::size_t z = (i + n_ - off) % n_;
        f_[i] = old;
        const std::size_t before = word(k, z);
        f_[i] = value;
        const std::size_t after = word(k, z);
        if (--counts[before] == 0) ++missing_;
        if (counts[after]++ == 0) --missing_;
      }
    }
    f_[i] = value;
  }

  void offsets(std::size_t from, std::vector<std::size_t>& cur) {
    if (cur.size() == t_) {
      subsets_.push_back(cur);
      return;
    }
    for (std::size_t u = from; u < n_; ++u) {
      cur.push_back(u);
      offsets(u + 1, cur);
      cur.pop_back();
    }
  }

  std::size_t n_, t_, q_, patterns_ = 1;
  std::vector<std::vector<std::size_t>> subsets_;
  std::vector<std::uint8_t> f_;
  std::vector<std::uint32_t> count_;
  std::size_t missing_ = 0;
};

/// Annealing search on a square pair-state grid. In every mode a pair
/// takes one of q states (q = 2 or 3) and a requirement of size t on one
/// side is a t-subset with one state per member; as long as t <= n every
/// smaller requirement is implied by a size-t one. The objective is the
/// number of (side, t-subset, state pattern) triples that no opposite
/// vertex realizes; changing one pair touches only the subsets holding one
/// of its endpoints.
class WitnessSearch {
 public:
  WitnessSearch(GenericMode mode, std::size_t n, std::size_t level, PairState adjacent,
                std::vector<PairState>& states)
      : n_(n), t_(level), states_(states) {
    alphabet_ = alphabet(mode, adjacent);
    q_ = alphabet_.size();
    patterns_ = 1;
    for (std::size_t k = 0; k < t_; ++k) patterns_ *= q_;
    weight_.assign(t_, 1);
    for (std::size_t k = 1; k < t_; ++k) weight_[k] = weight_[k - 1] * q_;
    digits_.resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) digits_[k] = digit(states_[k]);
    if (t_ == 0) return;
    std::vector<std::uint32_t> cur;
    subsets(0, cur);
    containing_.assign(n, {});
    for (std::size_t id = 0; id < subsets_.size(); ++id) {
      for (std::size_t p = 0; p < t_; ++p) containing_[subsets_[id][p]].push_back({static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(p)});
    }
    for (int s = 0; s < 2; ++s) {
      count_[s].assign(subsets_.size() * patterns_, 0);
      slot_[s].assign(subsets_.size() * patterns_, kNone);
      for (std::size_t id = 0; id < subsets_.size(); ++id) {
        for (std::size_t w = 0; w < n_; ++w) ++count_[s][id * patterns_ + code(s, id, w)];
      }
      for (std::size_t k = 0; k < count_[s].size(); ++k) {
        if (count_[s][k] == 0) mark(s, k);
      }
    }
  }

  /// Size of the pattern index: 2 * C(n, t) * q^t.
  static std::size_t requirement_count(GenericMode mode, std::size_t n, std::size_t level) {
    std::size_t q = mode == GenericMode::Orientation ? 3 : 2, power = 1;
    for (std::size_t k = 0; k < level; ++k) power *= q;
    return 2 * binomial(n, level) * power;
  }

  std::size_t unwitnessed() const { return open_.size(); }

  /// Runs until nothing is unwitnessed or `steps` run out; writes the grid
  /// back either way.
  /// Simulated annealing over single-pair changes with a geometric
  /// temperature schedule from `hot` to `cold`; stops early when nothing is
  /// unwitnessed. Writes the grid back either way.
  bool run(std::size_t steps, double hot, double cold, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double cooling = steps > 1 ? std::pow(cold / hot, 1.0 / static_cast<double>(steps - 1)) : 1.0;
    double temperature = hot;
    for (std::size_t step = 0; step < steps && !open_.empty() && t_ > 0; ++step, temperature *= cooling) {
      const std::size_t x = rng() % n_, y = rng() % n_;
      const std::uint8_t old = digits_[x * n_ + y];
      const auto value = static_cast<std::uint8_t>((old + 1 + rng() % (q_ - 1)) % q_);
      const long delta = set_pair(x, y, value);
      if (delta > 0 && coin(rng) >= std::exp(-static_cast<double>(delta) / temperature)) set_pair(x, y, old);
    }
    for (std::size_t k = 0; k < n_ * n_; ++k) states_[k] = alphabet_[digits_[k]];
    return open_.empty();
  }

 private:
  struct Slot {
    std::uint32_t subset;
    std::uint32_t position;
  };
  static constexpr std::size_t kNone = SIZE_MAX;

  std::uint8_t digit(PairState p) const {
    for (std::size_t k = 0; k < alphabet_.size(); ++k) {
      if (alphabet_[k] == p) return static_cast<std::uint8_t>(k);
    }
    return 0;
  }

  void subsets(std::size_t from, std::vector<std::uint32_t>& cur) {
    if (cur.size() == t_) {
      subsets_.push_back(cur);
      return;
    }
    for (std::size_t u = from; u + (t_ - cur.size()) <= n_; ++u) {
      cur.push_back(static_cast<std::uint32_t>(u));
      subsets(u + 1, cur);
      cur.pop_back();
    }
  }

  // Side 0 subsets lie in X and are witnessed by y; side 1 the reverse.
  std::uint8_t& cell(int s, std::size_t member, std::size_t w) {
    return s == 0 ? digits_[member * n_ + w] : digits_[w * n_ + member];
  }

  std::size_t code(int s, std::size_t id, std::size_t w) {
    std::size_t c = 0;
    for (std::size_t p = 0; p < t_; ++p) c += cell(s, subsets_[id][p], w) * weight_[p];
    return c;
  }

  void mark(int s, std::size_t k) {
    slot_[s][k] = open_.size();
    open_.emplace_back(s, k);
  }

  void unmark(int s, std::size_t k) {
    const std::size_t pos = slot_[s][k];
    open_[pos] = open_.back();
    slot_[open_[pos].first][open_[pos].second] = pos;
    open_.pop_back();
    slot_[s][k] = kNone;
  }

  long move(int s, std::size_t from, std::size_t to) {
    long delta = 0;
    if (--count_[s][from] == 0) { mark(s, from); ++delta; }
    if (count_[s][to]++ == 0) { unmark(s, to); --delta; }
    return delta;
  }

  // Sets the pair (x, y) to digit `value`; returns the change in the number
  // of unrealized patterns.
  long set_pair(std::size_t x, std::size_t y, std::uint8_t value) {
    std::uint8_t& c = digits_[x * n_ + y];
    if (c == value) return 0;
    const long diff = static_cast<long>(value) - static_cast<long>(c);
    long delta = 0;
    for (const Slot& sl : containing_[x]) {
      const std::size_t base = sl.subset * patterns_, old = code(0, sl.subset, y);
      delta += move(0, base + old, base + static_cast<std::size_t>(static_cast<long>(old) + diff * static_cast<long>(weight_[sl.position])));
    }
    for (const Slot& sl : containing_[y]) {
      const std::size_t base = sl.subset * patterns_, old = code(1, sl.subset, x);
      delta += move(1, base + old, base + static_cast<std::size_t>(static_cast<long>(old) + diff * static_cast<long>(weight_[sl.position])));
    }
    c = value;
    return delta;
  }

  std::size_t n_, t_, q_ = 2, patterns_ = 1;
  std::vector<PairState>& states_;
  std::vector<PairState> alphabet_;
  std::vector<std::size_t> weight_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<std::vector<Slot>> containing_;
  std::vector<std::size_t> count_[2];
  std::vector<std::size_t> slot_[2];
  std::vector<std::pair<int, std::size_t>> open_;
};

class ApproximantBuilder {
 public:
  ApproximantBuilder(GenericMode mode, const ApproximantSpec& spec, Direction dir,
                     const BuilderOptions& opts)
      : mode_(mode), spec_(spec), dir_(dir), opts_(opts), n_(spec.side_size) {}

  TwoPartiteDigraph build() {
    spec_.validate();
    const std::size_t t = spec_.level;
    const std::vector<PairState> letters = alphabet(mode_, state_of(dir_));
    const bool searchable =
        opts_.search_steps > 0 && t <= 8 &&
        WitnessSearch::requirement_count(mode_, n_, t) <= opts_.max_indexed_requirements;
    CyclicSearch cyclic(n_, t, letters.size());
    const std::string impossible = infeasible(n_, t, letters.size());
    int best = -1;
    const std::size_t attempts = impossible.empty() ? opts_.attempts : std::min<std::size_t>(opts_.attempts, 1);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
      std::mt19937_64 rng(splitmix64(spec_.seed ^ splitmix64(attempt)));
      std::vector<PairState> states(n_ * n_);
      if (opts_.cyclic_steps > 0 && t > 0) {
        const std::vector<std::uint8_t> f = cyclic.run(opts_.cyclic_steps, rng);
        std::vector<std::size_t> rows(n_), cols(n_);
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        for (std::size_t x = 0; x < n_; ++x) {
          for (std::size_t y = 0; y < n_; ++y) states[x * n_ + y] = letters[f[(rows[x] + cols[y]) % n_]];
        }
      } else {
        for (auto& s : states) s = letters[rng() % letters.size()];
      }
      if (searchable && impossible.empty()) {
        WitnessSearch search(mode_, n_, t, state_of(dir_), states);
        if (search.unwitnessed() > 0) search.run(opts_.search_steps, opts_.hot, opts_.cold, rng);
      }
      TwoPartiteDigraph d = from_grid(n_, n_, std::move(states));
      CheckOptions first_only;
      first_only.max_defects = 1;
      if (check_generic(d, mode_, t, first_only).holds) return d;
      best = std::max(best, achieved_level(d, mode_, t));
    }
    throw ApproximantNotFound(mode_, spec_, best, impossible);
  }

  /// Non-empty when no n x n grid over q states can realize every pattern
  /// of size t: fewer witnesses than patterns, or exactly as many, which
  /// makes the witness rows an orthogonal array of index 1 and strength t
  /// with n factors, beyond the Bush bound of t + 1 factors when q <= t.
  static std::string infeasible(std::size_t n, std::size_t t, std::size_t q) {
    std::size_t patterns = 1;
    for (std::size_t k = 0; k < t && patterns <= n; ++k) patterns *= q;
    if (patterns > n) return "needs more witnesses than the side has";
    if (patterns == n && t >= 2 && q <= t && n > t + 1) return "would be an orthogonal array beyond the Bush bound";
    return {};
  }

 private:
  GenericMode mode_;
  ApproximantSpec spec_;
  Direction dir_;
  BuilderOptions opts_;
  std::size_t n_;
};

}  // namespace detail

/// A bipartite digraph (all edges in `dir`) whose underlying graph passes
/// check_generic_bipartite at spec.level. Random fill with edge probability
/// 1/2, annealing search, verification; reseeded up to opts.attempts times.
inline TwoPartiteDigraph generic_bipartite_approx(const ApproximantSpec& spec,
                                                  Direction dir = Direction::LeftToRight,
                                                  const BuilderOptions& opts = {}) {
  return detail::ApproximantBuilder(GenericMode::Bipartite, spec, dir, opts).build();
}

/// Complete underlying graph, each pair oriented either way with
/// probability 1/2; passes check_generic_2partite at spec.level.
inline TwoPartiteDigraph generic_2partite_approx(const ApproximantSpec& spec,
                                                 const BuilderOptions& opts = {}) {
  return detail::ApproximantBuilder(GenericMode::TwoPartite, spec, Direction::LeftToRight, opts)
      .build();
}

/// Each pair is ->, <- or absent with probability 1/3; passes
/// check_generic_orientation at spec.level.
inline TwoPartiteDigraph generic_orientation_approx(const ApproximantSpec& spec,
                                                    const BuilderOptions& opts = {}) {
  return detail::ApproximantBuilder(GenericMode::Orientation, spec, Direction::LeftToRight, opts)
      .build();
}

class CapExceeded : public Error {
 public:
  CapExceeded(TwoPartiteDigraph partial, std::vector<Requirement> remaining, std::size_t cap)
      : Error(ErrorCode::CapExceeded, "witness closure needs more than " + std::to_string(cap) +
                                          " new vertices; " + std::to_string(remaining.size()) +
                                          " requirements left unwitnessed"),
        partial_(std::move(partial)),
        remaining_(std::move(remaining)) {}

  const TwoPartiteDigraph& partial() const noexcept { return partial_; }
  /// Requirements over the original vertices still lacking a witness.
  const std::vector<Requirement>& remaining() const noexcept { return remaining_; }

 private:
  TwoPartiteDigraph partial_;
  std::vector<Requirement> remaining_;
};

namespace detail {

class ClosureGrid {
 public:
  explicit ClosureGrid(const TwoPartiteDigraph& d)
      : left_(d.ids(Side::Left)), right_(d.ids(Side::Right)) {
    rows_.assign(left_.size(), std::vector<PairState>(right_.size(), PairState::None));
    for (std::size_t i = 0; i < left_.size(); ++i) {
      for (std::size_t j = 0; j < right_.size(); ++j) rows_[i][j] = d.state(i, j);
    }
    for (const auto& id : left_) taken_.push_back(id);
    for (const auto& id : right_) taken_.push_back(id);
  }

  std::size_t size(Side s) const { return s == Side::Left ? left_.size() : right_.size(); }

  PairState& at(Side s, std::size_t u, std::size_t w) {
    return s == Side::Left ? rows_[u][w] : rows_[w][u];
  }

  /// Appends a vertex on `s` whose pairs all start as `fill`; returns its index.
  std::size_t add(Side s, PairState fill) {
    const std::string prefix = s == Side::Left ? "wx" : "wy";
    std::string id;
    for (std::size_t k = ++counter_[s == Side::Left ? 0 : 1];; ++k) {
      id = prefix + std::to_string(k);
      if (std::find(taken_.begin(), taken_.end(), id) == taken_.end()) {
        counter_[s == Side::Left ? 0 : 1] = k;
        break;
      }
    }
    taken_.push_back(id);
    if (s == Side::Left) {
      left_.push_back(id);
      rows_.emplace_back(right_.size(), fill);
      return left_.size() - 1;
    }
    right_.push_back(id);
    for (auto& row : rows_) row.push_back(fill);
    return right_.size() - 1;
  }

  TwoPartiteDigraph build() const {
    std::vector<PairState> st;
    st.reserve(left_.size() * right_.size());
    for (const auto& row : rows_) st.insert(st.end(), row.begin(), row.end());
    return TwoPartiteDigraph::from_states(left_, right_, std::move(st));
  }

 private:
  std::vector<std::string> left_, right_, taken_;
  std::vector<std::vector<PairState>> rows_;
  std::size_t counter_[2] = {0, 0};
};

}  // namespace detail

/// Adds fresh witness vertices until every requirement of size <= t over
/// the original vertices has a witness. Existing vertices and pairs are
/// never touched. New pairs default to X->Y in TwoPartite mode and to
/// non-adjacent otherwise. Throws CapExceeded once more than `cap` vertices
/// would be needed.
inline TwoPartiteDigraph witness_closure(const TwoPartiteDigraph& d, GenericMode mode,
                                         std::size_t t, std::size_t cap) {
  PairState adjacent_state = PairState::LeftToRight;
  if (mode == GenericMode::Bipartite) {
    if (!d.is_bipartite_digraph()) {
      throw Error(ErrorCode::InvalidArgument, "bipartite closure needs a bipartite digraph");
    }
    if (!d.edges().empty() && d.edges().front().first.side == Side::Right) {
      adjacent_state = PairState::RightToLeft;
    }
  }
  const PairState fill = mode == GenericMode::TwoPartite ? PairState::LeftToRight : PairState::None;
  const std::vector<Requirement> open = check_generic(d, mode, t).defects;

  detail::ClosureGrid grid(d);
  const std::size_t orig[2] = {d.left_size(), d.right_size()};
  std::size_t added = 0;

  auto wanted = [&](Side req_side, int label) {
    return detail::wanted_state(mode, req_side, label, adjacent_state);
  };
  auto satisfied_by = [&](const Requirement& req, std::size_t w) {
    const std::vector<std::size_t>* sets[3] = {&req.a, &req.b, &req.c};
    for (int label = 0; label < 3; ++label) {
      for (std::size_t u : *sets[label]) {
        if (grid.at(req.side, u, w) != wanted(req.side, label)) return false;
      }
    }
    return true;
  };

  for (std::size_t k = 0; k < open.size(); ++k) {
    const Requirement& req = open[k];
    const Side ws = opposite(req.side);
    const std::size_t first_new = orig[ws == Side::Left ? 0 : 1];
    bool found = false;
    for (std::size_t w = first_new; w < grid.size(ws) && !found; ++w) found = satisfied_by(req, w);
    if (found) continue;
    if (added == cap) {
      std::vector<Requirement> remaining;
      for (std::size_t r = k; r < open.size(); ++r) {
        const Side rs = opposite(open[r].side);
        bool ok = false;
        for (std::size_t w = orig[rs == Side::Left ? 0 : 1]; w < grid.size(rs) && !ok; ++w) {
          ok = satisfied_by(open[r], w);
        }
        if (!ok) remaining.push_back(open[r]);
      }
      throw CapExceeded(grid.build(), std::move(remaining), cap);
    }
    const std::size_t w = grid.add(ws, fill);
    ++added;
    const std::vector<std::size_t>* sets[3] = {&req.a, &req.b, &req.c};
    for (int label = 0; label < 3; ++label) {
      for (std::size_t u : *sets[label]) grid.at(req.side, u, w) = wanted(req.side, label);
    }
  }
  return grid.build();
}

}  // namespace twopart
