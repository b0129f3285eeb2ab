#pragma once

// Side-preserving isomorphisms: colour refinement, backtracking search,
// canonical forms, automorphism groups and the exact homogeneity decider.
//
// Internally a vertex is numbered globally: X vertices 0..|X|-1, then Y
// vertices |X|..|X|+|Y|-1. Sides are never mixed by any map built here.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twopart/core.hpp"

namespace twopart {

/// Injective association of vertices; valid maps are side-preserving and
/// preserve every pair state on their domain.
struct PartialMap {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }

  std::optional<Vertex> image(Vertex v) const {
    for (const auto& [a, b] : pairs) {
      if (a == v) return b;
    }
    return std::nullopt;
  }

  std::optional<Vertex> preimage(Vertex v) const {
    for (const auto& [a, b] : pairs) {
      if (b == v) return a;
    }
    return std::nullopt;
  }

  PartialMap inverse() const {
    PartialMap out;
    for (const auto& [a, b] : pairs) out.pairs.emplace_back(b, a);
    return out;
  }

  /// Pairs sorted by source; equality below is as sets of pairs.
  PartialMap normalized() const {
    PartialMap out = *this;
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
  }

  friend bool operator==(const PartialMap& a, const PartialMap& b) {
    return a.normalized().pairs == b.normalized().pairs;
  }
};

/// `second` after `first`, defined where both apply.
inline PartialMap compose(const PartialMap& first, const PartialMap& second) {
  PartialMap out;
  for (const auto& [a, b] : first.pairs) {
    if (auto c = second.image(b)) out.pairs.emplace_back(a, *c);
  }
  return out;
}

inline bool is_partial_isomorphism(const TwoPartiteDigraph& from, const TwoPartiteDigraph& to,
                                   const PartialMap& map) {
  for (std::size_t k = 0; k < map.pairs.size(); ++k) {
    const auto& [a, b] = map.pairs[k];
    if (a.side != b.side || !from.contains(a) || !to.contains(b)) return false;
    for (std::size_t l = 0; l < k; ++l) {
      const auto& [c, d] = map.pairs[l];
      if (a == c || b == d) return false;
      if (a.side != c.side && from.relation(a, c.index) != to.relation(b, d.index)) return false;
    }
  }
  return true;
}

struct CanonicalForm {
  std::string bytes;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      out += digits[c >> 4];
      out += digits[c & 15];
    }
    return out;
  }

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct HomogeneityVerdict {
  bool holds = true;
  std::optional<PartialMap> counterexample;
};

class AutGroupTooLarge : public Error {
 public:
  explicit AutGroupTooLarge(std::size_t cap)
      : Error(ErrorCode::AutGroupTooLarge,
              "automorphism group exceeds the cap of " + std::to_string(cap) + " maps"),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

namespace detail {

inline std::size_t global_index(const TwoPartiteDigraph& d, Vertex v) {
  return v.side == Side::Left ? v.index : d.left_size() + v.index;
}

inline Vertex vertex_at(const TwoPartiteDigraph& d, std::size_t g) {
  return g < d.left_size() ? Vertex{Side::Left, g} : Vertex{Side::Right, g - d.left_size()};
}

/// Relation between two global vertices on opposite sides, from `a`'s view.
inline Relation global_relation(const TwoPartiteDigraph& d, std::size_t a, std::size_t b) {
  const Vertex va = vertex_at(d, a);
  return d.relation(va, va.side == Side::Left ? b - d.left_size() : b);
}

/// Iterated refinement of a vertex colouring by the multiset of
/// (relation, neighbour colour) over the opposite side, run jointly on one
/// or two structures so that colours stay comparable. The first round
/// separates vertices by (outdeg, indeg, perpdeg). Stops at a fixed point.
/// Returns false when the two structures end up with different colour
/// class sizes (then no colour-respecting isomorphism exists).
class Refiner {
 public:
  static bool refine(const TwoPartiteDigraph& g, std::vector<int>& cg,
                     const TwoPartiteDigraph* h = nullptr, std::vector<int>* ch = nullptr) {
    std::size_t classes = count_classes(cg, ch);
    for (;;) {
      std::vector<Entry> entries;
      entries.reserve(cg.size() + (ch ? ch->size() : 0));
      collect(g, cg, 0, entries);
      if (h) collect(*h, *ch, 1, entries);
      std::sort(entries.begin(), entries.end(),
                [](const Entry& a, const Entry& b) { return a.signature < b.signature; });
      int color = -1;
      std::vector<int> balance;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (k == 0 || entries[k].signature != entries[k - 1].signature) {
          ++color;
          balance.push_back(0);
        }
        auto& target = entries[k].owner == 0 ? cg : *ch;
        target[entries[k].vertex] = color;
        balance.back() += entries[k].owner == 0 ? 1 : -1;
      }
      if (h && std::any_of(balance.begin(), balance.end(), [](int b) { return b != 0; })) {
        return false;
      }
      const std::size_t now = static_cast<std::size_t>(color + 1);
      if (now == classes) return true;
      classes = now;
    }
  }

  /// Gives `v` a colour of its own, ordered just before the rest of its cell.
  static void individualize(std::vector<int>& colors, std::size_t v) {
    for (auto& c : colors) c = 2 * c + 1;
    colors[v] -= 1;
  }

 private:
  struct Entry {
    std::vector<int> signature;
    int owner;
    std::size_t vertex;
  };

  static std::size_t count_classes(const std::vector<int>& cg, const std::vector<int>* ch) {
    std::vector<int> all = cg;
    if (ch) all.insert(all.end(), ch->begin(), ch->end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  }

  static void collect(const TwoPartiteDigraph& d, const std::vector<int>& colors, int owner,
                      std::vector<Entry>& out) {
    const std::size_t m = d.left_size(), n = d.right_size();
    for (std::size_t v = 0; v < m + n; ++v) {
      Entry e{{colors[v]}, owner, v};
      const bool left = v < m;
      const std::size_t begin = left ? m : 0, end = left ? m + n : m;
      std::vector<int> codes;
      codes.reserve(end - begin);
      for (std::size_t w = begin; w < end; ++w) {
        PairState s = left ? d.state(v, w - m) : d.state(w, v - m);
        const Relation r = relation_of(s, left ? Side::Left : Side::Right);
        codes.push_back(colors[w] * 3 + static_cast<int>(r));
      }
      std::sort(codes.begin(), codes.end());
      e.signature.insert(e.signature.end(), codes.begin(), codes.end());
      out.push_back(std::move(e));
    }
  }
};

inline std::vector<int> side_coloring(const TwoPartiteDigraph& d) {
  std::vector<int> c(d.vertex_count(), 1);
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d.left_size()), 0);
  return c;
}

/// Enumerates side-preserving isomorphisms g -> h that extend `fixed`
/// (given as global index pairs). `visit(map)` returns false to stop.
/// Returns false iff the visitor stopped the search.
class IsoSearch {
 public:
  IsoSearch(const TwoPartiteDigraph& g, const TwoPartiteDigraph& h) : g_(g), h_(h) {}

  template <class Visit>
  bool run(std::span<const std::pair<std::size_t, std::size_t>> fixed, Visit&& visit) {
    if (g_.left_size() != h_.left_size() || g_.right_size() != h_.right_size()) return true;
    const std::size_t total = g_.vertex_count();
    m_ = g_.left_size();
    map_.assign(total, -1);
    used_.assign(total, 0);
    mapped_.clear();
    for (const auto& [a, b] : fixed) {
      if (a >= total || b >= total || (a < m_) != (b < m_)) return true;
      if (map_[a] >= 0 || used_[b]) {
        if (map_[a] == static_cast<int>(b)) continue;
        return true;
      }
      if (!consistent(a, b)) return true;
      assign(a, b);
    }
    cg_ = side_coloring(g_);
    ch_ = side_coloring(h_);
    int next = 2;
    for (std::size_t a : mapped_) {
      cg_[a] = next;
      ch_[static_cast<std::size_t>(map_[a])] = next;
      ++next;
    }
    if (!Refiner::refine(g_, cg_, &h_, &ch_)) return true;
    for (std::size_t a : mapped_) {
      if (cg_[a] != ch_[static_cast<std::size_t>(map_[a])]) return true;
    }
    return extend(visit);
  }

 private:
  bool consistent(std::size_t a, std::size_t b) const {
    for (std::size_t u : mapped_) {
      if ((u < m_) == (a < m_)) continue;
      if (global_relation(g_, a, u) != global_relation(h_, b, static_cast<std::size_t>(map_[u]))) {
        return false;
      }
    }
    return true;
  }

  void assign(std::size_t a, std::size_t b) {
    map_[a] = static_cast<int>(b);
    used_[b] = 1;
    mapped_.push_back(a);
  }

  void unassign(std::size_t a) {
    used_[static_cast<std::size_t>(map_[a])] = 0;
    map_[a] = -1;
    mapped_.pop_back();
  }

  template <class Visit>
  bool extend(Visit& visit) {
    const std::size_t total = map_.size();
    if (mapped_.size() == total) return visit(map_);
    // Branch on the unmapped vertex with the fewest consistent candidates.
    std::size_t best = total;
    std::vector<std::size_t> best_candidates;
    for (std::size_t a = 0; a < total; ++a) {
      if (map_[a] >= 0) continue;
      std::vector<std::size_t> cands;
      for (std::size_t b = 0; b < total; ++b) {
        if (!used_[b] && ch_[b] == cg_[a] && consistent(a, b)) cands.push_back(b);
      }
      if (best == total || cands.size() < best_candidates.size()) {
        best = a;
        best_candidates = std::move(cands);
        if (best_candidates.size() <= 1) break;
      }
    }
    for (std::size_t b : best_candidates) {
      assign(best, b);
      const bool go_on = extend(visit);
      unassign(best);
      if (!go_on) return false;
    }
    return true;
  }

  const TwoPartiteDigraph& g_;
  const TwoPartiteDigraph& h_;
  std::size_t m_ = 0;
  std::vector<int> map_;
  std::vector<char> used_;
  std::vector<std::size_t> mapped_;
  std::vector<int> cg_, ch_;
};

inline PartialMap to_partial_map(const TwoPartiteDigraph& g, const TwoPartiteDigraph& h,
                                 const std::vector<int>& map) {
  PartialMap out;
  for (std::size_t a = 0; a < map.size(); ++a) {
    if (map[a] >= 0) {
      out.pairs.emplace_back(vertex_at(g, a), vertex_at(h, static_cast<std::size_t>(map[a])));
    }
  }
  return out;
}

/// Automorphisms as global permutations, identity first.
inline std::vector<std::vector<int>> automorphism_perms(const TwoPartiteDigraph& d,
                                                        std::size_t cap) {
  std::vector<std::vector<int>> out;
  IsoSearch search(d, d);
  search.run({}, [&](const std::vector<int>& map) {
    if (out.size() >= cap) throw AutGroupTooLarge(cap);
    out.push_back(map);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Individualization-refinement search for the lexicographically least
/// pair-state matrix over all colour-respecting orderings, with orbit
/// pruning by automorphisms discovered at equal leaves.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const TwoPartiteDigraph& d) : d_(d) {}

  CanonicalForm run() {
    std::vector<int> colors = side_coloring(d_);
    std::vector<std::size_t> prefix;
    descend(colors, prefix);
    return {best_code_};
  }

 private:
  std::string encode(const std::vector<int>& colors) const {
    const std::size_t m = d_.left_size(), n = d_.right_size();
    std::vector<std::size_t> order(m + n);
    for (std::size_t v = 0; v < m + n; ++v) order[static_cast<std::size_t>(colors[v])] = v;
    std::string code;
    code.reserve(8 + m * n);
    for (std::size_t x : {m, n}) {
      for (int shift = 24; shift >= 0; shift -= 8) code += static_cast<char>((x >> shift) & 0xff);
    }
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = m; q < m + n; ++q) {
        code += static_cast<char>(d_.state(order[p], order[q] - m));
      }
    }
    return code;
  }

  static std::vector<int> position_to_vertex(const std::vector<int>& colors) {
    std::vector<int> order(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v) order[static_cast<std::size_t>(colors[v])] = static_cast<int>(v);
    return order;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gamma(from.size());
    for (std::size_t p = 0; p < from.size(); ++p) {
      gamma[static_cast<std::size_t>(from[p])] = to[p];
    }
    for (std::size_t v = 0; v < gamma.size(); ++v) {
      if (gamma[v] != static_cast<int>(v)) {
        automorphisms_.push_back(std::move(gamma));
        return;
      }
    }
  }

  void leaf(const std::vector<int>& colors) {
    std::string code = encode(colors);
    std::vector<int> order = position_to_vertex(colors);
    if (first_order_.empty()) {
      first_order_ = order;
      first_code_ = code;
      best_order_ = order;
      best_code_ = std::move(code);
      return;
    }
    if (code == first_code_) record_automorphism(first_order_, order);
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    } else if (code == best_code_) {
      record_automorphism(best_order_, order);
    }
  }

  std::size_t find(std::vector<std::size_t>& parent, std::size_t x) const {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool same_orbit(std::size_t w, const std::vector<std::size_t>& tried,
                  const std::vector<std::size_t>& prefix) {
    if (tried.empty() || automorphisms_.empty()) return false;
    std::vector<std::size_t> parent(d_.vertex_count());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (const auto& gamma : automorphisms_) {
      const bool fixes_prefix = std::all_of(prefix.begin(), prefix.end(), [&](std::size_t v) {
        return gamma[v] == static_cast<int>(v);
      });
      if (!fixes_prefix) continue;
      for (std::size_t v = 0; v < gamma.size(); ++v) {
        std::size_t a = find(parent, v), b = find(parent, static_cast<std::size_t>(gamma[v]));
        if (a != b) parent[a] = b;
      }
    }
    const std::size_t rw = find(parent, w);
    return std::any_of(tried.begin(), tried.end(), [&](std::size_t t) { return find(parent, t) == rw; });
  }

  void descend(std::vector<int> colors, std::vector<std::size_t>& prefix) {
    Refiner::refine(d_, colors);
    const std::size_t total = colors.size();
    std::vector<std::size_t> cell_size(total, 0);
    for (int c : colors) ++cell_size[static_cast<std::size_t>(c)];
    int target = -1;
    for (std::size_t c = 0; c < total; ++c) {
      if (cell_size[c] > 1) { target = static_cast<int>(c); break; }
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t w = 0; w < total; ++w) {
      if (colors[w] != target) continue;
      if (same_orbit(w, tried, prefix)) continue;
      tried.push_back(w);
      std::vector<int> child = colors;
      Refiner::individualize(child, w);
      prefix.push_back(w);
      descend(std::move(child), prefix);
      prefix.pop_back();
    }
  }

  const TwoPartiteDigraph& d_;
  std::string best_code_, first_code_;
  std::vector<int> best_order_, first_order_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

/// Byte string that is equal for two structures iff a side-preserving
/// isomorphism exists between them. Vertex ids do not enter the form.
inline CanonicalForm canonical_form(const TwoPartiteDigraph& d) {
  return detail::CanonicalSearch(d).run();
}

/// A total side-preserving isomorphism d1 -> d2, if one exists.
inline std::optional<PartialMap> are_isomorphic(const TwoPartiteDigraph& d1,
                                                const TwoPartiteDigraph& d2) {
  std::optional<PartialMap> found;
  detail::IsoSearch search(d1, d2);
  search.run({}, [&](const std::vector<int>& map) {
    found = detail::to_partial_map(d1, d2, map);
    return false;
  });
  return found;
}

inline constexpr std::size_t kDefaultAutCap = 1'000'000;

/// The full side-preserving automorphism group, identity first. Throws
/// AutGroupTooLarge past `cap` elements.
inline std::vector<PartialMap> automorphisms(const TwoPartiteDigraph& d,
                                             std::size_t cap = kDefaultAutCap) {
  std::vector<PartialMap> out;
  for (const auto& perm : detail::automorphism_perms(d, cap)) {
    out.push_back(detail::to_partial_map(d, d, perm));
  }
  return out;
}

/// Decided by completing `phi` with a refinement-pruned backtrack; the
/// automorphism group is never listed.
inline bool extends_to_automorphism(const TwoPartiteDigraph& d, const PartialMap& phi) {
  if (!is_partial_isomorphism(d, d, phi)) {
    throw Error(ErrorCode::InvalidArgument, "map is not a partial isomorphism of the structure");
  }
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (const auto& [a, b] : phi.pairs) {
    fixed.emplace_back(detail::global_index(d, a), detail::global_index(d, b));
  }
  bool found = false;
  detail::IsoSearch search(d, d);
  search.run(fixed, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

struct HomogeneityOptions {
  /// Largest substructure considered; unset means every vertex.
  std::optional<std::size_t> max_size;
  bool orbit_reduction = true;
  /// Orbit reduction only runs on structures with more vertices than this.
  std::size_t reduction_threshold = 8;
  std::size_t aut_cap = kDefaultAutCap;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline bool is_orbit_minimum(const std::vector<std::size_t>& subset,
                             const std::vector<std::vector<int>>& group) {
  std::vector<std::size_t> image(subset.size());
  for (const auto& g : group) {
    for (std::size_t k = 0; k < subset.size(); ++k) image[k] = static_cast<std::size_t>(g[subset[k]]);
    std::sort(image.begin(), image.end());
    if (image < subset) return false;
  }
  return true;
}

/// Visits every side-respecting isomorphism from the substructure on
/// `domain` onto the one on `codomain` (same side composition), as global
/// index pairs. Stops when `visit` returns false; returns false then.
template <class Visit>
bool for_each_induced_isomorphism(const TwoPartiteDigraph& d, const std::vector<std::size_t>& dl,
                                  const std::vector<std::size_t>& dr,
                                  const std::vector<std::size_t>& cl,
                                  const std::vector<std::size_t>& cr, Visit&& visit) {
  const std::size_t m = d.left_size();
  std::vector<std::size_t> pl = cl, pr = cr;
  std::vector<std::pair<std::size_t, std::size_t>> phi;
  do {
    std::vector<std::size_t> qr = cr;
    do {
      bool ok = true;
      for (std::size_t a = 0; a < dl.size() && ok; ++a) {
        for (std::size_t b = 0; b < dr.size(); ++b) {
          if (d.state(dl[a], dr[b] - m) != d.state(pl[a], qr[b] - m)) { ok = false; break; }
        }
      }
      if (!ok) continue;
      phi.clear();
      for (std::size_t a = 0; a < dl.size(); ++a) phi.emplace_back(dl[a], pl[a]);
      for (std::size_t b = 0; b < dr.size(); ++b) phi.emplace_back(dr[b], qr[b]);
      if (!visit(phi)) return false;
    } while (std::next_permutation(qr.begin(), qr.end()));
  } while (std::next_permutation(pl.begin(), pl.end()));
  return true;
}

}  // namespace detail

/// Decides whether every side-respecting isomorphism between induced
/// substructures on at most `max_size` vertices extends to a side-preserving
/// automorphism. Domains are scanned by size, then lexicographically (up to
/// automorphism when reduction is on), so the counterexample returned is the
/// first failing one in that order.
inline HomogeneityVerdict is_homogeneous(const TwoPartiteDigraph& d,
                                         const HomogeneityOptions& opts = {}) {
  const std::size_t total = d.vertex_count();
  const std::size_t m = d.left_size();
  const std::size_t limit = std::min(total, opts.max_size.value_or(total));

  std::vector<std::vector<int>> group;
  const bool reduce = opts.orbit_reduction && total > opts.reduction_threshold;
  if (reduce) group = detail::automorphism_perms(d, opts.aut_cap);

  HomogeneityVerdict verdict;
  detail::IsoSearch search(d, d);
  for (std::size_t size = 1; size <= limit; ++size) {
    std::vector<std::size_t> domain(size);
    std::iota(domain.begin(), domain.end(), std::size_t{0});
    do {
      if (reduce && !detail::is_orbit_minimum(domain, group)) continue;
      std::vector<std::size_t> dl, dr;
      for (std::size_t v : domain) (v < m ? dl : dr).push_back(v);
      std::vector<std::size_t> codomain(size);
      std::iota(codomain.begin(), codomain.end(), std::size_t{0});
      do {
        std::vector<std::size_t> cl, cr;
        for (std::size_t v : codomain) (v < m ? cl : cr).push_back(v);
        if (cl.size() != dl.size()) continue;
        const bool all_extend = detail::for_each_induced_isomorphism(
            d, dl, dr, cl, cr, [&](const std::vector<std::pair<std::size_t, std::size_t>>& phi) {
              bool found = false;
              search.run(phi, [&](const std::vector<int>&) {
                found = true;
                return false;
              });
              if (found) return true;
              PartialMap cex;
              for (const auto& [a, b] : phi) {
                cex.pairs.emplace_back(detail::vertex_at(d, a), detail::vertex_at(d, b));
              }
              verdict.holds = false;
              verdict.counterexample = std::move(cex);
              return false;
            });
        if (!all_extend) return verdict;
      } while (detail::next_combination(codomain, total));
    } while (detail::next_combination(domain, total));
  }
  return verdict;
}

inline HomogeneityVerdict is_homogeneous(const TwoPartiteDigraph& d, std::optional<std::size_t> k) {
  HomogeneityOptions opts;
  opts.max_size = k;
  return is_homogeneous(d, opts);
}

/// Homogeneity of a bipartite graph, decided on its X->Y encoding.
inline HomogeneityVerdict is_homogeneous(const UndirectedBipartiteGraph& g,
                                         const HomogeneityOptions& opts = {}) {
  return is_homogeneous(g.as_digraph(), opts);
}

}  // namespace twopart
