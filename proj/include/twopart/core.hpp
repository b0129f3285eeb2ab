#pragma once

// Finite 2-partite digraphs: two disjoint vertex sides X (left) and Y
// (right), every edge crossing sides, and never both (u,v) and (v,u).
//
// Vertices are addressed by (side, position-in-side). The cross pair
// (x_i, y_j) carries one of three states: no edge, x_i->y_j, y_j->x_i.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twopart/error.hpp"

namespace twopart {

enum class Side : std::uint8_t { Left, Right };

constexpr Side opposite(Side s) noexcept {
  return s == Side::Left ? Side::Right : Side::Left;
}

constexpr std::string_view to_string(Side s) noexcept {
  return s == Side::Left ? "x" : "y";
}

struct Vertex {
  Side side = Side::Left;
  std::size_t index = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class PairState : std::uint8_t { None = 0, LeftToRight = 1, RightToLeft = 2 };

/// How a vertex sees one vertex of the opposite side.
enum class Relation : std::uint8_t { Out = 0, In = 1, Perp = 2 };

struct DegreeTriple {
  std::size_t out = 0;
  std::size_t in = 0;
  std::size_t perp = 0;

  friend auto operator<=>(const DegreeTriple&, const DegreeTriple&) = default;
};

struct DegreeProfile {
  std::vector<DegreeTriple> left;
  std::vector<DegreeTriple> right;

  const DegreeTriple& operator[](Vertex v) const {
    return v.side == Side::Left ? left.at(v.index) : right.at(v.index);
  }
};

namespace detail {

inline Relation relation_of(PairState s, Side viewer) noexcept {
  switch (s) {
    case PairState::None: return Relation::Perp;
    case PairState::LeftToRight: return viewer == Side::Left ? Relation::Out : Relation::In;
    case PairState::RightToLeft: return viewer == Side::Left ? Relation::In : Relation::Out;
  }
  return Relation::Perp;
}

inline PairState state_for(Side viewer, Relation r) noexcept {
  switch (r) {
    case Relation::Perp: return PairState::None;
    case Relation::Out: return viewer == Side::Left ? PairState::LeftToRight : PairState::RightToLeft;
    case Relation::In: return viewer == Side::Left ? PairState::RightToLeft : PairState::LeftToRight;
  }
  return PairState::None;
}

class IdIndex {
 public:
  IdIndex() = default;

  std::optional<Vertex> find(std::string_view id) const {
    auto it = map_.find(std::string(id));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool insert(const std::string& id, Vertex v) { return map_.emplace(id, v).second; }

 private:
  std::unordered_map<std::string, Vertex> map_;
};

inline std::string field_name(Side s, std::size_t i) {
  return std::string(to_string(s)) + "[" + std::to_string(i) + "]";
}

inline IdIndex index_ids(const std::vector<std::string>& left,
                         const std::vector<std::string>& right) {
  IdIndex index;
  for (Side s : {Side::Left, Side::Right}) {
    const auto& ids = s == Side::Left ? left : right;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (auto prior = index.find(ids[i])) {
        if (prior->side == s) {
          throw Error(ErrorCode::DuplicateVertex, "vertex '" + ids[i] + "' listed twice",
                      field_name(s, i));
        }
        throw Error(ErrorCode::SideOverlap, "vertex '" + ids[i] + "' appears on both sides",
                    field_name(s, i));
      }
      index.insert(ids[i], Vertex{s, i});
    }
  }
  return index;
}

// Duplicates within one side are reported before any cross-side overlap.
inline void check_side_duplicates(const std::vector<std::string>& ids, Side s) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen.emplace(ids[i], i).second) {
      throw Error(ErrorCode::DuplicateVertex, "vertex '" + ids[i] + "' listed twice",
                  field_name(s, i));
    }
  }
}

}  // namespace detail

class UndirectedBipartiteGraph;

class TwoPartiteDigraph {
 public:
  using IdEdge = std::pair<std::string, std::string>;
  using Edge = std::pair<Vertex, Vertex>;  // (source, target)

  TwoPartiteDigraph() = default;

  /// Validates and builds. Duplicate copies of the same edge collapse.
  static TwoPartiteDigraph build(std::vector<std::string> left, std::vector<std::string> right,
                                 std::span<const IdEdge> edges) {
    detail::check_side_duplicates(left, Side::Left);
    detail::check_side_duplicates(right, Side::Right);
    TwoPartiteDigraph d;
    d.index_ = detail::index_ids(left, right);
    d.left_ = std::move(left);
    d.right_ = std::move(right);
    d.states_.assign(d.left_.size() * d.right_.size(), PairState::None);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& [src, dst] = edges[k];
      const std::string field = "edges[" + std::to_string(k) + "]";
      auto u = d.index_.find(src);
      auto v = d.index_.find(dst);
      if (!u) throw Error(ErrorCode::UnknownEndpoint, "no vertex '" + src + "'", field);
      if (!v) throw Error(ErrorCode::UnknownEndpoint, "no vertex '" + dst + "'", field);
      if (u->side == v->side) {
        throw Error(ErrorCode::SameSideEdge, "'" + src + "' and '" + dst + "' share a side",
                    field);
      }
      const PairState want =
          u->side == Side::Left ? PairState::LeftToRight : PairState::RightToLeft;
      const auto [l, r] = u->side == Side::Left ? std::pair{u->index, v->index}
                                                : std::pair{v->index, u->index};
      PairState& cell = d.states_[l * d.right_.size() + r];
      if (cell == want) continue;
      if (cell != PairState::None) {
        throw Error(ErrorCode::SymmetricEdgePair,
                    "both ('" + src + "','" + dst + "') and the reverse edge are present", field);
      }
      cell = want;
      d.edges_.emplace_back(*u, *v);
    }
    return d;
  }

  /// Builds from a row-major |X|x|Y| pair-state matrix; edges are stored in
  /// row-major order.
  static TwoPartiteDigraph from_states(std::vector<std::string> left,
                                       std::vector<std::string> right,
                                       std::vector<PairState> states) {
    detail::check_side_duplicates(left, Side::Left);
    detail::check_side_duplicates(right, Side::Right);
    if (states.size() != left.size() * right.size()) {
      throw Error(ErrorCode::InvalidArgument, "pair-state matrix has the wrong size");
    }
    TwoPartiteDigraph d;
    d.index_ = detail::index_ids(left, right);
    d.left_ = std::move(left);
    d.right_ = std::move(right);
    d.states_ = std::move(states);
    d.rebuild_edges();
    return d;
  }

  std::size_t left_size() const noexcept { return left_.size(); }
  std::size_t right_size() const noexcept { return right_.size(); }
  std::size_t side_size(Side s) const noexcept { return s == Side::Left ? left_size() : right_size(); }
  std::size_t vertex_count() const noexcept { return left_.size() + right_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& ids(Side s) const noexcept { return s == Side::Left ? left_ : right_; }
  const std::string& id(Vertex v) const { return ids(v.side).at(v.index); }

  std::optional<Vertex> find(std::string_view id) const { return index_.find(id); }

  Vertex vertex(std::string_view id) const {
    if (auto v = index_.find(id)) return *v;
    throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(id) + "'");
  }

  bool contains(Vertex v) const noexcept { return v.index < side_size(v.side); }

  PairState state(std::size_t left, std::size_t right) const {
    return states_[left * right_.size() + right];
  }

  const std::vector<PairState>& states() const noexcept { return states_; }

  /// Relation of `v` to vertex `other` on the opposite side.
  Relation relation(Vertex v, std::size_t other) const {
    const PairState s = v.side == Side::Left ? state(v.index, other) : state(other, v.index);
    return detail::relation_of(s, v.side);
  }

  bool has_edge(Vertex from, Vertex to) const {
    if (!contains(from) || !contains(to) || from.side == to.side) return false;
    return relation(from, to.index) == Relation::Out;
  }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<Vertex> out_neighbourhood(Vertex v) const { return related(v, Relation::Out); }
  std::vector<Vertex> in_neighbourhood(Vertex v) const { return related(v, Relation::In); }
  std::vector<Vertex> perp(Vertex v) const { return related(v, Relation::Perp); }

  DegreeTriple degree(Vertex v) const {
    require(v);
    DegreeTriple t;
    for (std::size_t w = 0; w < side_size(opposite(v.side)); ++w) {
      switch (relation(v, w)) {
        case Relation::Out: ++t.out; break;
        case Relation::In: ++t.in; break;
        case Relation::Perp: ++t.perp; break;
      }
    }
    return t;
  }

  DegreeProfile degree_profile() const {
    DegreeProfile p;
    for (std::size_t i = 0; i < left_size(); ++i) p.left.push_back(degree({Side::Left, i}));
    for (std::size_t j = 0; j < right_size(); ++j) p.right.push_back(degree({Side::Right, j}));
    return p;
  }

  /// Substructure induced on `subset`; sides keep their stored order.
  TwoPartiteDigraph induced(std::span<const Vertex> subset) const {
    std::vector<char> keep_l(left_size(), 0), keep_r(right_size(), 0);
    for (Vertex v : subset) {
      require(v);
      (v.side == Side::Left ? keep_l : keep_r)[v.index] = 1;
    }
    std::vector<std::size_t> new_l(left_size(), 0), new_r(right_size(), 0);
    TwoPartiteDigraph d;
    for (std::size_t i = 0; i < left_size(); ++i) {
      if (keep_l[i]) { new_l[i] = d.left_.size(); d.left_.push_back(left_[i]); }
    }
    for (std::size_t j = 0; j < right_size(); ++j) {
      if (keep_r[j]) { new_r[j] = d.right_.size(); d.right_.push_back(right_[j]); }
    }
    d.index_ = detail::index_ids(d.left_, d.right_);
    d.states_.assign(d.left_.size() * d.right_.size(), PairState::None);
    for (const auto& [u, v] : edges_) {
      auto keep = [&](Vertex w) { return (w.side == Side::Left ? keep_l : keep_r)[w.index] != 0; };
      if (!keep(u) || !keep(v)) continue;
      auto remap = [&](Vertex w) {
        return Vertex{w.side, w.side == Side::Left ? new_l[w.index] : new_r[w.index]};
      };
      const Vertex nu = remap(u), nv = remap(v);
      const Vertex l = nu.side == Side::Left ? nu : nv;
      const Vertex r = nu.side == Side::Left ? nv : nu;
      d.states_[l.index * d.right_.size() + r.index] = state(
          u.side == Side::Left ? u.index : v.index, u.side == Side::Left ? v.index : u.index);
      d.edges_.emplace_back(nu, nv);
    }
    return d;
  }

  TwoPartiteDigraph induced(std::span<const std::string> ids) const {
    std::vector<Vertex> vs;
    vs.reserve(ids.size());
    for (const auto& s : ids) vs.push_back(vertex(s));
    return induced(std::span<const Vertex>(vs));
  }

  UndirectedBipartiteGraph underlying_bipartite() const;

  /// True iff all edges run X->Y or all run Y->X (vacuous when edgeless).
  bool is_bipartite_digraph() const noexcept {
    bool lr = false, rl = false;
    for (PairState s : states_) {
      lr |= s == PairState::LeftToRight;
      rl |= s == PairState::RightToLeft;
    }
    return !(lr && rl);
  }

  /// Exchanges the roles of X and Y; edges keep their direction.
  TwoPartiteDigraph swap_sides() const {
    std::vector<PairState> st(states_.size());
    for (std::size_t i = 0; i < left_size(); ++i) {
      for (std::size_t j = 0; j < right_size(); ++j) {
        PairState s = state(i, j);
        if (s == PairState::LeftToRight) s = PairState::RightToLeft;
        else if (s == PairState::RightToLeft) s = PairState::LeftToRight;
        st[j * left_size() + i] = s;
      }
    }
    TwoPartiteDigraph d;
    d.left_ = right_;
    d.right_ = left_;
    d.index_ = detail::index_ids(d.left_, d.right_);
    d.states_ = std::move(st);
    for (const auto& [u, v] : edges_) {
      d.edges_.emplace_back(Vertex{opposite(u.side), u.index}, Vertex{opposite(v.side), v.index});
    }
    return d;
  }

  /// Same ids on the same sides and the same edge set; edge order is ignored.
  friend bool operator==(const TwoPartiteDigraph& a, const TwoPartiteDigraph& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.states_ == b.states_;
  }

 private:
  void require(Vertex v) const {
    if (!contains(v)) {
      throw Error(ErrorCode::UnknownVertex,
                  "vertex " + std::string(to_string(v.side)) + "#" + std::to_string(v.index) +
                      " is out of range");
    }
  }

  std::vector<Vertex> related(Vertex v, Relation r) const {
    require(v);
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < side_size(opposite(v.side)); ++w) {
      if (relation(v, w) == r) out.push_back({opposite(v.side), w});
    }
    return out;
  }

  void rebuild_edges() {
    edges_.clear();
    for (std::size_t i = 0; i < left_size(); ++i) {
      for (std::size_t j = 0; j < right_size(); ++j) {
        switch (state(i, j)) {
          case PairState::LeftToRight: edges_.emplace_back(Vertex{Side::Left, i}, Vertex{Side::Right, j}); break;
          case PairState::RightToLeft: edges_.emplace_back(Vertex{Side::Right, j}, Vertex{Side::Left, i}); break;
          case PairState::None: break;
        }
      }
    }
  }

  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::vector<PairState> states_;  // row-major, left x right
  std::vector<Edge> edges_;        // stored order
  detail::IdIndex index_;
};

/// Bipartite graph with fixed sides; edges are unordered cross-side pairs.
class UndirectedBipartiteGraph {
 public:
  using IdEdge = std::pair<std::string, std::string>;

  UndirectedBipartiteGraph() = default;

  /// Each edge may name its endpoints in either order.
  static UndirectedBipartiteGraph build(std::vector<std::string> left,
                                        std::vector<std::string> right,
                                        std::span<const IdEdge> edges) {
    detail::check_side_duplicates(left, Side::Left);
    detail::check_side_duplicates(right, Side::Right);
    UndirectedBipartiteGraph g;
    g.index_ = detail::index_ids(left, right);
    g.left_ = std::move(left);
    g.right_ = std::move(right);
    g.adjacent_.assign(g.left_.size() * g.right_.size(), 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string field = "edges[" + std::to_string(k) + "]";
      auto u = g.index_.find(edges[k].first);
      auto v = g.index_.find(edges[k].second);
      if (!u) throw Error(ErrorCode::UnknownEndpoint, "no vertex '" + edges[k].first + "'", field);
      if (!v) throw Error(ErrorCode::UnknownEndpoint, "no vertex '" + edges[k].second + "'", field);
      if (u->side == v->side) throw Error(ErrorCode::SameSideEdge, "edge within one side", field);
      const Vertex l = u->side == Side::Left ? *u : *v;
      const Vertex r = u->side == Side::Left ? *v : *u;
      g.add(l.index, r.index);
    }
    return g;
  }

  static UndirectedBipartiteGraph from_adjacency(std::vector<std::string> left,
                                                 std::vector<std::string> right,
                                                 const std::vector<char>& adjacent) {
    detail::check_side_duplicates(left, Side::Left);
    detail::check_side_duplicates(right, Side::Right);
    if (adjacent.size() != left.size() * right.size()) {
      throw Error(ErrorCode::InvalidArgument, "adjacency matrix has the wrong size");
    }
    UndirectedBipartiteGraph g;
    g.index_ = detail::index_ids(left, right);
    g.left_ = std::move(left);
    g.right_ = std::move(right);
    g.adjacent_.assign(adjacent.size(), 0);
    for (std::size_t i = 0; i < g.left_.size(); ++i) {
      for (std::size_t j = 0; j < g.right_.size(); ++j) {
        if (adjacent[i * g.right_.size() + j]) g.add(i, j);
      }
    }
    return g;
  }

  std::size_t left_size() const noexcept { return left_.size(); }
  std::size_t right_size() const noexcept { return right_.size(); }
  std::size_t side_size(Side s) const noexcept { return s == Side::Left ? left_size() : right_size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& ids(Side s) const noexcept { return s == Side::Left ? left_ : right_; }
  const std::string& id(Vertex v) const { return ids(v.side).at(v.index); }
  std::optional<Vertex> find(std::string_view id) const { return index_.find(id); }

  bool adjacent(std::size_t left, std::size_t right) const {
    return adjacent_[left * right_.size() + right] != 0;
  }

  /// Adjacency between `v` and vertex `other` of the opposite side.
  bool adjacent_to(Vertex v, std::size_t other) const {
    return v.side == Side::Left ? adjacent(v.index, other) : adjacent(other, v.index);
  }

  std::vector<Vertex> neighbourhood(Vertex v) const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < side_size(opposite(v.side)); ++w) {
      if (adjacent_to(v, w)) out.push_back({opposite(v.side), w});
    }
    return out;
  }

  std::size_t degree(Vertex v) const { return neighbourhood(v).size(); }

  /// (left index, right index) pairs in stored order.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  UndirectedBipartiteGraph induced(std::span<const Vertex> subset) const {
    std::vector<std::size_t> ls, rs;
    for (Vertex v : subset) {
      if (v.index >= side_size(v.side)) throw Error(ErrorCode::UnknownVertex, "vertex out of range");
      (v.side == Side::Left ? ls : rs).push_back(v.index);
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::vector<std::string> l, r;
    for (auto i : ls) l.push_back(left_[i]);
    for (auto j : rs) r.push_back(right_[j]);
    std::vector<char> adj(ls.size() * rs.size(), 0);
    for (std::size_t a = 0; a < ls.size(); ++a) {
      for (std::size_t b = 0; b < rs.size(); ++b) adj[a * rs.size() + b] = adjacent(ls[a], rs[b]);
    }
    return from_adjacency(std::move(l), std::move(r), adj);
  }

  /// Encodes every edge as the pair state X->Y, so that side-preserving
  /// isomorphisms of the graph and of the encoding coincide.
  TwoPartiteDigraph as_digraph() const {
    std::vector<PairState> st(adjacent_.size(), PairState::None);
    for (std::size_t k = 0; k < adjacent_.size(); ++k) {
      if (adjacent_[k]) st[k] = PairState::LeftToRight;
    }
    return TwoPartiteDigraph::from_states(left_, right_, std::move(st));
  }

  friend bool operator==(const UndirectedBipartiteGraph& a, const UndirectedBipartiteGraph& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.adjacent_ == b.adjacent_;
  }

 private:
  void add(std::size_t l, std::size_t r) {
    char& cell = adjacent_[l * right_.size() + r];
    if (cell) return;
    cell = 1;
    edges_.emplace_back(l, r);
  }

  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::vector<char> adjacent_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  detail::IdIndex index_;
};

inline UndirectedBipartiteGraph TwoPartiteDigraph::underlying_bipartite() const {
  std::vector<char> adj(states_.size(), 0);
  for (std::size_t k = 0; k < states_.size(); ++k) adj[k] = states_[k] != PairState::None;
  return UndirectedBipartiteGraph::from_adjacency(left_, right_, adj);
}

}  // namespace twopart
