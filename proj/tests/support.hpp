#pragma once

// Brute-force oracles and random generators for the test suites. The
// oracles read nothing but the pair-state matrix, so they share no code
// with the library algorithms they check.

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "twopart/core.hpp"
#include "twopart/genericity.hpp"

namespace oracle {

using twopart::GenericMode;
using twopart::PairState;
using twopart::Requirement;
using twopart::Side;
using twopart::TwoPartiteDigraph;
using Perm = std::vector<std::size_t>;

inline std::vector<Perm> all_perms(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool preserves(const TwoPartiteDigraph& a, const TwoPartiteDigraph& b, const Perm& px, const Perm& py) {
  for (std::size_t i = 0; i < a.left_size(); ++i) {
    for (std::size_t j = 0; j < a.right_size(); ++j) {
      if (a.state(i, j) != b.state(px[i], py[j])) return false;
    }
  }
  return true;
}

/// Every side-preserving automorphism as a pair of permutations.
inline std::vector<std::pair<Perm, Perm>> automorphisms(const TwoPartiteDigraph& d) {
  std::vector<std::pair<Perm, Perm>> out;
  const auto xs = all_perms(d.left_size());
  const auto ys = all_perms(d.right_size());
  for (const Perm& px : xs) {
    for (const Perm& py : ys) {
      if (preserves(d, d, px, py)) out.emplace_back(px, py);
    }
  }
  return out;
}

inline bool isomorphic(const TwoPartiteDigraph& a, const TwoPartiteDigraph& b) {
  if (a.left_size() != b.left_size() || a.right_size() != b.right_size()) return false;
  const auto xs = all_perms(a.left_size());
  const auto ys = all_perms(a.right_size());
  for (const Perm& px : xs) {
    for (const Perm& py : ys) {
      if (preserves(a, b, px, py)) return true;
    }
  }
  return false;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Every side-respecting isomorphism between induced substructures extends
/// to an automorphism. Exponential; meant for at most 3 + 3 vertices.
inline bool homogeneous(const TwoPartiteDigraph& d) {
  const auto autos = automorphisms(d);
  const auto sx = subsets(d.left_size());
  const auto sy = subsets(d.right_size());
  for (const auto& ax : sx) {
    for (const auto& ay : sy) {
      for (const auto& bx : sx) {
        if (bx.size() != ax.size()) continue;
        for (const auto& by : sy) {
          if (by.size() != ay.size()) continue;
          for (const Perm& qx : all_perms(ax.size())) {
            for (const Perm& qy : all_perms(ay.size())) {
              bool iso = true;
              for (std::size_t i = 0; i < ax.size() && iso; ++i) {
                for (std::size_t j = 0; j < ay.size() && iso; ++j) {
                  iso = d.state(ax[i], ay[j]) == d.state(bx[qx[i]], by[qy[j]]);
                }
              }
              if (!iso) continue;
              const bool extends = std::any_of(autos.begin(), autos.end(), [&](const auto& a) {
                for (std::size_t i = 0; i < ax.size(); ++i) {
                  if (a.first[ax[i]] != bx[qx[i]]) return false;
                }
                for (std::size_t j = 0; j < ay.size(); ++j) {
                  if (a.second[ay[j]] != by[qy[j]]) return false;
                }
                return true;
              });
              if (!extends) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

/// The state a witness w must have with a member u of the requirement side
/// for label 0 (A: w -> u), 1 (B: u -> w), 2 (C: neither).
inline PairState demanded(Side req_side, int label) {
  if (label == 2) return PairState::None;
  const bool witness_to_member = label == 0;
  // Left members are x's, witnesses are y's: y -> x is RightToLeft.
  if (req_side == Side::Left) return witness_to_member ? PairState::RightToLeft : PairState::LeftToRight;
  return witness_to_member ? PairState::LeftToRight : PairState::RightToLeft;
}

inline PairState cell(const TwoPartiteDigraph& d, Side req_side, std::size_t member, std::size_t w) {
  return req_side == Side::Left ? d.state(member, w) : d.state(w, member);
}

/// Independent witness test under the mode's reading of adjacency.
inline bool witnessed(const TwoPartiteDigraph& d, GenericMode mode, const Requirement& r) {
  const Side ws = twopart::opposite(r.side);
  for (std::size_t w = 0; w < d.side_size(ws); ++w) {
    bool ok = true;
    auto need = [&](const std::vector<std::size_t>& set, int label) {
      for (std::size_t u : set) {
        const PairState s = cell(d, r.side, u, w);
        if (mode == GenericMode::Bipartite) {
          ok = ok && (label == 0 ? s != PairState::None : s == PairState::None);
        } else {
          ok = ok && s == demanded(r.side, label);
        }
      }
    };
    need(r.a, 0);
    need(r.b, 1);
    need(r.c, 2);
    if (ok) return true;
  }
  return false;
}

/// All requirements of total size <= t on both sides for the mode's label
/// set, by assigning each vertex a label or "absent".
inline std::vector<Requirement> requirements(const TwoPartiteDigraph& d, GenericMode mode, std::size_t t) {
  std::vector<int> labels;
  if (mode == GenericMode::Bipartite) labels = {0, 2};
  if (mode == GenericMode::TwoPartite) labels = {0, 1};
  if (mode == GenericMode::Orientation) labels = {0, 1, 2};
  std::vector<Requirement> out;
  for (Side s : {Side::Left, Side::Right}) {
    const std::size_t n = d.side_size(s);
    std::vector<int> assign(n, -1);
    // Odometer over {-1} + labels for every vertex.
    while (true) {
      std::size_t used = 0;
      for (int a : assign) used += a >= 0;
      if (used <= t) {
        Requirement r;
        r.side = s;
        for (std::size_t u = 0; u < n; ++u) {
          if (assign[u] == 0) r.a.push_back(u);
          if (assign[u] == 1) r.b.push_back(u);
          if (assign[u] == 2) r.c.push_back(u);
        }
        out.push_back(std::move(r));
      }
      std::size_t k = 0;
      for (; k < n; ++k) {
        auto it = std::find(labels.begin(), labels.end(), assign[k]);
        if (assign[k] == -1) {
          assign[k] = labels.front();
          break;
        }
        if (it + 1 != labels.end()) {
          assign[k] = *(it + 1);
          break;
        }
        assign[k] = -1;
      }
      if (k == n) break;
    }
  }
  return out;
}

}  // namespace oracle

namespace gen {

/// Random structure with ids x1.., y1..; `weights` gives the odds of
/// None, LeftToRight, RightToLeft.
inline twopart::TwoPartiteDigraph random_digraph(std::mt19937_64& rng, std::size_t m, std::size_t n,
                                                 std::array<double, 3> weights = {1, 1, 1}) {
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::vector<twopart::PairState> states(m * n);
  for (auto& s : states) s = static_cast<twopart::PairState>(pick(rng));
  std::vector<std::string> xs, ys;
  for (std::size_t i = 1; i <= m; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t j = 1; j <= n; ++j) ys.push_back("y" + std::to_string(j));
  return twopart::TwoPartiteDigraph::from_states(xs, ys, std::move(states));
}

/// A copy with vertices shuffled within each side and renamed; returns the
/// copy and the permutations used (old index -> new index).
struct Relabelled {
  twopart::TwoPartiteDigraph d;
  oracle::Perm px, py;
};

inline Relabelled relabel(std::mt19937_64& rng, const twopart::TwoPartiteDigraph& d) {
  Relabelled r;
  r.px.resize(d.left_size());
  r.py.resize(d.right_size());
  std::iota(r.px.begin(), r.px.end(), 0);
  std::iota(r.py.begin(), r.py.end(), 0);
  std::shuffle(r.px.begin(), r.px.end(), rng);
  std::shuffle(r.py.begin(), r.py.end(), rng);
  std::vector<twopart::PairState> states(d.left_size() * d.right_size());
  for (std::size_t i = 0; i < d.left_size(); ++i) {
    for (std::size_t j = 0; j < d.right_size(); ++j) states[r.px[i] * d.right_size() + r.py[j]] = d.state(i, j);
  }
  std::vector<std::string> xs, ys;
  for (std::size_t i = 0; i < d.left_size(); ++i) xs.push_back("p" + std::to_string(i));
  for (std::size_t j = 0; j < d.right_size(); ++j) ys.push_back("q" + std::to_string(j));
  r.d = twopart::TwoPartiteDigraph::from_states(xs, ys, std::move(states));
  return r;
}

}  // namespace gen
