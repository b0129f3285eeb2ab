#pragma once

// Finite-stage back-and-forth between two structures.

#include <optional>
#include <string>
#include <vector>

#include "twopart/catalog.hpp"
#include "twopart/core.hpp"
#include "twopart/genericity.hpp"
#include "twopart/iso.hpp"

namespace twopart {

enum class StepDirection { Forth, Back };

constexpr std::string_view to_string(StepDirection d) noexcept {
  return d == StepDirection::Forth ? "forth" : "back";
}

struct BafStep {
  StepDirection direction = StepDirection::Forth;
  /// Forth: a vertex of the first structure; back: of the second.
  Vertex chosen;
  /// Stated in the structure that supplies the witness.
  Requirement requirement;
  Vertex witness;
};

struct BafTrace {
  std::vector<BafStep> steps;
  PartialMap result;
};

struct BafOptions {
  /// Visiting orders; default interleaves the sides: x1, y1, x2, y2, ...
  std::optional<std::vector<Vertex>> order1;
  std::optional<std::vector<Vertex>> order2;
  /// Verify the genericity precondition on both inputs first.
  bool check_precondition = true;
};

class InsufficientGenericity : public Error {
 public:
  InsufficientGenericity(Requirement req, int structure, std::string why)
      : Error(ErrorCode::InsufficientGenericity, std::move(why),
              structure == 1 ? "first structure" : "second structure"),
        requirement_(std::move(req)),
        structure_(structure) {}
  const Requirement& requirement() const noexcept { return requirement_; }
  /// 1 or 2.
  int structure() const noexcept { return structure_; }

 private:
  Requirement requirement_;
  int structure_;
};

namespace detail {

inline std::vector<Vertex> interleaved_order(const TwoPartiteDigraph& d) {
  std::vector<Vertex> order;
  const std::size_t m = d.left_size(), n = d.right_size();
  for (std::size_t i = 0; i < std::max(m, n); ++i) {
    if (i < m) order.push_back({Side::Left, i});
    if (i < n) order.push_back({Side::Right, i});
  }
  return order;
}

inline void check_order(const TwoPartiteDigraph& d, const std::vector<Vertex>& order, const char* name) {
  std::vector<Vertex> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "vertex order repeats a vertex", name);
  }
  for (Vertex v : order) {
    if (!d.contains(v)) throw Error(ErrorCode::UnknownVertex, "vertex order names a missing vertex", name);
  }
}

/// The pattern of `v` (in `from`) toward the already matched opposite-side
/// vertices, transported through `pairs` into `to`.
inline Requirement transported_requirement(const TwoPartiteDigraph& from, Vertex v,
                                           const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  Requirement req;
  req.side = opposite(v.side);
  for (const auto& [u, image] : pairs) {
    if (u.side == v.side) continue;
    switch (from.relation(v, u.index)) {
      case Relation::Out: req.a.push_back(image.index); break;
      case Relation::In: req.b.push_back(image.index); break;
      case Relation::Perp: req.c.push_back(image.index); break;
    }
  }
  for (auto* s : {&req.a, &req.b, &req.c}) std::sort(s->begin(), s->end());
  return req;
}

inline std::optional<Vertex> next_unmatched(const std::vector<Vertex>& order, const std::vector<Vertex>& used) {
  for (Vertex v : order) {
    if (std::find(used.begin(), used.end(), v) == used.end()) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Alternates forth (next unmatched vertex of `d1`) and back (next unmatched
/// vertex of `d2`), each time taking the first witness in stored order, until
/// the map has `target_size` pairs.
inline BafTrace back_and_forth(const TwoPartiteDigraph& d1, const TwoPartiteDigraph& d2, GenericMode mode,
                               std::size_t target_size, const BafOptions& opts = {}) {
  if (mode == GenericMode::Bipartite) {
    throw Error(ErrorCode::InvalidArgument, "back-and-forth runs in 2partite or orientation mode", "mode");
  }
  if (target_size > std::min(d1.vertex_count(), d2.vertex_count())) {
    throw Error(ErrorCode::TargetExceedsStructure,
                "target size " + std::to_string(target_size) + " exceeds the smaller structure (" +
                    std::to_string(std::min(d1.vertex_count(), d2.vertex_count())) + " vertices)");
  }
  const std::vector<Vertex> order1 = opts.order1 ? *opts.order1 : detail::interleaved_order(d1);
  const std::vector<Vertex> order2 = opts.order2 ? *opts.order2 : detail::interleaved_order(d2);
  detail::check_order(d1, order1, "order1");
  detail::check_order(d2, order2, "order2");

  if (opts.check_precondition) {
    CheckOptions first;
    first.max_defects = 1;
    int which = 1;
    for (const TwoPartiteDigraph* d : {&d1, &d2}) {
      GenericityReport r = check_generic(*d, mode, target_size, first);
      if (!r.holds) {
        if (!r.defects.empty()) {
          throw InsufficientGenericity(r.defects.front(), which,
                                       "fails the level-" + std::to_string(target_size) + " " +
                                           std::string(to_string(mode)) + " extension property");
        }
        throw InsufficientGenericity(Requirement{}, which,
                                     "underlying graph is not complete, as 2partite mode requires");
      }
      ++which;
    }
  }

  BafTrace trace;
  std::vector<Vertex> domain, codomain;
  auto& pairs = trace.result.pairs;
  StepDirection dir = StepDirection::Forth;
  while (pairs.size() < target_size) {
    const bool forth = dir == StepDirection::Forth;
    const TwoPartiteDigraph& from = forth ? d1 : d2;
    const TwoPartiteDigraph& to = forth ? d2 : d1;
    std::vector<std::pair<Vertex, Vertex>> oriented = pairs;
    if (!forth) {
      for (auto& p : oriented) std::swap(p.first, p.second);
    }
    auto chosen = detail::next_unmatched(forth ? order1 : order2, forth ? domain : codomain);
    if (!chosen) {
      throw Error(ErrorCode::TargetExceedsStructure, "vertex order exhausted before the target size",
                  forth ? "order1" : "order2");
    }
    Requirement req = detail::transported_requirement(from, *chosen, oriented);
    const std::vector<Vertex>& taken = forth ? codomain : domain;
    auto witness = brute_witness_scan(to, req, taken);
    if (!witness) {
      std::string why = brute_witness_scan(to, req) ? "every witness is already matched" : "requirement has no witness";
      throw InsufficientGenericity(std::move(req), forth ? 2 : 1, std::move(why));
    }
    if (forth) {
      pairs.emplace_back(*chosen, *witness);
      domain.push_back(*chosen);
      codomain.push_back(*witness);
    } else {
      pairs.emplace_back(*witness, *chosen);
      domain.push_back(*witness);
      codomain.push_back(*chosen);
    }
    trace.steps.push_back({dir, *chosen, std::move(req), *witness});
    dir = forth ? StepDirection::Back : StepDirection::Forth;
  }
  return trace;
}

/// Replays a trace: each step's witness satisfies its requirement, the
/// requirement matches the chosen vertex's pattern, directions alternate
/// starting with forth, and every prefix map is a partial isomorphism.
inline bool replay_trace(const TwoPartiteDigraph& d1, const TwoPartiteDigraph& d2, const BafTrace& trace) {
  PartialMap prefix;
  StepDirection expected = StepDirection::Forth;
  for (const BafStep& step : trace.steps) {
    if (step.direction != expected) return false;
    const bool forth = step.direction == StepDirection::Forth;
    const TwoPartiteDigraph& from = forth ? d1 : d2;
    const TwoPartiteDigraph& to = forth ? d2 : d1;
    if (!from.contains(step.chosen) || !to.contains(step.witness)) return false;
    std::vector<std::pair<Vertex, Vertex>> oriented = prefix.pairs;
    if (!forth) {
      for (auto& p : oriented) std::swap(p.first, p.second);
    }
    if (detail::transported_requirement(from, step.chosen, oriented) != step.requirement) return false;
    const Side ws = opposite(step.requirement.side);
    if (step.witness.side != ws) return false;
    for (auto [set, rel] : {std::pair{&step.requirement.a, Relation::Out},
                            std::pair{&step.requirement.b, Relation::In},
                            std::pair{&step.requirement.c, Relation::Perp}}) {
      for (std::size_t u : *set) {
        if (to.relation(step.witness, u) != rel) return false;
      }
    }
    prefix.pairs.push_back(forth ? std::pair{step.chosen, step.witness} : std::pair{step.witness, step.chosen});
    if (!is_partial_isomorphism(d1, d2, prefix)) return false;
    expected = forth ? StepDirection::Back : StepDirection::Forth;
  }
  return prefix == trace.result;
}

struct UniquenessReport {
  GenericMode mode = GenericMode::TwoPartite;
  std::size_t side_size = 0;
  std::size_t level = 0;
  std::uint64_t seed1 = 0, seed2 = 0;
  bool success = false;
  std::optional<TwoPartiteDigraph> first, second;
  std::optional<BafTrace> trace;
  /// Failure: the error code and message; for InsufficientGenericity also
  /// the offending requirement.
  std::optional<ErrorCode> error;
  std::string message;
  std::optional<Requirement> requirement;
  /// 1 or 2: the structure the requirement refers to.
  int requirement_owner = 0;
};

/// Builds two approximants of side `n` verified to level `t` and maps `t`
/// vertices between them. Failures are reported, not thrown.
inline UniquenessReport uniqueness_demo(std::size_t n, std::size_t t, std::uint64_t seed1, std::uint64_t seed2,
                                        GenericMode mode, const BuilderOptions& builder = {}) {
  UniquenessReport report;
  report.mode = mode;
  report.side_size = n;
  report.level = t;
  report.seed1 = seed1;
  report.seed2 = seed2;
  try {
    auto build = [&](std::uint64_t seed) {
      ApproximantSpec spec;
      spec.side_size = n;
      spec.level = t;
      spec.seed = seed;
      if (mode == GenericMode::Orientation) return generic_orientation_approx(spec, builder);
      if (mode == GenericMode::TwoPartite) return generic_2partite_approx(spec, builder);
      throw Error(ErrorCode::InvalidArgument, "back-and-forth runs in 2partite or orientation mode", "mode");
    };
    report.first = build(seed1);
    report.second = build(seed2);
    report.trace = back_and_forth(*report.first, *report.second, mode, t);
    report.success = true;
  } catch (const InsufficientGenericity& e) {
    report.error = e.code();
    report.message = e.what();
    report.requirement = e.requirement();
    report.requirement_owner = e.structure();
  } catch (const Error& e) {
    report.error = e.code();
    report.message = e.what();
  }
  return report;
}

}  // namespace twopart
