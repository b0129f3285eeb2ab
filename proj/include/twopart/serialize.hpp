#pragma once

// JSON encodings of results. Vertices are written by id, so every encoder
// takes the structure(s) the result refers to.

#include <nlohmann/json.hpp>

#include "twopart/backforth.hpp"
#include "twopart/classify.hpp"
#include "twopart/enumerate.hpp"
#include "twopart/genericity.hpp"
#include "twopart/io.hpp"
#include "twopart/iso.hpp"

namespace twopart {

using nlohmann::json;

inline json map_json(const TwoPartiteDigraph& from, const TwoPartiteDigraph& to, const PartialMap& map) {
  json out = json::array();
  for (const auto& [a, b] : map.pairs) out.push_back({from.id(a), to.id(b)});
  return out;
}

inline json requirement_json(const TwoPartiteDigraph& d, const Requirement& req) {
  auto ids = [&](const std::vector<std::size_t>& set) {
    json arr = json::array();
    for (std::size_t i : set) arr.push_back(d.id({req.side, i}));
    return arr;
  };
  return {{"side", to_string(req.side)}, {"A", ids(req.a)}, {"B", ids(req.b)}, {"C", ids(req.c)}};
}

inline json report_json(const TwoPartiteDigraph& d, const GenericityReport& r) {
  json defects = json::array();
  for (const Requirement& req : r.defects) defects.push_back(requirement_json(d, req));
  json structural = nullptr;
  if (r.structural_defect) {
    structural = {d.id({Side::Left, r.structural_defect->first}), d.id({Side::Right, r.structural_defect->second})};
  }
  return {{"mode", to_string(r.mode)},     {"level", r.level},
          {"holds", r.holds},              {"defects", std::move(defects)},
          {"structural_defect", structural}, {"truncated", r.truncated}};
}

inline json verdict_json(const TwoPartiteDigraph& d, const HomogeneityVerdict& v) {
  return {{"holds", v.holds},
          {"counterexample", v.counterexample ? map_json(d, d, *v.counterexample) : json(nullptr)}};
}

inline json label_json(const TwoPartiteDigraph& d, const ClassLabel& label) {
  json j = {{"case", to_string(label.kind)}};
  j["subkind"] = label.subkind ? json(to_string(*label.subkind)) : json(nullptr);
  j["direction"] = label.direction ? json(to_string(*label.direction)) : json(nullptr);
  j["kappa"] = label.kind == ClassCase::MKappa ? json(label.kappa) : json(nullptr);
  if (!label.reason.empty()) j["reason"] = label.reason;
  j["perp_irregular"] = label.perp_irregular;
  if (label.verdict) j["verdict"] = verdict_json(d, *label.verdict);
  if (label.report) j["report"] = report_json(d, *label.report);
  return j;
}

inline json census_entry_json(const CensusEntry& e) {
  return {{"canonical", e.canonical.hex()},
          {"representative", to_json(e.representative)},
          {"verdict", verdict_json(e.representative, e.verdict)},
          {"label", label_json(e.representative, e.label)}};
}

/// One record per step; the requirement is written in the ids of the
/// structure that supplied the witness.
inline json step_json(const TwoPartiteDigraph& d1, const TwoPartiteDigraph& d2, const BafStep& step,
                      std::size_t index) {
  const bool forth = step.direction == StepDirection::Forth;
  const TwoPartiteDigraph& from = forth ? d1 : d2;
  const TwoPartiteDigraph& to = forth ? d2 : d1;
  return {{"step", index},
          {"direction", to_string(step.direction)},
          {"chosen", from.id(step.chosen)},
          {"requirement", requirement_json(to, step.requirement)},
          {"witness", to.id(step.witness)}};
}

inline json theorem_report_json(const TheoremReport& r) {
  json discrepancies = json::array();
  for (const auto& d : r.discrepancies) discrepancies.push_back({{"what", d.what}, {"structure", to_json(d.structure)}});
  return {{"pass", r.pass},
          {"entries", r.entries},
          {"bipartite_homogeneous", r.bipartite_homogeneous},
          {"m_kappa", r.m_kappa},
          {"catalog_checked", r.catalog_checked},
          {"discrepancies", std::move(discrepancies)}};
}

}  // namespace twopart
