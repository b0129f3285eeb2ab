#pragma once

// Canonical JSON file format and DOT export.
//
//   {"x": ["x1", ...], "y": ["y1", ...], "edges": [["x1", "y1"], ...]}

#include <istream>
#include <iterator>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "twopart/core.hpp"

namespace twopart {

inline nlohmann::json to_json(const TwoPartiteDigraph& d) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : d.edges()) edges.push_back({d.id(u), d.id(v)});
  return {{"x", d.ids(Side::Left)}, {"y", d.ids(Side::Right)}, {"edges", std::move(edges)}};
}

namespace detail {

inline std::vector<std::string> read_id_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, "missing field", key);
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, "expected an array of ids", key);
  std::vector<std::string> ids;
  ids.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw Error(ErrorCode::ParseError, "expected a string id",
                  std::string(key) + "[" + std::to_string(i) + "]");
    }
    ids.push_back(arr[i].get<std::string>());
  }
  return ids;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') { ++line; col = 1; } else { ++col; }
  }
  return {line, col};
}

}  // namespace detail

/// Reads the canonical object; every build-time validation applies.
inline TwoPartiteDigraph digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object", "$");
  auto left = detail::read_id_list(j, "x");
  auto right = detail::read_id_list(j, "y");
  std::vector<TwoPartiteDigraph::IdEdge> edges;
  if (j.contains("edges")) {
    const auto& arr = j.at("edges");
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, "expected an array of pairs", "edges");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto& e = arr[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw Error(ErrorCode::ParseError, "expected [source, target] string pair",
                    "edges[" + std::to_string(k) + "]");
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  } else {
    throw Error(ErrorCode::ParseError, "missing field", "edges");
  }
  return TwoPartiteDigraph::build(std::move(left), std::move(right), edges);
}

inline TwoPartiteDigraph parse_digraph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError, e.what(),
                "line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  return digraph_from_json(j);
}

inline TwoPartiteDigraph read_digraph(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_digraph(text);
}

/// One-line JSON, sides and edges in stored order.
inline std::string write_json(const TwoPartiteDigraph& d) { return to_json(d).dump(); }

/// X vertices as boxes, Y vertices as ellipses.
inline std::string write_dot(const TwoPartiteDigraph& d) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph D {\n";
  os << "  subgraph cluster_x {\n    label=\"X\";\n";
  for (const auto& id : d.ids(Side::Left)) os << "    " << quote(id) << " [shape=box];\n";
  os << "  }\n  subgraph cluster_y {\n    label=\"Y\";\n";
  for (const auto& id : d.ids(Side::Right)) os << "    " << quote(id) << " [shape=ellipse];\n";
  os << "  }\n";
  for (const auto& [u, v] : d.edges()) os << "  " << quote(d.id(u)) << " -> " << quote(d.id(v)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace twopart
