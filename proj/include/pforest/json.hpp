#pragma once

#include <json.hpp>

#include "pforest/forest.hpp"
#include "pforest/graph.hpp"

namespace pforest {

inline constexpr const char* kVerificationSchema = "pforest.verification/1";

inline nlohmann::json arcs_to_json(const std::vector<Arc>& arcs) {
  auto out = nlohmann::json::array();
  for (const Arc& a : arcs) out.push_back({a.tail, a.head});
  return out;
}

inline nlohmann::json edges_to_json(const std::vector<Edge>& edges) {
  auto out = nlohmann::json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

/// {"n": n, "parent": [p or null ...], "arcs": [[tail, head] ...]}
inline nlohmann::json to_json(const OutForest& f) {
  auto parent = nlohmann::json::array();
  for (Vertex v = 0; v < f.order(); ++v) {
    if (f.is_root(v)) {
      parent.push_back(nullptr);
    } else {
      parent.push_back(f.parent(v));
    }
  }
  return {{"n", f.order()}, {"parent", parent}, {"arcs", arcs_to_json(f.arcs())}};
}

/// {"schema", "kind", "verdict": "pass"|"fail", "violations": [{"rule", "vertices", "arcs"}]}
inline nlohmann::json to_json(const VerificationReport& r) {
  auto violations = nlohmann::json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"rule", v.rule}, {"vertices", v.vertices}, {"arcs", arcs_to_json(v.arcs)}});
  }
  return {{"schema", kVerificationSchema},
          {"kind", to_string(r.kind)},
          {"verdict", r.passed() ? "pass" : "fail"},
          {"violations", violations}};
}

}  // namespace pforest
