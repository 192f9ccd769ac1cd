#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "pforest/forest.hpp"
#include "pforest/graph.hpp"

namespace pforest {

/// Graphviz export. Highlighted arcs/edges (forest or matching members) carry `style=bold`.
inline std::string to_dot(const Digraph& d, const OutForest* forest = nullptr) {
  std::ostringstream out;
  out << "digraph {\n";
  for (Vertex v = 0; v < d.order(); ++v) out << "  " << v << ";\n";
  for (const Arc& a : d.arcs()) {
    out << "  " << a.tail << " -> " << a.head;
    if (forest && forest->has_arc(a)) out << " [style=bold]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const UGraph& g, const std::vector<Edge>& highlight = {}) {
  std::ostringstream out;
  out << "graph {\n";
  for (Vertex v = 0; v < g.order(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (std::find(highlight.begin(), highlight.end(), e) != highlight.end()) out << " [style=bold]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pforest
