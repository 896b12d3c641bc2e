#pragma once

#include "kforge/graph.hpp"

namespace fixtures {

using kforge::Edge;
using kforge::Graph;
using kforge::Multiplicity;

// w: two loops; v: one loop and one edge to w.
inline Graph wv_graph() { return Graph({"w", "v"}, {{0, 0, 2}, {1, 1, 1}, {1, 0, 1}}); }

inline Graph loops(long k) { return Graph({"v"}, k == 0 ? std::vector<Edge>{} : std::vector<Edge>{{0, 0, k}}); }

inline Graph single_sink() { return Graph({"v"}, {}); }

inline Graph from_counts(const kforge::IntMatrix& m) {
  return Graph::from_counts(Graph::numbered_labels(m.rows()), m);
}

}  // namespace fixtures
