#pragma once

#include <string>

#include "isored/dynnet.hpp"
#include "isored/graph.hpp"

// Document formats. Graphs and networks travel as JSON with a "format"
// version field; DOT output is for visualization only.
//
// Graph document:
//   {"format": 1, "kind": "graph", "labels": [...],
//    "edges": [{"from": "v1", "to": "v2", "weight": "l/(l-1)"}, ...]}
// Edge weights use the same syntax the command line accepts.
//
// Network document:
//   {"format": 1, "kind": "network", "labels": [...],
//    "box": [[0,1], ...], "components": [<expr>, ...],
//    "lipschitz": [[...], ...] (optional),
//    "local_maps": [{"expr": <expr>, "lipschitz": 1.0}, ...] (optional)}
// Expressions are nested objects:
//   {"kind": "var", "index": 0}
//   {"kind": "identity", "arg": <expr>}
//   {"kind": "affine", "a": 2.0, "b": -1.0, "arg": <expr>}
//   {"kind": "poly", "coeffs": [c0, c1, ...], "arg": <expr>}
//   {"kind": "named", "name": "logistic4", "arg": <expr>}
//   {"kind": "sum", "weights": [...], "bias": 0.0, "args": [<expr>, ...]}
//
// Malformed documents raise BadDocument; unreadable or unwritable paths
// raise IoError.

namespace isored {

WeightedDigraph load_graph(const std::string& path);
void save_graph(const std::string& path, const WeightedDigraph& g);

InteractionNetwork load_network(const std::string& path);
void save_network(const std::string& path, const InteractionNetwork& f);

// GraphViz rendering. Vertices listed in `mark` are drawn with a double
// border; edge labels carry the canonical weight text.
std::string to_dot(const WeightedDigraph& g, const VertexSet& mark);
std::string to_dot(const WeightedDigraph& g);

} // namespace isored
