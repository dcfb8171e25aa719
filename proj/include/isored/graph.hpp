#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "isored/ratfun.hpp"

namespace isored {

// Finite directed graph with loops. Edge weights live in the rational function
// field; a weight is exactly zero precisely when the edge is absent, so the
// weighted adjacency matrix is the whole structure.
struct WeightedDigraph {
    std::vector<std::string> labels;
    std::vector<std::vector<RationalFunction>> w; // w[i][j] = weight of edge i -> j

    int n() const { return static_cast<int>(labels.size()); }
    const RationalFunction& weight(int i, int j) const { return w[i][j]; }
    bool has_edge(int i, int j) const { return !w[i][j].is_zero(); }
    // Index of a label; raises BadIndex when the label is unknown.
    int label_index(const std::string& label) const;
};

bool operator==(const WeightedDigraph& a, const WeightedDigraph& b);

// Subset of the vertices of some graph, kept as strictly increasing indices.
struct VertexSet {
    std::vector<int> idx;

    int size() const { return static_cast<int>(idx.size()); }
    bool contains(int v) const;
};

// Validates bounds and strict monotonicity (the input may be unsorted but must
// be duplicate-free) and normalizes to increasing order.
VertexSet make_vertex_set(std::vector<int> indices, int n);
VertexSet complement_set(const VertexSet& s, int n);

// Path or cycle between set vertices whose interior stays outside the set.
// The weight sequence alternates edge, loop, edge, ..., edge and has
// 2(m-2)+1 entries for m vertices.
struct Branch {
    std::vector<int> vertices;
    std::vector<RationalFunction> omega;

    int length() const { return static_cast<int>(vertices.size()); } // vertex count
    int source() const { return vertices.front(); }
    int target() const { return vertices.back(); }
    std::vector<int> interior() const {
        return {vertices.begin() + 1, vertices.end() - 1};
    }
};

using BranchMap = std::map<std::pair<int, int>, std::vector<Branch>>;

struct Edge {
    int from, to;
    RationalFunction weight;
};

// Builds a graph from explicit edges. Raises DuplicateEdge on a repeated
// (from, to) pair, ZeroWeightEdge on an exactly-zero weight, and BadIndex on
// bad endpoints or repeated labels.
WeightedDigraph graph_build(std::vector<std::string> labels, const std::vector<Edge>& edges);

// Induced subgraph on the given nonempty set (principal submatrix).
WeightedDigraph subgraph(const WeightedDigraph& g, const VertexSet& s);

// Copy with the diagonal zeroed.
WeightedDigraph strip_loops(const WeightedDigraph& g);

struct StructuralCheck {
    bool ok;
    std::string reason; // names the violating cycle or vertex when not ok
    explicit operator bool() const { return ok; }
};

// A set is structural when the loop-stripped subgraph induced on its
// complement is acyclic and no complement vertex carries loop weight equal to
// the spectral variable.
StructuralCheck is_structural(const WeightedDigraph& g, const VertexSet& s);

// Structural and additionally every complement loop weight is exactly zero.
bool is_st0(const WeightedDigraph& g, const VertexSet& s);

// Every nonzero weight has numerator degree at most denominator degree.
bool in_Gpi(const WeightedDigraph& g);

// All branches between set vertices, grouped by ordered (source, target) pair.
// Within a pair, branches are ordered lexicographically by their interior
// vertex index sequence. Raises NotStructural when the set is not structural.
BranchMap branches(const WeightedDigraph& g, const VertexSet& s);

} // namespace isored
