#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isored/graph.hpp"

namespace isored {

// Pairing between the branches of the source graph and the branches of a
// constructed graph: bijective per (source, target) pair, with equal lengths
// and equal weight sequences.
struct BranchCorrespondence {
    std::vector<std::pair<Branch, Branch>> pairs;
};

// Branch expansion: every branch of g over s gets its own fresh chain of
// interior vertices carrying the same weight sequence, while the vertices of
// s are shared. Chain labels are "<branch>:<k>" tags. Every vertex of g must
// lie on some branch. Raises NotStructural, UncoveredVertex.
std::pair<WeightedDigraph, BranchCorrespondence> branch_expand(const WeightedDigraph& g,
                                                               const VertexSet& s);

// Fixed-weight-set variant of expansion for sets whose complement carries no
// loops: per target, one maximal-length branch is kept as a chain (edges 1,
// except the first which carries the full product of the branch's edge
// weights), and every other branch into that target collapses to one edge
// landing on the chain so that its path length is preserved, weighted by the
// product of its edge weights. Coincident edges merge by summation and exact
// zero sums disappear. Products of weights stay inside any unital subring
// containing the originals. Raises NotSt0, UncoveredVertex.
WeightedDigraph l_construct(const WeightedDigraph& g, const VertexSet& s);

// True iff reduce(g, s) and reduce(h, t) have identical weight matrices under
// the positional correspondence of s and t. Raises NotStructural on either
// side and SizeMismatch when the sets differ in size.
bool spectrally_equivalent(const WeightedDigraph& g, const VertexSet& s,
                           const WeightedDigraph& h, const VertexSet& t);

// Weight-preserving vertex bijection from g to h when one exists, as the
// image list (vertex i of g maps to result[i] of h); the lexicographically
// least such bijection is returned. Both graphs must have at most 12
// vertices. Raises TooLarge.
std::optional<std::vector<int>> isomorphic(const WeightedDigraph& g, const WeightedDigraph& h);

// Repeatedly removes the set of minimal out-degree vertices (out-degree
// counts loops) via reduce_any until all vertices share one out-degree.
// Raises NotInGpi.
WeightedDigraph tau_min_outdegree(const WeightedDigraph& g);

} // namespace isored
