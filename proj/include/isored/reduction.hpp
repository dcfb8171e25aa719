#pragma once

#include "isored/graph.hpp"

namespace isored {

// Weight of a single branch: the product of its edge weights divided by
// (lambda - loop weight) for each interior vertex. A direct edge contributes
// just its weight. Raises InteriorLoopEqualsLambda if an interior loop weight
// equals the spectral variable (a structural set rules this out).
RationalFunction branch_product(const Branch& b);

// Isospectral reduction of g onto the structural set s: the graph on s whose
// (u, v) weight is the sum of branch_product over all branches from u to v.
// Raises NotStructural when s is not structural.
WeightedDigraph reduce(const WeightedDigraph& g, const VertexSet& s);

// Matrix form of the same operation: given m = M(g) - lambda I and the kept
// index set, returns the Schur complement m[s,s] - m[s,c] m[c,c]^{-1} m[c,s]
// where c is the complement. The complement block must be triangulable by a
// vertex ordering (equivalently: its off-diagonal nonzero pattern is acyclic),
// and the reduction is carried out by permuted triangular solves, never by a
// dense inverse. Raises ComplementNotTriangulable, or SingularDiagonal when a
// diagonal entry of the complement block is zero. Keeping every index returns
// the matrix unchanged.
std::vector<std::vector<RationalFunction>> reduce_matrix(
    const std::vector<std::vector<RationalFunction>>& m, const VertexSet& s);

// Reduces over each set in turn; each must be a subset of the previous one,
// with indices given relative to the original graph. Raises NotNested on a
// non-subset step and StepNotStructural (carrying the step index) when an
// intermediate set fails to be structural.
WeightedDigraph reduce_sequence(const WeightedDigraph& g,
                                const std::vector<VertexSet>& sets);

// Reduction onto an arbitrary nonempty set for graphs whose weights all have
// numerator degree at most denominator degree: removes the complement one
// vertex at a time in ascending index order, each singleton removal being
// structural in that class. Raises NotInGpi or EmptyTarget.
WeightedDigraph reduce_any(const WeightedDigraph& g, const VertexSet& s);

// M(g) - lambda I, the matrix whose determinant drives the spectrum.
std::vector<std::vector<RationalFunction>> characteristic_matrix(const WeightedDigraph& g);

} // namespace isored
