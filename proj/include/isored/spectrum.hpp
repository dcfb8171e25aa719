#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "isored/graph.hpp"

namespace isored {

// Exact characteristic rational function of a graph together with numeric
// roots of one side of it. Multiplicities come from exact square-free
// factorization; the numeric part only locates each distinct root.
struct SpectrumList {
    RationalFunction char_fun;
    std::vector<std::pair<std::complex<double>, int>> roots; // sorted by (re, im)
};

// Exact determinant of a square matrix over the weight field. Entries are put
// over a common polynomial denominator and the numerator matrix is eliminated
// fraction-free (Bareiss), dividing back at the end. The 0x0 determinant is 1.
RationalFunction det_rational(const std::vector<std::vector<RationalFunction>>& m);

// det(M(G) - lambda I), exact and canonical. Raises EmptyGraph.
RationalFunction charfun(const WeightedDigraph& g);

// Distinct roots of p with exact multiplicities: square-free factors are
// solved via companion-matrix eigenvalues and Newton polishing, and each root
// inherits its factor's multiplicity. Sorted by (re, im).
std::vector<std::pair<std::complex<double>, int>> poly_roots(const Polynomial& p);

// Eigenvalues: roots of the numerator of charfun(g). Raises EmptyGraph.
SpectrumList sigma(const WeightedDigraph& g);

// Roots of the denominator of charfun(g); empty for constant-weighted graphs.
SpectrumList sigma_inv(const WeightedDigraph& g);

// Checks det(M(G)-lambda I) = det(M(G|c)-lambda I) * det(M(R_S(G))-lambda I)
// (c the complement of s) as an exact identity up to a nonzero constant
// factor. Raises NotStructural when s is not structural.
bool verify_main_theorem(const WeightedDigraph& g, const VertexSet& s);

// Largest eigenvalue modulus of a real matrix, from the exact characteristic
// polynomial of the entrywise-exact lift of a. When every entry is
// nonnegative the result is cross-checked against power iteration and must
// agree within 1e-6. Raises NonFinite, CrossCheckDisagreement, EmptyGraph.
double spectral_radius(const std::vector<std::vector<double>>& a);

} // namespace isored
