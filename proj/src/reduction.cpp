#include "isored/reduction.hpp"

#include <algorithm>
#include <queue>

#include "isored/errors.hpp"

namespace isored {

RationalFunction branch_product(const Branch& b) {
    const int m = b.length();
    RationalFunction result = b.omega[0];
    for (int j = 1; j <= m - 2; ++j) {
        const RationalFunction& loop = b.omega[2 * j - 1];
        if (loop == rf_lambda())
            throw InteriorLoopEqualsLambda("interior vertex loop weight equals the spectral variable");
        result = rf_div(rf_mul(result, b.omega[2 * j]), rf_sub(rf_lambda(), loop));
    }
    return result;
}

WeightedDigraph reduce(const WeightedDigraph& g, const VertexSet& s) {
    BranchMap bm = branches(g, s); // raises NotStructural when s is not
    WeightedDigraph h;
    h.labels.reserve(s.size());
    for (int v : s.idx) h.labels.push_back(g.labels[v]);
    h.w.assign(s.size(), std::vector<RationalFunction>(s.size(), rf_zero()));
    for (int a = 0; a < s.size(); ++a) {
        for (int b = 0; b < s.size(); ++b) {
            auto it = bm.find({s.idx[a], s.idx[b]});
            if (it == bm.end()) continue;
            RationalFunction sum = rf_zero();
            for (const Branch& br : it->second) sum = rf_add(sum, branch_product(br));
            h.w[a][b] = sum;
        }
    }
    return h;
}

std::vector<std::vector<RationalFunction>> reduce_matrix(
    const std::vector<std::vector<RationalFunction>>& m, const VertexSet& s) {
    const int n = static_cast<int>(m.size());
    for (int v : s.idx)
        if (v < 0 || v >= n) throw BadIndex("kept index out of range");
    const VertexSet comp = complement_set(s, n);
    const int nc = comp.size();
    if (nc == 0) return m;

    // topological order of the complement block's off-diagonal pattern
    std::vector<int> indeg(nc, 0);
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b)
            if (a != b && !m[comp.idx[a]][comp.idx[b]].is_zero()) ++indeg[b];
    std::queue<int> q;
    for (int a = 0; a < nc; ++a)
        if (indeg[a] == 0) q.push(a);
    std::vector<int> topo;
    topo.reserve(nc);
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        topo.push_back(a);
        for (int b = 0; b < nc; ++b)
            if (a != b && !m[comp.idx[a]][comp.idx[b]].is_zero())
                if (--indeg[b] == 0) q.push(b);
    }
    if (static_cast<int>(topo.size()) != nc)
        throw ComplementNotTriangulable(
            "removed block has a cyclic off-diagonal pattern; no ordering makes it triangular");
    for (int a = 0; a < nc; ++a)
        if (m[comp.idx[a]][comp.idx[a]].is_zero())
            throw SingularDiagonal("removed block has a zero diagonal entry");

    // Solve A X = B by substitution in reverse topological order, where
    // A = m[comp, comp] and B = m[comp, kept]. Any off-diagonal A[a][b] != 0
    // has b later in the order, so X[b] is already known.
    const int ns = s.size();
    std::vector<std::vector<RationalFunction>> x(nc, std::vector<RationalFunction>(ns, rf_zero()));
    for (int t = nc - 1; t >= 0; --t) {
        const int a = topo[t];
        for (int j = 0; j < ns; ++j) {
            RationalFunction acc = m[comp.idx[a]][s.idx[j]];
            for (int b = 0; b < nc; ++b) {
                if (b == a) continue;
                const RationalFunction& coef = m[comp.idx[a]][comp.idx[b]];
                if (coef.is_zero()) continue;
                acc = rf_sub(acc, rf_mul(coef, x[b][j]));
            }
            x[a][j] = rf_div(acc, m[comp.idx[a]][comp.idx[a]]);
        }
    }

    std::vector<std::vector<RationalFunction>> out(ns, std::vector<RationalFunction>(ns, rf_zero()));
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) {
            RationalFunction acc = m[s.idx[i]][s.idx[j]];
            for (int b = 0; b < nc; ++b) {
                const RationalFunction& coef = m[s.idx[i]][comp.idx[b]];
                if (coef.is_zero()) continue;
                acc = rf_sub(acc, rf_mul(coef, x[b][j]));
            }
            out[i][j] = acc;
        }
    }
    return out;
}

WeightedDigraph reduce_sequence(const WeightedDigraph& g, const std::vector<VertexSet>& sets) {
    WeightedDigraph h = g;
    std::vector<int> orig(g.n()); // original index of each current vertex
    for (int v = 0; v < g.n(); ++v) orig[v] = v;
    for (std::size_t step = 0; step < sets.size(); ++step) {
        std::vector<int> positions;
        positions.reserve(sets[step].idx.size());
        for (int v : sets[step].idx) {
            auto it = std::lower_bound(orig.begin(), orig.end(), v);
            if (it == orig.end() || *it != v)
                throw NotNested("set " + std::to_string(step) +
                                " is not contained in the previous one");
            positions.push_back(static_cast<int>(it - orig.begin()));
        }
        VertexSet s{std::move(positions)};
        StructuralCheck chk = is_structural(h, s);
        if (!chk) throw StepNotStructural(step, chk.reason);
        h = reduce(h, s);
        orig = sets[step].idx;
    }
    return h;
}

WeightedDigraph reduce_any(const WeightedDigraph& g, const VertexSet& s) {
    if (s.idx.empty()) throw EmptyTarget("target vertex set is empty");
    for (int v : s.idx)
        if (v < 0 || v >= g.n()) throw BadIndex("vertex index out of range");
    if (!in_Gpi(g))
        throw NotInGpi("a weight has numerator degree exceeding denominator degree");
    WeightedDigraph h = g;
    std::vector<int> orig(g.n());
    for (int v = 0; v < g.n(); ++v) orig[v] = v;
    for (int v : complement_set(s, g.n()).idx) {
        auto it = std::lower_bound(orig.begin(), orig.end(), v);
        const int pos = static_cast<int>(it - orig.begin());
        std::vector<int> kept;
        kept.reserve(h.n() - 1);
        for (int p = 0; p < h.n(); ++p)
            if (p != pos) kept.push_back(p);
        h = reduce(h, VertexSet{std::move(kept)});
        orig.erase(it);
    }
    return h;
}

std::vector<std::vector<RationalFunction>> characteristic_matrix(const WeightedDigraph& g) {
    auto m = g.w;
    for (int v = 0; v < g.n(); ++v) m[v][v] = rf_sub(m[v][v], rf_lambda());
    return m;
}

} // namespace isored
