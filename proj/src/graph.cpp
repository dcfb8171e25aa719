#include "isored/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "isored/errors.hpp"

namespace isored {

int WeightedDigraph::label_index(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
        if (labels[i] == label) return i;
    throw BadIndex("unknown vertex label '" + label + "'");
}

bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.labels == b.labels && a.w == b.w;
}

bool VertexSet::contains(int v) const {
    return std::binary_search(idx.begin(), idx.end(), v);
}

VertexSet make_vertex_set(std::vector<int> indices, int n) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= n)
            throw BadIndex("vertex index " + std::to_string(indices[k]) +
                           " out of range for " + std::to_string(n) + " vertices");
        if (k > 0 && indices[k] == indices[k - 1])
            throw BadIndex("vertex index " + std::to_string(indices[k]) + " repeated");
    }
    return VertexSet{std::move(indices)};
}

VertexSet complement_set(const VertexSet& s, int n) {
    std::vector<int> out;
    out.reserve(n - s.size());
    for (int v = 0; v < n; ++v)
        if (!s.contains(v)) out.push_back(v);
    return VertexSet{std::move(out)};
}

WeightedDigraph graph_build(std::vector<std::string> labels, const std::vector<Edge>& edges) {
    const int n = static_cast<int>(labels.size());
    std::set<std::string> seen_labels(labels.begin(), labels.end());
    if (static_cast<int>(seen_labels.size()) != n)
        throw BadIndex("vertex labels must be distinct");
    WeightedDigraph g;
    g.labels = std::move(labels);
    g.w.assign(n, std::vector<RationalFunction>(n, rf_zero()));
    for (const Edge& e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw BadIndex("edge endpoint out of range");
        if (e.weight.is_zero())
            throw ZeroWeightEdge("edge " + g.labels[e.from] + " -> " + g.labels[e.to] +
                                 " has zero weight; omit it instead");
        if (!g.w[e.from][e.to].is_zero())
            throw DuplicateEdge("edge " + g.labels[e.from] + " -> " + g.labels[e.to] +
                                " specified twice");
        g.w[e.from][e.to] = e.weight;
    }
    return g;
}

WeightedDigraph subgraph(const WeightedDigraph& g, const VertexSet& s) {
    if (s.idx.empty()) throw EmptySet("cannot take the subgraph on an empty vertex set");
    WeightedDigraph h;
    h.labels.reserve(s.size());
    for (int v : s.idx) {
        if (v < 0 || v >= g.n()) throw BadIndex("vertex index out of range");
        h.labels.push_back(g.labels[v]);
    }
    h.w.assign(s.size(), std::vector<RationalFunction>(s.size(), rf_zero()));
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            h.w[a][b] = g.w[s.idx[a]][s.idx[b]];
    return h;
}

WeightedDigraph strip_loops(const WeightedDigraph& g) {
    WeightedDigraph h = g;
    for (int v = 0; v < h.n(); ++v) h.w[v][v] = rf_zero();
    return h;
}

namespace {

// Finds a directed cycle among the given vertices ignoring loops, or reports
// none via an empty vector. Kahn peeling; any leftover vertex lies on or
// feeds into a cycle, and a walk along leftover successors recovers one.
std::vector<int> find_cycle(const WeightedDigraph& g, const std::vector<int>& verts) {
    std::map<int, int> indeg;
    for (int v : verts) indeg[v] = 0;
    for (int u : verts)
        for (int v : verts)
            if (u != v && g.has_edge(u, v)) ++indeg[v];
    std::queue<int> q;
    for (auto& [v, d] : indeg)
        if (d == 0) q.push(v);
    std::set<int> removed;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        removed.insert(u);
        for (int v : verts)
            if (v != u && g.has_edge(u, v) && !removed.count(v))
                if (--indeg[v] == 0) q.push(v);
    }
    std::vector<int> leftover;
    for (int v : verts)
        if (!removed.count(v)) leftover.push_back(v);
    if (leftover.empty()) return {};
    // walk successors inside the leftover set until a vertex repeats
    std::set<int> left(leftover.begin(), leftover.end());
    std::vector<int> walk{leftover.front()};
    std::set<int> on_walk{leftover.front()};
    for (;;) {
        int u = walk.back();
        int next = -1;
        for (int v : leftover)
            if (v != u && g.has_edge(u, v)) { next = v; break; }
        // every leftover vertex has a leftover successor, so next is found
        if (on_walk.count(next)) {
            auto it = std::find(walk.begin(), walk.end(), next);
            return {it, walk.end()};
        }
        walk.push_back(next);
        on_walk.insert(next);
    }
}

} // namespace

StructuralCheck is_structural(const WeightedDigraph& g, const VertexSet& s) {
    const VertexSet comp = complement_set(s, g.n());
    for (int v : comp.idx) {
        if (g.w[v][v] == rf_lambda()) {
            return {false, "complement vertex " + g.labels[v] +
                               " carries a loop weight equal to the spectral variable"};
        }
    }
    std::vector<int> cyc = find_cycle(g, comp.idx);
    if (!cyc.empty()) {
        std::ostringstream os;
        os << "complement contains the cycle ";
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (k) os << " -> ";
            os << g.labels[cyc[k]];
        }
        os << " -> " << g.labels[cyc.front()];
        return {false, os.str()};
    }
    return {true, ""};
}

bool is_st0(const WeightedDigraph& g, const VertexSet& s) {
    if (!is_structural(g, s)) return false;
    for (int v : complement_set(s, g.n()).idx)
        if (!g.w[v][v].is_zero()) return false;
    return true;
}

bool in_Gpi(const WeightedDigraph& g) {
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (!g.w[i][j].is_zero() && rf_pi(g.w[i][j]) > 0) return false;
    return true;
}

namespace {

// Depth-first enumeration of set-to-set walks whose interior avoids the set.
// Interiors repeat no vertex (the complement is acyclic under a structural
// set, so freshness is automatic, but the stack check keeps this safe).
// Emitting the direct termination of each prefix before recursing deeper
// yields branches sorted lexicographically by interior sequence.
struct BranchSearch {
    const WeightedDigraph& g;
    const VertexSet& s;
    BranchMap out;
    std::vector<int> path; // current walk, starts at a set vertex
    std::vector<bool> on_path;

    BranchSearch(const WeightedDigraph& gg, const VertexSet& ss)
        : g(gg), s(ss), on_path(gg.n(), false) {}

    void record(int target) {
        Branch b;
        b.vertices = path;
        b.vertices.push_back(target);
        const int m = b.length();
        b.omega.reserve(2 * (m - 2) + 1);
        for (int k = 0; k + 1 < m; ++k) {
            b.omega.push_back(g.w[b.vertices[k]][b.vertices[k + 1]]);
            if (k + 2 < m) {
                int mid = b.vertices[k + 1];
                b.omega.push_back(g.w[mid][mid]); // interior loop weight, zero if absent
            }
        }
        out[{b.source(), target}].push_back(std::move(b));
    }

    void extend() {
        const int u = path.back();
        for (int v : s.idx)
            if (g.has_edge(u, v)) record(v);
        for (int v = 0; v < g.n(); ++v) {
            if (s.contains(v) || !g.has_edge(u, v) || on_path[v]) continue;
            path.push_back(v);
            on_path[v] = true;
            extend();
            on_path[v] = false;
            path.pop_back();
        }
    }
};

} // namespace

BranchMap branches(const WeightedDigraph& g, const VertexSet& s) {
    StructuralCheck chk = is_structural(g, s);
    if (!chk) throw NotStructural(chk.reason);
    BranchSearch search(g, s);
    for (int v : s.idx) {
        search.path = {v};
        search.on_path.assign(g.n(), false);
        search.extend();
    }
    return search.out;
}

} // namespace isored
