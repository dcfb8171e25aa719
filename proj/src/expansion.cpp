#include "isored/expansion.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "isored/errors.hpp"
#include "isored/reduction.hpp"
#include "isored/weights.hpp"

namespace isored {

namespace {

std::string branch_tag(const WeightedDigraph& g, const Branch& b) {
    std::string s;
    for (std::size_t k = 0; k < b.vertices.size(); ++k) {
        if (k) s += "-";
        s += g.labels[b.vertices[k]];
    }
    return s;
}

void check_coverage(const WeightedDigraph& g, const BranchMap& bm) {
    std::vector<bool> covered(g.n(), false);
    for (const auto& [key, list] : bm)
        for (const Branch& b : list)
            for (int v : b.vertices) covered[v] = true;
    for (int v = 0; v < g.n(); ++v)
        if (!covered[v])
            throw UncoveredVertex("vertex " + g.labels[v] + " lies on no branch");
}

// Product of the edge weights of a branch, skipping the interior loop slots.
RationalFunction edge_product(const Branch& b) {
    RationalFunction r = rf_one();
    for (std::size_t k = 0; k < b.omega.size(); k += 2) r = rf_mul(r, b.omega[k]);
    return r;
}

} // namespace

std::pair<WeightedDigraph, BranchCorrespondence> branch_expand(const WeightedDigraph& g,
                                                               const VertexSet& s) {
    BranchMap bm = branches(g, s); // raises NotStructural
    check_coverage(g, bm);

    std::vector<int> pos_of(g.n(), -1);
    std::vector<std::string> labels;
    labels.reserve(s.size());
    for (int k = 0; k < s.size(); ++k) {
        labels.push_back(g.labels[s.idx[k]]);
        pos_of[s.idx[k]] = k;
    }

    BranchCorrespondence corr;
    std::vector<Edge> edges;
    for (const auto& [key, list] : bm) {
        for (const Branch& b : list) {
            const int m = b.length();
            Branch nb;
            nb.omega = b.omega;
            nb.vertices.push_back(pos_of[b.source()]);
            const std::string tag = branch_tag(g, b);
            for (int k = 1; k <= m - 2; ++k) {
                nb.vertices.push_back(static_cast<int>(labels.size()));
                labels.push_back(tag + ":" + std::to_string(k));
            }
            nb.vertices.push_back(pos_of[b.target()]);
            for (int k = 0; k + 1 < m; ++k) {
                edges.push_back({nb.vertices[k], nb.vertices[k + 1], b.omega[2 * k]});
                if (k + 2 < m && !b.omega[2 * k + 1].is_zero()) {
                    const int mid = nb.vertices[k + 1];
                    edges.push_back({mid, mid, b.omega[2 * k + 1]});
                }
            }
            corr.pairs.emplace_back(b, std::move(nb));
        }
    }
    return {graph_build(std::move(labels), edges), std::move(corr)};
}

WeightedDigraph l_construct(const WeightedDigraph& g, const VertexSet& s) {
    if (!is_st0(g, s))
        throw NotSt0("the complement must be loop-free and induce no cycle");
    BranchMap bm = branches(g, s);
    check_coverage(g, bm);

    std::map<int, std::vector<const Branch*>> by_target;
    for (const auto& [key, list] : bm)
        for (const Branch& b : list) by_target[key.second].push_back(&b);

    std::vector<int> pos_of(g.n(), -1);
    std::vector<std::string> labels;
    for (int k = 0; k < s.size(); ++k) {
        labels.push_back(g.labels[s.idx[k]]);
        pos_of[s.idx[k]] = k;
    }

    // One maximal-length branch is retained per target; ties go to the
    // lexicographically smallest interior sequence, then the smallest source.
    struct Retained {
        const Branch* beta;
        std::vector<int> chain; // new indices of the kept interior vertices
    };
    std::map<int, Retained> retained;
    for (const auto& [j, list] : by_target) {
        const Branch* best = list.front();
        for (const Branch* b : list) {
            if (b->length() != best->length()) {
                if (b->length() > best->length()) best = b;
                continue;
            }
            const auto bi = b->interior(), ci = best->interior();
            if (bi < ci || (bi == ci && b->source() < best->source())) best = b;
        }
        Retained r;
        r.beta = best;
        const std::string tag = branch_tag(g, *best);
        for (int k = 1; k <= best->length() - 2; ++k) {
            r.chain.push_back(static_cast<int>(labels.size()));
            labels.push_back(tag + ":" + std::to_string(k));
        }
        retained.emplace(j, std::move(r));
    }

    std::map<std::pair<int, int>, RationalFunction> acc;
    auto add = [&acc](int u, int v, const RationalFunction& w) {
        auto [it, fresh] = acc.emplace(std::pair<int, int>{u, v}, w);
        if (!fresh) it->second = rf_add(it->second, w);
    };
    for (const auto& [j, r] : retained) {
        const int m = r.beta->length();
        const int tpos = pos_of[j];
        if (m == 2) {
            add(pos_of[r.beta->source()], tpos, edge_product(*r.beta));
        } else {
            add(pos_of[r.beta->source()], r.chain.front(), edge_product(*r.beta));
            for (std::size_t k = 0; k + 1 < r.chain.size(); ++k)
                add(r.chain[k], r.chain[k + 1], rf_one());
            add(r.chain.back(), tpos, rf_one());
        }
        for (const Branch* b : by_target[j]) {
            if (b == r.beta) continue;
            // Landing spot keeps the path length of b: a branch on len
            // vertices continues through the last len - 2 chain vertices.
            const int len = b->length();
            const int entry = (len == 2) ? tpos : r.chain[m - len];
            add(pos_of[b->source()], entry, edge_product(*b));
        }
    }

    WeightedDigraph out;
    out.labels = labels;
    const int n = static_cast<int>(labels.size());
    out.w.assign(n, std::vector<RationalFunction>(n, rf_zero()));
    for (const auto& [key, w] : acc)
        if (!w.is_zero()) out.w[key.first][key.second] = w;
    return out;
}

bool spectrally_equivalent(const WeightedDigraph& g, const VertexSet& s,
                           const WeightedDigraph& h, const VertexSet& t) {
    if (s.size() != t.size())
        throw SizeMismatch("reductions of different sizes cannot correspond");
    const WeightedDigraph rg = reduce(g, s);
    const WeightedDigraph rh = reduce(h, t);
    return rg.w == rh.w;
}

namespace {

std::string vertex_signature(const WeightedDigraph& a, int v) {
    std::vector<std::string> outs, ins;
    for (int u = 0; u < a.n(); ++u) {
        if (u == v) continue;
        if (a.has_edge(v, u)) outs.push_back(format_weight(a.w[v][u]));
        if (a.has_edge(u, v)) ins.push_back(format_weight(a.w[u][v]));
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    std::string sig = a.has_edge(v, v) ? format_weight(a.w[v][v]) : "";
    sig += '|';
    for (const auto& w : outs) { sig += w; sig += ';'; }
    sig += '|';
    for (const auto& w : ins) { sig += w; sig += ';'; }
    return sig;
}

} // namespace

std::optional<std::vector<int>> isomorphic(const WeightedDigraph& g, const WeightedDigraph& h) {
    if (g.n() > 12 || h.n() > 12)
        throw TooLarge("isomorphism search is capped at 12 vertices");
    if (g.n() != h.n()) return std::nullopt;
    const int n = g.n();

    std::vector<std::string> sg(n), sh(n);
    for (int v = 0; v < n; ++v) {
        sg[v] = vertex_signature(g, v);
        sh[v] = vertex_signature(h, v);
    }
    {
        auto a = sg, b = sh;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    // Ascending candidate order makes the first full assignment the
    // lexicographically least bijection.
    std::function<bool(int)> assign = [&](int v) -> bool {
        if (v == n) return true;
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand] || sg[v] != sh[cand]) continue;
            bool ok = g.w[v][v] == h.w[cand][cand];
            for (int u = 0; ok && u < v; ++u)
                ok = g.w[v][u] == h.w[cand][image[u]] && g.w[u][v] == h.w[image[u]][cand];
            if (!ok) continue;
            image[v] = cand;
            used[cand] = true;
            if (assign(v + 1)) return true;
            used[cand] = false;
            image[v] = -1;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return image;
}

WeightedDigraph tau_min_outdegree(const WeightedDigraph& g) {
    if (!in_Gpi(g))
        throw NotInGpi("a weight has numerator degree exceeding denominator degree");
    WeightedDigraph h = g;
    for (;;) {
        std::vector<int> deg(h.n(), 0);
        for (int i = 0; i < h.n(); ++i)
            for (int j = 0; j < h.n(); ++j)
                if (h.has_edge(i, j)) ++deg[i];
        const int mn = *std::min_element(deg.begin(), deg.end());
        std::vector<int> keep;
        for (int i = 0; i < h.n(); ++i)
            if (deg[i] != mn) keep.push_back(i);
        if (keep.empty()) return h;
        h = reduce_any(h, VertexSet{std::move(keep)});
    }
}

} // namespace isored
