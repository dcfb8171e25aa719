#include "doctest.h"

#include <map>
#include <set>
#include <string>

#include "isored/errors.hpp"
#include "isored/expansion.hpp"
#include "isored/reduction.hpp"
#include "isored/spectrum.hpp"
#include "isored/weights.hpp"
#include "support/build.hpp"
#include "support/generators.hpp"

using namespace isored;
using build::G;
using build::K;
using build::S;
using build::W;

namespace {

// two kept vertices, two interior ones with a loop at the first, five
// branches in total
WeightedDigraph two_island() {
    return G(4, {{0, 1, "1"},
                 {1, 0, "1"},
                 {1, 1, "1"},
                 {1, 2, "1"},
                 {2, 2, "1"},
                 {2, 3, "1"},
                 {3, 0, "1"},
                 {3, 2, "1"}});
}

std::set<std::string> weight_set(const WeightedDigraph& g) {
    std::set<std::string> out;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.has_edge(i, j)) out.insert(format_weight(g.w[i][j]));
    return out;
}

} // namespace

TEST_CASE("per-branch expansion of the two-island graph") {
    const WeightedDigraph h = two_island();
    const VertexSet s = S({0, 2}, 4);
    auto [x, corr] = branch_expand(h, s);

    CHECK(x.n() == 6); // 2 kept + one fresh vertex per interior visit
    CHECK(corr.pairs.size() == 5);
    for (const auto& [orig, fresh] : corr.pairs) {
        CHECK(orig.length() == fresh.length());
        CHECK(orig.omega == fresh.omega);
    }

    // each interior vertex lies on two branches, so one extra copy each:
    // det(M(X) - l I) = det(M(H) - l I) * (1 - l) * (0 - l)
    CHECK(charfun(x) == rf_mul(charfun(h), W("(1-l)*(-l)")));

    // eigenvalue lists agree except for one extra 1 and one extra 0
    const auto hr = sigma(h).roots;
    const auto xr = sigma(x).roots;
    auto count = [](const std::vector<std::pair<std::complex<double>, int>>& roots,
                    double at) {
        int total = 0;
        for (const auto& [z, m] : roots)
            if (std::abs(z - std::complex<double>(at, 0.0)) < 1e-7) total += m;
        return total;
    };
    int total_h = 0, total_x = 0;
    for (const auto& [z, m] : hr) total_h += m;
    for (const auto& [z, m] : xr) total_x += m;
    CHECK(total_x == total_h + 2);
    CHECK(count(xr, 1.0) == count(hr, 1.0) + 1);
    CHECK(count(xr, 0.0) == count(hr, 0.0) + 1);

    // the reduction of the expansion is the reduction of the original
    CHECK(reduce(x, S({0, 1}, 6)) == reduce(h, s));
}

TEST_CASE("expansion refuses vertices off every branch") {
    const WeightedDigraph g = G(3, {{0, 1, "1"}, {1, 0, "1"}});
    try {
        branch_expand(g, S({0}, 3));
        FAIL("expected a coverage failure");
    } catch (const UncoveredVertex& e) {
        CHECK(std::string(e.what()).find("v3") != std::string::npos);
    }
}

TEST_CASE("expansion properties on random covered instances") {
    gens::Rng rng(140221);
    for (int trial = 0; trial < 30; ++trial) {
        auto [g, s] = gens::random_covered_instance(rng, 6);
        CAPTURE(trial);
        auto [x, corr] = branch_expand(g, s);
        CHECK(x.n() >= g.n());

        // no new weight values appear
        const auto gw = weight_set(g);
        for (const auto& w : weight_set(x)) CHECK(gw.count(w) == 1);

        // exact determinant bookkeeping: one factor per extra interior copy
        RationalFunction expect = charfun(g);
        std::map<int, int> visits;
        for (const auto& [key, list] : branches(g, s))
            for (const Branch& b : list)
                for (int v : b.interior()) ++visits[v];
        for (const auto& [v, count] : visits)
            for (int k = 1; k < count; ++k)
                expect = rf_mul(expect, rf_sub(g.w[v][v], rf_lambda()));
        CHECK(charfun(x) == expect);

        std::vector<int> head(s.size());
        for (int k = 0; k < s.size(); ++k) head[k] = k;
        CHECK(reduce(x, S(head, x.n())) == reduce(g, s));
    }
}

TEST_CASE("single-target ring construction of the chain fixture") {
    // kept pair {v1, v2}; three branches into v2 of lengths 4, 3, 2 and one
    // direct branch back into v1
    const WeightedDigraph g = G(5, {{0, 2, "1"},
                                    {2, 3, "2"},
                                    {3, 1, "1"},
                                    {1, 0, "1"},
                                    {0, 4, "1"},
                                    {4, 1, "3"},
                                    {0, 1, "1"}});
    const VertexSet s = S({0, 1}, 5);
    const WeightedDigraph l = l_construct(g, s);

    REQUIRE(l.n() == 4); // |S| + (longest branch length - 2)
    CHECK(l.labels[0] == "v1");
    CHECK(l.labels[1] == "v2");
    CHECK(l.labels[2] == "v1-v3-v4-v2:1");
    CHECK(l.labels[3] == "v1-v3-v4-v2:2");

    // retained branch: head edge carries the whole product, chain edges 1
    CHECK(l.w[0][2] == W("2"));
    CHECK(l.w[2][3] == W("1"));
    CHECK(l.w[3][1] == W("1"));
    // length-3 branch lands one step into the chain, length-2 directly
    CHECK(l.w[0][3] == W("3"));
    CHECK(l.w[0][1] == W("1"));
    CHECK(l.w[1][0] == W("1"));

    // reductions agree, so the construction is isospectral over s
    CHECK(reduce(l, S({0, 1}, 4)) == reduce(g, s));
}

TEST_CASE("ring construction stays in integer weights and preserves spectra") {
    gens::Rng rng(777001);
    for (int trial = 0; trial < 25; ++trial) {
        auto [g, s] = gens::random_covered_instance(rng, 6, false, true);
        CAPTURE(trial);
        const WeightedDigraph l = l_construct(g, s);

        // size: kept vertices plus one chain slot per target
        int expect_n = s.size();
        std::map<int, int> longest;
        for (const auto& [key, list] : branches(g, s))
            for (const Branch& b : list) {
                auto [it, fresh] = longest.emplace(key.second, b.length());
                if (!fresh) it->second = std::max(it->second, b.length());
            }
        for (const auto& [t, len] : longest) expect_n += len - 2;
        CHECK(l.n() == expect_n);

        // all weights integer
        for (int i = 0; i < l.n(); ++i)
            for (int j = 0; j < l.n(); ++j)
                if (l.has_edge(i, j)) {
                    CHECK(l.w[i][j].den.is_one());
                    if (!l.w[i][j].is_zero()) {
                        for (const auto& c : l.w[i][j].num.c) {
                            CHECK(c.im == 0);
                            CHECK(c.re.get_den() == 1);
                        }
                    }
                }

        std::vector<int> head(s.size());
        for (int k = 0; k < s.size(); ++k) head[k] = k;
        CHECK(reduce(l, S(head, l.n())) == reduce(g, s));
    }
}

TEST_CASE("ring construction rejects loops in the complement") {
    const WeightedDigraph g = G(3, {{0, 1, "1"}, {1, 1, "2"}, {1, 2, "1"}, {2, 0, "1"}});
    CHECK_THROWS_AS(l_construct(g, S({0, 2}, 3)), NotSt0);
}

TEST_CASE("reduced-weight comparison of two graphs") {
    CHECK(spectrally_equivalent(K(3), S({0, 1}, 3), K(3), S({0, 2}, 3)));
    CHECK_FALSE(spectrally_equivalent(K(3), S({0, 1}, 3), K(4), S({0, 1}, 4)));
    CHECK_THROWS_AS(spectrally_equivalent(K(3), S({0}, 3), K(3), S({0, 1}, 3)),
                    SizeMismatch);
}

TEST_CASE("weighted isomorphism") {
    const WeightedDigraph g = G(3, {{0, 1, "2"}, {1, 2, "l"}, {2, 0, "1/2"}});
    const WeightedDigraph h = G(3, {{1, 0, "l"}, {0, 2, "1/2"}, {2, 1, "2"}});
    // g: v1 -2-> v2 -l-> v3 -1/2-> v1; h: v3 -2-> v2 -l-> v1 -1/2-> v3
    auto img = isomorphic(g, h);
    REQUIRE(img.has_value());
    CHECK(*img == std::vector<int>{2, 1, 0});

    CHECK(isomorphic(g, g).value() == std::vector<int>{0, 1, 2});
    const WeightedDigraph other = G(3, {{0, 1, "2"}, {1, 2, "l"}, {2, 0, "1/3"}});
    CHECK_FALSE(isomorphic(g, other).has_value());
    CHECK_FALSE(isomorphic(g, K(3)).has_value());
    CHECK_FALSE(isomorphic(g, G(2, {{0, 1, "2"}})).has_value());

    CHECK_THROWS_AS(isomorphic(K(13), K(13)), TooLarge);

    // among several automorphisms the least image wins
    const WeightedDigraph sym = K(3);
    CHECK(isomorphic(sym, sym).value() == std::vector<int>{0, 1, 2});
}

TEST_CASE("repeated trimming of minimal out-degree vertices") {
    // star: center feeds three leaves with no way back
    const WeightedDigraph star = G(4, {{0, 1, "1"}, {0, 2, "1"}, {0, 3, "1"}});
    const WeightedDigraph t = tau_min_outdegree(star);
    REQUIRE(t.n() == 1);
    CHECK(t.labels[0] == "v1");
    CHECK(t.w[0][0] == rf_zero());

    CHECK_THROWS_AS(tau_min_outdegree(G(2, {{0, 1, "l"}, {1, 0, "1"}})), NotInGpi);

    // equal out-degrees everywhere: nothing to trim
    const WeightedDigraph ring = G(3, {{0, 1, "1"}, {1, 2, "1"}, {2, 0, "1"}});
    CHECK(tau_min_outdegree(ring) == ring);
}
