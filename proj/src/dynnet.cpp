#include "isored/dynnet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "isored/errors.hpp"
#include "isored/spectrum.hpp"

namespace isored {

ExprPtr expr_var(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->var = index;
    return e;
}

ExprPtr expr_identity(ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Identity;
    e->args = {std::move(arg)};
    return e;
}

ExprPtr expr_affine(double a, double b, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Affine;
    e->a = a;
    e->b = b;
    e->args = {std::move(arg)};
    return e;
}

ExprPtr expr_poly(std::vector<double> coeffs, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Poly;
    e->coeffs = std::move(coeffs);
    e->args = {std::move(arg)};
    return e;
}

ExprPtr expr_named(std::string name, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Named;
    e->name = std::move(name);
    e->args = {std::move(arg)};
    return e;
}

ExprPtr expr_sum(std::vector<double> weights, double bias, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sum;
    e->weights = std::move(weights);
    e->bias = bias;
    e->args = std::move(args);
    return e;
}

ExprPtr expr_constant(double c) { return expr_sum({}, c, {}); }

namespace {

struct NamedFun {
    double (*value)(double);
    double (*slope)(double);
};

const NamedFun& named_lookup(const std::string& name) {
    static const std::map<std::string, NamedFun> registry = {
        {"logistic4",
         {[](double x) { return 4.0 * x * (1.0 - x); }, [](double x) { return 4.0 - 8.0 * x; }}},
        {"quadratic1m",
         {[](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; }}},
    };
    auto it = registry.find(name);
    if (it == registry.end())
        throw NonDifferentiableComponent("no registered primitive named '" + name + "'");
    return it->second;
}

} // namespace

double expr_eval(const Expr& e, const std::vector<std::vector<double>>& window) {
    switch (e.kind) {
    case Expr::Kind::Var:
        return window[window.size() - 1 - e.lag][e.var];
    case Expr::Kind::Identity:
        return expr_eval(*e.args[0], window);
    case Expr::Kind::Affine:
        return e.a * expr_eval(*e.args[0], window) + e.b;
    case Expr::Kind::Poly: {
        const double x = expr_eval(*e.args[0], window);
        double acc = 0.0;
        for (auto it = e.coeffs.rbegin(); it != e.coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    case Expr::Kind::Named:
        return named_lookup(e.name).value(expr_eval(*e.args[0], window));
    case Expr::Kind::Sum: {
        double acc = e.bias;
        for (std::size_t k = 0; k < e.args.size(); ++k)
            acc += e.weights[k] * expr_eval(*e.args[k], window);
        return acc;
    }
    }
    return 0.0; // unreachable
}

std::pair<double, double> expr_eval_d(const Expr& e,
                                      const std::vector<std::vector<double>>& window,
                                      int target) {
    switch (e.kind) {
    case Expr::Kind::Var: {
        const double v = window[window.size() - 1 - e.lag][e.var];
        return {v, e.lag == 0 && e.var == target ? 1.0 : 0.0};
    }
    case Expr::Kind::Identity:
        return expr_eval_d(*e.args[0], window, target);
    case Expr::Kind::Affine: {
        auto [v, d] = expr_eval_d(*e.args[0], window, target);
        return {e.a * v + e.b, e.a * d};
    }
    case Expr::Kind::Poly: {
        auto [x, dx] = expr_eval_d(*e.args[0], window, target);
        double acc = 0.0, dacc = 0.0;
        for (auto it = e.coeffs.rbegin(); it != e.coeffs.rend(); ++it) {
            dacc = dacc * x + acc;
            acc = acc * x + *it;
        }
        return {acc, dacc * dx};
    }
    case Expr::Kind::Named: {
        const NamedFun& nf = named_lookup(e.name);
        auto [x, dx] = expr_eval_d(*e.args[0], window, target);
        return {nf.value(x), nf.slope(x) * dx};
    }
    case Expr::Kind::Sum: {
        double acc = e.bias, dacc = 0.0;
        for (std::size_t k = 0; k < e.args.size(); ++k) {
            auto [v, d] = expr_eval_d(*e.args[k], window, target);
            acc += e.weights[k] * v;
            dacc += e.weights[k] * d;
        }
        return {acc, dacc};
    }
    }
    return {0.0, 0.0}; // unreachable
}

namespace {

void collect_reads(const Expr& e, std::set<int>& out) {
    if (e.kind == Expr::Kind::Var) {
        if (e.lag == 0) out.insert(e.var);
        return;
    }
    for (const auto& a : e.args) collect_reads(*a, out);
}

} // namespace

std::vector<int> expr_reads(const Expr& e) {
    std::set<int> s;
    collect_reads(e, s);
    return {s.begin(), s.end()};
}

namespace {

WeightedDigraph graph_from_lambda(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<double>>& lam) {
    std::vector<Edge> edges;
    const int n = static_cast<int>(labels.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (lam[i][j] != 0.0)
                edges.push_back({i, j, rf_constant(GaussianRational(mpq_class(lam[i][j])))});
    return graph_build(labels, edges);
}

} // namespace

WeightedDigraph interaction_graph(const InteractionNetwork& f) {
    if (!f.lipschitz)
        throw MissingLipschitz("declare or estimate the sensitivity matrix first");
    return graph_from_lambda(f.labels, *f.lipschitz);
}

std::vector<std::vector<double>> lipschitz_estimate(const InteractionNetwork& f, int grid) {
    const int n = f.n();
    if (f.declared_lipschitz) return *f.declared_lipschitz;
    if (grid < 2) grid = 2;

    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> window(1, std::vector<double>(n));
    for (int i = 0; i < n; ++i) window[0][i] = 0.5 * (f.box[i].first + f.box[i].second);

    for (int j = 0; j < n; ++j) {
        const Expr& comp = *f.components[j];
        const std::vector<int> free_vars = expr_reads(comp);
        const int d = static_cast<int>(free_vars.size());
        if (d == 0) continue;

        // Full resolution up to two free variables; beyond that the per-axis
        // point count shrinks to keep the total grid near 4.2 million points.
        int pts = grid + 1;
        if (d > 2) {
            const int budget = static_cast<int>(std::floor(std::pow(4.2e6, 1.0 / d))) + 1;
            pts = std::min(pts, std::max(33, budget));
        }

        std::vector<double> lo(d), step(d);
        for (int k = 0; k < d; ++k) {
            lo[k] = f.box[free_vars[k]].first;
            step[k] = (f.box[free_vars[k]].second - lo[k]) / (pts - 1);
        }

        for (int target : free_vars) {
            auto slope_at = [&]() {
                return std::abs(expr_eval_d(comp, window, target).second);
            };
            double best = -1.0;
            std::vector<double> best_x(d);
            std::vector<int> odo(d, 0);
            for (;;) {
                for (int k = 0; k < d; ++k) window[0][free_vars[k]] = lo[k] + step[k] * odo[k];
                const double g = slope_at();
                if (g > best) {
                    best = g;
                    for (int k = 0; k < d; ++k) best_x[k] = window[0][free_vars[k]];
                }
                int k = 0;
                while (k < d && ++odo[k] == pts) odo[k++] = 0;
                if (k == d) break;
            }

            // Golden-section polish, one axis at a time, within one grid cell
            // of the best sample.
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            for (int sweep = 0; sweep < 2; ++sweep) {
                for (int k = 0; k < d; ++k) {
                    for (int t = 0; t < d; ++t) window[0][free_vars[t]] = best_x[t];
                    double a = std::max(lo[k], best_x[k] - step[k]);
                    double b = std::min(lo[k] + step[k] * (pts - 1), best_x[k] + step[k]);
                    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
                    window[0][free_vars[k]] = c1;
                    double f1 = slope_at();
                    window[0][free_vars[k]] = c2;
                    double f2 = slope_at();
                    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
                        if (f1 < f2) {
                            a = c1;
                            c1 = c2;
                            f1 = f2;
                            c2 = a + gr * (b - a);
                            window[0][free_vars[k]] = c2;
                            f2 = slope_at();
                        } else {
                            b = c2;
                            c2 = c1;
                            f2 = f1;
                            c1 = b - gr * (b - a);
                            window[0][free_vars[k]] = c1;
                            f1 = slope_at();
                        }
                    }
                    const double mid = 0.5 * (a + b);
                    window[0][free_vars[k]] = mid;
                    const double g = slope_at();
                    if (g > best) {
                        best = g;
                        best_x[k] = mid;
                    }
                }
            }
            out[target][j] = best;
            // restore midpoints for the next component
            for (int k = 0; k < d; ++k)
                window[0][free_vars[k]] = 0.5 * (f.box[free_vars[k]].first + f.box[free_vars[k]].second);
        }
    }
    return out;
}

void ensure_lipschitz(InteractionNetwork& f, int grid) {
    if (!f.lipschitz) f.lipschitz = lipschitz_estimate(f, grid);
}

StabilityReport stability_check(const InteractionNetwork& f) {
    if (!f.lipschitz)
        throw MissingLipschitz("declare or estimate the sensitivity matrix first");
    const auto& lam = *f.lipschitz;
    const int n = f.n();
    std::vector<double> local(n, 1.0);
    if (!f.local_maps.empty())
        for (int i = 0; i < n; ++i) local[i] = f.local_maps[i].lipschitz;

    StabilityReport rep;
    rep.m_n.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rep.m_n[i][j] = lam[j][i] * local[j];
    rep.rho = spectral_radius(rep.m_n);
    rep.stable = rep.rho < 1.0;
    rep.corollary_bound = *std::max_element(local.begin(), local.end()) * spectral_radius(lam);
    return rep;
}

namespace {

// Recursive substitution: a read of a coordinate outside the kept set is
// replaced by that coordinate's component, one time step further back.
struct Substituter {
    const InteractionNetwork& f;
    const std::vector<std::vector<double>>& lam;
    const std::vector<int>& pos_of; // kept-set position or -1
    std::vector<int> route;

    ExprPtr walk(const ExprPtr& node, int owner, int depth) {
        if (node->kind == Expr::Kind::Var) {
            const int i = node->var;
            if (lam[i][owner] == 0.0) {
                // provably insensitive read: pin it to the interval midpoint
                return expr_constant(0.5 * (f.box[i].first + f.box[i].second));
            }
            if (pos_of[i] >= 0) {
                auto leaf = std::make_shared<Expr>();
                leaf->kind = Expr::Kind::Var;
                leaf->var = pos_of[i];
                leaf->lag = depth;
                leaf->route = route;
                return leaf;
            }
            route.push_back(i);
            ExprPtr sub = walk(f.components[i], i, depth + 1);
            route.pop_back();
            return sub;
        }
        auto copy = std::make_shared<Expr>(*node);
        for (auto& a : copy->args) a = walk(a, owner, depth);
        return copy;
    }
};

int max_lag(const Expr& e) {
    if (e.kind == Expr::Kind::Var) return e.lag;
    int m = 0;
    for (const auto& a : e.args) m = std::max(m, max_lag(*a));
    return m;
}

RestrictedNetwork restrict_core(const InteractionNetwork& f, const VertexSet& s,
                                const std::vector<std::vector<double>>& lam) {
    if (!f.local_maps.empty())
        throw Unsupported("restriction is defined for interactions without local maps");
    const WeightedDigraph gamma = graph_from_lambda(f.labels, lam);
    if (!is_st0(gamma, s))
        throw NotSt0("the discarded coordinates must form a loop-free acyclic block");

    std::vector<int> pos_of(f.n(), -1);
    RestrictedNetwork r;
    r.s = s;
    for (int p = 0; p < s.size(); ++p) {
        pos_of[s.idx[p]] = p;
        r.labels.push_back(f.labels[s.idx[p]]);
        r.box.push_back(f.box[s.idx[p]]);
    }
    Substituter sub{f, lam, pos_of, {}};
    int c = 0;
    for (int p = 0; p < s.size(); ++p) {
        r.components.push_back(sub.walk(f.components[s.idx[p]], s.idx[p], 0));
        r.depth.push_back(max_lag(*r.components.back()));
        c = std::max(c, r.depth.back());
    }
    r.window_size = c + 1;
    return r;
}

} // namespace

std::vector<double> restricted_step(const RestrictedNetwork& r,
                                    const std::vector<std::vector<double>>& window) {
    std::vector<double> out(r.components.size());
    for (std::size_t p = 0; p < r.components.size(); ++p)
        out[p] = expr_eval(*r.components[p], window);
    return out;
}

RestrictedNetwork restrict_network(const InteractionNetwork& f, const VertexSet& s) {
    const std::vector<std::vector<double>> lam =
        f.lipschitz ? *f.lipschitz : lipschitz_estimate(f);
    return restrict_core(f, s, lam);
}

namespace {

std::vector<std::string> fresh_labels(const std::vector<std::string>& existing, int count) {
    bool all_numbered = !existing.empty();
    long max_num = 0;
    for (const auto& l : existing) {
        if (l.size() < 2 || l[0] != 'v' ||
            l.find_first_not_of("0123456789", 1) != std::string::npos) {
            all_numbered = false;
            break;
        }
        max_num = std::max(max_num, std::stol(l.substr(1)));
    }
    std::set<std::string> taken(existing.begin(), existing.end());
    std::vector<std::string> out;
    long next = all_numbered ? max_num + 1 : static_cast<long>(existing.size()) + 1;
    while (static_cast<int>(out.size()) < count) {
        std::string cand = "v" + std::to_string(next++);
        if (taken.count(cand)) continue;
        out.push_back(cand);
    }
    return out;
}

ExprPtr rewire(const ExprPtr& node, int target_orig, const VertexSet& s,
               const std::map<std::pair<std::vector<int>, int>, int>& eta) {
    if (node->kind == Expr::Kind::Var) {
        if (node->lag == 0) return expr_var(node->var);
        std::vector<int> beta;
        beta.reserve(node->route.size() + 2);
        beta.push_back(s.idx[node->var]);
        beta.insert(beta.end(), node->route.rbegin(), node->route.rend());
        beta.push_back(target_orig);
        auto it = eta.find({beta, node->lag});
        if (it == eta.end())
            throw std::logic_error("lagged read without a matching delay variable");
        return expr_var(it->second);
    }
    auto copy = std::make_shared<Expr>(*node);
    for (auto& a : copy->args) a = rewire(a, target_orig, s, eta);
    return copy;
}

} // namespace

std::pair<InteractionNetwork, ExpansionPlan> net_expand(const InteractionNetwork& f,
                                                        const VertexSet& s) {
    if (!f.local_maps.empty())
        throw Unsupported("expansion is defined for interactions without local maps");
    const std::vector<std::vector<double>> lam =
        f.lipschitz ? *f.lipschitz : lipschitz_estimate(f);
    const RestrictedNetwork rn = restrict_core(f, s, lam); // raises NotSt0
    const WeightedDigraph gamma = graph_from_lambda(f.labels, lam);
    BranchMap bm = branches(gamma, s);

    std::vector<int> pos_of(f.n(), -1);
    for (int p = 0; p < s.size(); ++p) pos_of[s.idx[p]] = p;

    ExpansionPlan plan;
    plan.s = s;
    plan.target_depth.assign(s.size(), 0);
    std::map<std::pair<std::vector<int>, int>, int> eta_index;
    int next_index = s.size();
    for (int p = 0; p < s.size(); ++p) {
        const int j = s.idx[p];
        std::vector<const Branch*> into;
        for (const auto& [key, list] : bm)
            if (key.second == j)
                for (const Branch& b : list) into.push_back(&b);
        std::sort(into.begin(), into.end(), [](const Branch* x, const Branch* y) {
            if (x->length() != y->length()) return x->length() < y->length();
            const auto xi = x->interior(), yi = y->interior();
            if (xi != yi) return xi < yi;
            return x->source() < y->source();
        });
        for (const Branch* b : into) {
            plan.target_depth[p] = std::max(plan.target_depth[p], b->length() - 2);
            for (int ell = 1; ell <= b->length() - 2; ++ell) {
                plan.eta.push_back({*b, ell, next_index});
                eta_index[{b->vertices, ell}] = next_index;
                ++next_index;
            }
        }
        plan.buffer_depth = std::max(plan.buffer_depth, plan.target_depth[p]);
    }

    InteractionNetwork xf;
    xf.labels = rn.labels;
    xf.box = rn.box;
    const std::vector<std::string> fresh =
        fresh_labels(f.labels, static_cast<int>(plan.eta.size()));
    for (std::size_t k = 0; k < plan.eta.size(); ++k) {
        xf.labels.push_back(fresh[k]);
        xf.box.push_back(f.box[plan.eta[k].beta.source()]);
    }
    for (int p = 0; p < s.size(); ++p)
        xf.components.push_back(rewire(rn.components[p], s.idx[p], s, eta_index));
    for (const auto& e : plan.eta) {
        const int feed = e.ell == 1 ? pos_of[e.beta.source()]
                                    : eta_index.at({e.beta.vertices, e.ell - 1});
        xf.components.push_back(expr_identity(expr_var(feed)));
    }
    return {std::move(xf), std::move(plan)};
}

std::vector<std::vector<double>> constructed_constants(const InteractionNetwork& f,
                                                       const ExpansionPlan& plan) {
    if (!f.lipschitz)
        throw MissingLipschitz("the source network needs its sensitivity matrix");
    const auto& lam = *f.lipschitz;
    const int ns = plan.s.size();
    const int total = ns + static_cast<int>(plan.eta.size());
    std::vector<int> pos_of(f.n(), -1);
    for (int p = 0; p < ns; ++p) pos_of[plan.s.idx[p]] = p;

    std::vector<std::vector<double>> out(total, std::vector<double>(total, 0.0));
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) out[a][b] = lam[plan.s.idx[a]][plan.s.idx[b]];
    for (std::size_t k = 0; k < plan.eta.size(); ++k) {
        const auto& e = plan.eta[k];
        if (e.ell == 1)
            out[pos_of[e.beta.source()]][e.index] = 1.0;
        else
            out[plan.eta[k - 1].index][e.index] = 1.0;
        if (e.ell == e.beta.length() - 2) {
            double prod = 1.0;
            for (int t = 0; t + 1 < e.beta.length(); ++t)
                prod *= lam[e.beta.vertices[t]][e.beta.vertices[t + 1]];
            out[e.index][pos_of[e.beta.target()]] = prod;
        }
    }
    return out;
}

std::vector<std::vector<double>> simulate(const InteractionNetwork& f,
                                          const std::vector<double>& x0, long steps) {
    const int n = f.n();
    const double slack = 1e-12;
    if (static_cast<int>(x0.size()) != n)
        throw BadInitialState("initial state has " + std::to_string(x0.size()) +
                              " coordinates, expected " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(x0[i]) || x0[i] < f.box[i].first - slack ||
            x0[i] > f.box[i].second + slack)
            throw BadInitialState("coordinate " + f.labels[i] + " starts outside its interval");

    std::vector<std::vector<double>> traj;
    traj.reserve(static_cast<std::size_t>(std::max(steps, 0L)) + 1);
    traj.push_back(x0);
    std::vector<std::vector<double>> window(1);
    for (long k = 0; k < steps; ++k) {
        window[0] = traj.back();
        if (!f.local_maps.empty())
            for (int i = 0; i < n; ++i)
                window[0][i] = expr_eval(*f.local_maps[i].map,
                                         std::vector<std::vector<double>>{traj.back()});
        std::vector<double> next(n);
        for (int j = 0; j < n; ++j) next[j] = expr_eval(*f.components[j], window);
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(next[j]) || next[j] < f.box[j].first - slack ||
                next[j] > f.box[j].second + slack)
                throw DomainEscape(k + 1, j, f.labels[j]);
        traj.push_back(std::move(next));
    }
    return traj;
}

double verify_expansion_dynamics(const InteractionNetwork& f, const VertexSet& s,
                                 const std::vector<double>& x0, long steps) {
    auto [xf, plan] = net_expand(f, s);
    const long c = plan.buffer_depth;
    const auto warmup = simulate(f, x0, c); // x^0 .. x^C

    std::vector<double> buffered(xf.n());
    for (int p = 0; p < s.size(); ++p) buffered[p] = warmup.back()[s.idx[p]];
    for (const auto& e : plan.eta)
        buffered[e.index] = warmup[c - e.ell][e.beta.source()];

    const auto orig = simulate(f, warmup.back(), steps);
    const auto expanded = simulate(xf, buffered, steps);
    double dev = 0.0;
    for (long k = 0; k <= steps; ++k)
        for (int p = 0; p < s.size(); ++p)
            dev = std::max(dev, std::abs(orig[k][s.idx[p]] - expanded[k][p]));
    return dev;
}

} // namespace isored
