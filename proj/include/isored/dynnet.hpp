#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isored/graph.hpp"

namespace isored {

// Closed expression tree for one component function. Leaves are variable
// reads; a read carries a lag (how many states back it looks, 0 for the
// current state) and the substitution route that produced the lag, so a
// lagged leaf can later be rewired to a fresh delayed-copy variable.
// Expressions built from files always have lag 0 everywhere; lags appear only
// through restriction.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Var, Identity, Affine, Poly, Named, Sum };
    Kind kind = Kind::Var;

    int var = -1;           // Var: index into the state vector it reads
    int lag = 0;            // Var: 0 = current state, d = d steps back
    std::vector<int> route; // Var: substituted vertices, outermost first

    double a = 1.0, b = 0.0;    // Affine: a * arg + b
    std::vector<double> coeffs; // Poly: ascending coefficients in arg
    std::string name;           // Named: registered nonlinearity

    std::vector<double> weights; // Sum: per-argument weights
    double bias = 0.0;           // Sum: additive constant

    std::vector<ExprPtr> args; // 1 for Identity/Affine/Poly/Named, any for Sum
};

ExprPtr expr_var(int index);
ExprPtr expr_identity(ExprPtr arg);
ExprPtr expr_affine(double a, double b, ExprPtr arg);
ExprPtr expr_poly(std::vector<double> coeffs, ExprPtr arg);
// Registered names: "logistic4" is 4x(1-x), "quadratic1m" is 1-x^2.
ExprPtr expr_named(std::string name, ExprPtr arg);
ExprPtr expr_sum(std::vector<double> weights, double bias, std::vector<ExprPtr> args);
ExprPtr expr_constant(double c); // sum of no arguments

// Evaluates over a window of states, window.back() being the current one; a
// leaf with lag d reads window[window.size()-1-d]. Raises
// NonDifferentiableComponent for an unregistered Named node.
double expr_eval(const Expr& e, const std::vector<std::vector<double>>& window);

// Value and partial derivative with respect to the current-state variable
// `target`, by forward-mode differentiation of the registered primitives.
std::pair<double, double> expr_eval_d(const Expr& e,
                                      const std::vector<std::vector<double>>& window,
                                      int target);

// Sorted distinct current-state variables the expression reads.
std::vector<int> expr_reads(const Expr& e);

struct LocalMap {
    ExprPtr map;            // self-map of one coordinate interval
    double lipschitz = 1.0; // declared constant L_i
};

// Discrete-time dynamical network: state x in a product of closed intervals,
// one update component per coordinate, optional coordinate-wise local maps
// applied before the components. The lipschitz matrix entry (i, j) bounds the
// sensitivity of component j to variable i; it is either declared in the
// input or filled in by lipschitz_estimate.
struct InteractionNetwork {
    std::vector<std::string> labels;
    std::vector<ExprPtr> components;
    std::vector<std::pair<double, double>> box; // per-coordinate [lo, hi]
    std::vector<LocalMap> local_maps;           // empty, or one per coordinate
    std::optional<std::vector<std::vector<double>>> declared_lipschitz;
    std::optional<std::vector<std::vector<double>>> lipschitz;

    int n() const { return static_cast<int>(labels.size()); }
};

// Digraph with an edge v_i -> v_j of constant weight lipschitz[i][j] for
// every nonzero sensitivity. Raises MissingLipschitz when the matrix has not
// been declared or estimated yet.
WeightedDigraph interaction_graph(const InteractionNetwork& f);

// Per entry (i, j): maximum of |d component_j / d x_i| over the domain box,
// by dense grid sampling over the component's free variables followed by
// per-axis golden-section refinement around the best point. `grid` is the
// cell count per axis for components of up to two free variables; beyond
// that the axis resolution is reduced to keep the total point budget near
// 4.2e6. Declared constants override the estimate wholesale. Raises
// NonDifferentiableComponent.
std::vector<std::vector<double>> lipschitz_estimate(const InteractionNetwork& f, int grid = 1024);

// Fills f.lipschitz (declared matrix wins, otherwise estimates).
void ensure_lipschitz(InteractionNetwork& f, int grid = 1024);

struct StabilityReport {
    std::vector<std::vector<double>> m_n; // transpose(lipschitz) * diag(L)
    double rho = 0.0;                     // spectral radius of m_n
    bool stable = false;                  // rho < 1
    double corollary_bound = 0.0;         // (max L_i) * rho(lipschitz)
};

// Global-stability criterion. Raises MissingLipschitz when the matrix is
// absent; local-map constants default to 1 when no local maps are present.
StabilityReport stability_check(const InteractionNetwork& f);

// Components of the coordinates in s with every other variable recursively
// substituted by its generating component; a substitution at depth d turns
// into reads d states back, so the object is evaluated over a sliding window
// of window_size restricted states (oldest first).
struct RestrictedNetwork {
    VertexSet s;                                // original indices kept
    std::vector<std::string> labels;            // labels of s
    std::vector<std::pair<double, double>> box; // boxes of s
    std::vector<ExprPtr> components;            // leaves read s-positions
    int window_size = 1;                        // deepest lag + 1
    std::vector<int> depth;                     // per kept coordinate
};

// One update of the restricted system; window holds window_size restricted
// states, newest last.
std::vector<double> restricted_step(const RestrictedNetwork& r,
                                    const std::vector<std::vector<double>>& window);

// Restriction to a set whose complement in the interaction graph is loop-free
// and acyclic. A read whose sensitivity is exactly zero is replaced by the
// midpoint of its interval (the component provably does not vary in it), so
// every remaining route is a genuine branch. Estimates the lipschitz matrix
// first when absent. Raises NotSt0; Unsupported when local maps are present.
RestrictedNetwork restrict_network(const InteractionNetwork& f, const VertexSet& s);

// How the expansion laid out its fresh delayed-copy variables: eta assigns
// one new index per (branch, position) pair, positions counted from the
// branch source.
struct ExpansionPlan {
    VertexSet s; // original indices kept
    struct EtaEntry {
        Branch beta; // branch of the interaction graph, original indices
        int ell;     // 1 .. length-2
        int index;   // index in the expanded network
    };
    std::vector<EtaEntry> eta;
    int buffer_depth = 0;          // max over branches of length-2
    std::vector<int> target_depth; // per kept coordinate
};

// Expansion over s: the restricted components with every lagged read rewired
// to a fresh variable, plus one identity chain per branch that delays the
// branch source by up to length-2 steps. New labels continue the v<k>
// numbering when all existing labels match it. The result is a plain
// interaction (all reads lag 0) whose lipschitz matrix is left for
// estimation. Raises NotSt0; Unsupported when local maps are present.
std::pair<InteractionNetwork, ExpansionPlan> net_expand(const InteractionNetwork& f,
                                                        const VertexSet& s);

// The sensitivity matrix the expansion theorem equips the expanded network
// with: identity-chain entries 1, and for each branch one head entry equal to
// the product of the source matrix's entries along the branch. Its spectral
// radius never exceeds (and for these constants equals) that of the source
// matrix. Raises MissingLipschitz.
std::vector<std::vector<double>> constructed_constants(const InteractionNetwork& f,
                                                       const ExpansionPlan& plan);

// Orbit x^0 .. x^steps (local maps applied before the components on each
// step). Every produced state must stay inside the box up to 1e-12 slack.
// Raises BadInitialState, DomainEscape (with step and coordinate),
// Unsupported is never raised here (local maps are honored).
std::vector<std::vector<double>> simulate(const InteractionNetwork& f,
                                          const std::vector<double>& x0, long steps);

// Runs f for buffer_depth steps to fill the delay buffers, starts the
// expansion from the buffered state, co-simulates both for `steps` more
// steps, and returns the largest distance between the kept coordinates over
// the whole run. Raises as simulate and net_expand.
double verify_expansion_dynamics(const InteractionNetwork& f, const VertexSet& s,
                                 const std::vector<double>& x0, long steps);

} // namespace isored
