#include "isored/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "isored/errors.hpp"
#include "isored/reduction.hpp"

namespace isored {

RationalFunction det_rational(const std::vector<std::vector<RationalFunction>>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return rf_one();

    Polynomial d = Polynomial::one();
    for (const auto& row : m)
        for (const auto& e : row) d = poly_lcm(d, e.den);
    std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = m[i][j].num * poly_divexact(d, m[i][j].den);

    // Fraction-free elimination: every intermediate entry is a minor of the
    // lifted matrix, so the division by the previous pivot is exact.
    bool negate = false;
    Polynomial prev = Polynomial::one();
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k].is_zero()) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a[i][k].is_zero()) { r = i; break; }
            if (r < 0) return rf_zero();
            std::swap(a[k], a[r]);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = poly_divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k];
    }
    Polynomial det = a[n - 1][n - 1];
    if (negate) det = -det;
    return rf_make(det, poly_pow(d, static_cast<unsigned>(n)));
}

RationalFunction charfun(const WeightedDigraph& g) {
    if (g.n() == 0) throw EmptyGraph("characteristic function of an empty graph");
    return det_rational(characteristic_matrix(g));
}

namespace {

// Magnitude bound sum(|c_k| |z|^k), the natural scale for residual tests.
double eval_scale(const Polynomial& p, const std::complex<double>& z) {
    const double az = std::abs(z);
    double acc = 0.0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * az + std::abs(to_complex(*it));
    return acc;
}

std::vector<std::complex<double>> squarefree_roots(const Polynomial& f) {
    const int d = f.degree();
    const Polynomial fm = monic(f);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -to_complex(fm.c[i]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);

    const Polynomial df = derivative(f);
    std::vector<std::complex<double>> roots;
    roots.reserve(d);
    for (int i = 0; i < d; ++i) {
        std::complex<double> z = solver.eigenvalues()(i);
        std::complex<double> best = z;
        double best_res = std::abs(f.eval(z));
        for (int it = 0; it < 80; ++it) {
            const std::complex<double> fz = f.eval(z);
            const double res = std::abs(fz);
            if (res < best_res) { best_res = res; best = z; }
            if (res <= 1e-14 * std::max(1.0, eval_scale(f, z))) break;
            const std::complex<double> dz = df.eval(z);
            if (std::abs(dz) == 0.0) break;
            z -= fz / dz;
        }
        roots.push_back(best);
    }
    return roots;
}

bool root_order(const std::pair<std::complex<double>, int>& a,
                const std::pair<std::complex<double>, int>& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
}

} // namespace

std::vector<std::pair<std::complex<double>, int>> poly_roots(const Polynomial& p) {
    std::vector<std::pair<std::complex<double>, int>> out;
    if (p.is_constant()) {
        if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
        return out;
    }
    SquarefreeFactorization sf = squarefree_factor(p);
    for (const auto& [factor, mult] : sf.factors)
        for (const std::complex<double>& z : squarefree_roots(factor))
            out.emplace_back(z, mult);
    std::sort(out.begin(), out.end(), root_order);
    return out;
}

SpectrumList sigma(const WeightedDigraph& g) {
    SpectrumList out;
    out.char_fun = charfun(g);
    out.roots = poly_roots(out.char_fun.num);
    return out;
}

SpectrumList sigma_inv(const WeightedDigraph& g) {
    SpectrumList out;
    out.char_fun = charfun(g);
    out.roots = poly_roots(out.char_fun.den);
    return out;
}

namespace {

// Equality of rational functions up to a nonzero constant factor. Canonical
// denominators are monic, so only the numerators can differ by a unit.
bool equal_up_to_unit(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.den != b.den) return false;
    if (a.num.degree() != b.num.degree()) return false;
    return a.num * b.num.leading() == b.num * a.num.leading();
}

} // namespace

bool verify_main_theorem(const WeightedDigraph& g, const VertexSet& s) {
    StructuralCheck chk = is_structural(g, s);
    if (!chk) throw NotStructural(chk.reason);
    const RationalFunction cf_full = charfun(g);
    const RationalFunction cf_red = charfun(reduce(g, s));
    const VertexSet comp = complement_set(s, g.n());
    const RationalFunction cf_sub =
        comp.idx.empty() ? rf_one() : charfun(subgraph(g, comp));
    return equal_up_to_unit(rf_mul(cf_sub, cf_red), cf_full);
}

double spectral_radius(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) throw EmptyGraph("spectral radius of an empty matrix");
    bool nonneg = true;
    for (const auto& row : a) {
        for (double v : row) {
            if (!std::isfinite(v)) throw NonFinite("matrix entry is not finite");
            if (v < 0.0) nonneg = false;
        }
    }

    // Exact route: lift entries to exact rationals, take the characteristic
    // determinant, and read off the largest root modulus.
    std::vector<std::vector<RationalFunction>> m(n, std::vector<RationalFunction>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = rf_constant(GaussianRational(mpq_class(a[i][j])));
            if (i == j) m[i][j] = rf_sub(m[i][j], rf_lambda());
        }
    const RationalFunction cf = det_rational(m);
    double rho = 0.0;
    for (const auto& [z, mult] : poly_roots(cf.num)) rho = std::max(rho, std::abs(z));

    if (!nonneg) return rho;

    // Power iteration cross-check for nonnegative matrices. The growth rate
    // of a positive vector under the matrix converges to the radius; a
    // plateau of the one-norm ratio decides convergence. When the iteration
    // cap passes without a plateau (a defective or oscillating peripheral
    // spectrum slows the method below any fixed budget), no trustworthy
    // second value exists and the exact result stands unchecked.
    const int cap = 10000;
    std::vector<double> x(n, 1.0 / n), y(n, 0.0);
    double rho_pow = -1.0;
    std::vector<double> recent;
    for (int k = 0; k < cap; ++k) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += a[i][j] * x[j];
            y[i] = s;
        }
        double r = 0.0;
        for (int i = 0; i < n; ++i) r += y[i];
        if (r == 0.0) { rho_pow = 0.0; break; }
        for (int i = 0; i < n; ++i) x[i] = y[i] / r;
        recent.push_back(r);
        if (recent.size() > 5) recent.erase(recent.begin());
        if (recent.size() == 5) {
            const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
            if (*hi - *lo <= 1e-10 * std::max(1.0, r)) { rho_pow = r; break; }
        }
    }
    if (rho_pow < 0.0) return rho;
    if (std::abs(rho - rho_pow) > 1e-6 * std::max(1.0, rho)) {
        std::ostringstream os;
        os << "characteristic-root radius " << rho << " and power-iteration radius "
           << rho_pow << " differ by more than 1e-6";
        throw CrossCheckDisagreement(os.str());
    }
    return rho;
}

} // namespace isored
