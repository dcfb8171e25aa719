#include "isored/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace isored {

Polynomial Polynomial::lambda() {
    Polynomial p;
    p.c = {GaussianRational(0), GaussianRational(1)};
    return p;
}

Polynomial Polynomial::constant(const GaussianRational& v) {
    Polynomial p;
    if (!v.is_zero()) p.c = {v};
    return p;
}

Polynomial Polynomial::from_coeffs(std::vector<GaussianRational> v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    Polynomial p;
    p.c = std::move(v);
    return p;
}

std::complex<double> Polynomial::eval(const std::complex<double>& z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_complex(*it);
    return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<GaussianRational> v(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < a.c.size()) v[i] = v[i] + a.c[i];
        if (i < b.c.size()) v[i] = v[i] + b.c[i];
    }
    return Polynomial::from_coeffs(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator-(const Polynomial& a) {
    Polynomial p = a;
    for (auto& x : p.c) x = -x;
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial::zero();
    std::vector<GaussianRational> v(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            v[i + j] = v[i + j] + a.c[i] * b.c[j];
    return Polynomial::from_coeffs(std::move(v));
}

Polynomial operator*(const Polynomial& a, const GaussianRational& s) {
    if (s.is_zero()) return Polynomial::zero();
    Polynomial p = a;
    for (auto& x : p.c) x = x * s;
    return p;
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw ZeroPolynomial("polynomial division by zero");
    if (a.is_zero() || a.c.size() < b.c.size()) return {Polynomial::zero(), a};
    std::vector<GaussianRational> rem = a.c;
    std::vector<GaussianRational> quot(a.c.size() - b.c.size() + 1);
    const GaussianRational& lead = b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
        GaussianRational q = rem[k + b.c.size() - 1] / lead;
        quot[k] = q;
        if (q.is_zero()) continue;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            rem[k + i] = rem[k + i] - q * b.c[i];
    }
    return {Polynomial::from_coeffs(std::move(quot)), Polynomial::from_coeffs(std::move(rem))};
}

Polynomial poly_divexact(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("poly_divexact: division left a remainder");
    return q;
}

Polynomial derivative(const Polynomial& p) {
    if (p.c.size() <= 1) return Polynomial::zero();
    std::vector<GaussianRational> v(p.c.size() - 1);
    for (std::size_t i = 1; i < p.c.size(); ++i)
        v[i - 1] = p.c[i] * GaussianRational(static_cast<long>(i));
    return Polynomial::from_coeffs(std::move(v));
}

Polynomial poly_pow(const Polynomial& p, unsigned e) {
    Polynomial acc = Polynomial::one();
    Polynomial base = p;
    while (e) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return acc;
}

Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * inverse(p.leading());
}

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() && q.is_zero()) throw BothZero("gcd of two zero polynomials");
    Polynomial a = p, b = q;
    while (!b.is_zero()) {
        Polynomial r = poly_divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

Polynomial poly_lcm(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial::zero();
    return monic(poly_divexact(p * q, poly_gcd(p, q)));
}

SquarefreeFactorization squarefree_factor(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("square-free factorization of zero");
    SquarefreeFactorization out;
    out.unit = p.leading();
    Polynomial q = monic(p);
    if (q.is_constant()) return out;

    // Yun's algorithm over characteristic zero.
    Polynomial g = poly_gcd(q, derivative(q));
    Polynomial w = poly_divexact(q, g);
    Polynomial y = poly_divexact(derivative(q), g);
    int mult = 1;
    while (!w.is_constant()) {
        Polynomial z = y - derivative(w);
        Polynomial f = poly_gcd(w, z.is_zero() ? w : z);
        if (!f.is_constant()) out.factors.emplace_back(f, mult);
        w = poly_divexact(w, f);
        y = poly_divexact(z, f);
        ++mult;
    }
    return out;
}

} // namespace isored
