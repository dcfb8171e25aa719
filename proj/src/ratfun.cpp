#include "isored/ratfun.hpp"

#include <cmath>

namespace isored {

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
}

RationalFunction rf_make(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    if (num.is_zero()) return {};
    Polynomial g = poly_gcd(num, den);
    Polynomial n = g.is_one() ? num : poly_divexact(num, g);
    Polynomial d = g.is_one() ? den : poly_divexact(den, g);
    GaussianRational scale = inverse(d.leading());
    return {n * scale, d * scale};
}

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return rf_make(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b) {
    return rf_add(a, rf_neg(b));
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return rf_make(a.num * b.num, a.den * b.den);
}

RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZeroElement("division by the zero element");
    if (a.is_zero()) return {};
    return rf_make(a.num * b.den, a.den * b.num);
}

RationalFunction rf_neg(const RationalFunction& a) {
    return {-a.num, a.den};
}

RationalFunction rf_pow(const RationalFunction& a, unsigned e) {
    RationalFunction acc = rf_one();
    RationalFunction base = a;
    while (e) {
        if (e & 1u) acc = rf_mul(acc, base);
        e >>= 1u;
        if (e) base = rf_mul(base, base);
    }
    return acc;
}

long rf_pi(const RationalFunction& w) {
    if (w.is_zero()) throw UndefinedDegree("pi of the zero element");
    return static_cast<long>(w.num.degree()) - static_cast<long>(w.den.degree());
}

std::complex<double> rf_eval(const RationalFunction& w, std::complex<double> z, double pole_tol) {
    std::complex<double> q = w.den.eval(z);
    if (std::abs(q) < pole_tol)
        throw PoleAtPoint("denominator vanishes at the evaluation point");
    return w.num.eval(z) / q;
}

RationalFunction rf_constant(const GaussianRational& v) {
    return {Polynomial::constant(v), Polynomial::one()};
}

} // namespace isored
