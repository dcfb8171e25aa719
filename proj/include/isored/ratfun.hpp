#pragma once

#include <complex>

#include "isored/polynomial.hpp"

namespace isored {

// Element of the field of rational functions p/q in the spectral variable.
// Canonical form: gcd(num, den) is a unit, den is monic and nonzero. Zero is
// 0/1 and the spectral variable itself is lambda/1, so equality of elements is
// equality of representations.
struct RationalFunction {
    Polynomial num, den;

    RationalFunction() : num(Polynomial::zero()), den(Polynomial::one()) {}
    RationalFunction(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {}

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
};

bool operator==(const RationalFunction& a, const RationalFunction& b);
inline bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

// Canonicalizing constructor: divides out the gcd and scales the denominator
// monic. Raises ZeroDenominator when den is the zero polynomial.
RationalFunction rf_make(const Polynomial& num, const Polynomial& den);

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b);
// Raises DivisionByZeroElement when b is zero.
RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_neg(const RationalFunction& a);
RationalFunction rf_pow(const RationalFunction& a, unsigned e);

// deg(num) - deg(den); undefined (error) for the zero element.
long rf_pi(const RationalFunction& w);

// Numeric evaluation by Horner on both parts. Raises PoleAtPoint when the
// denominator magnitude at z falls below pole_tol.
std::complex<double> rf_eval(const RationalFunction& w, std::complex<double> z,
                             double pole_tol = 1e-12);

inline RationalFunction rf_zero() { return {}; }
inline RationalFunction rf_one() { return {Polynomial::one(), Polynomial::one()}; }
inline RationalFunction rf_lambda() { return {Polynomial::lambda(), Polynomial::one()}; }
RationalFunction rf_constant(const GaussianRational& v);
inline RationalFunction rf_int(long v) { return rf_constant(GaussianRational(v)); }

} // namespace isored
