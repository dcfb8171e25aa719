#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "isored/rational.hpp"

namespace isored {

// Univariate polynomial in the spectral variable over GaussianRational
// coefficients, stored in ascending degree order. The zero polynomial is the
// empty sequence; a nonzero polynomial keeps a nonzero leading coefficient.
struct Polynomial {
    std::vector<GaussianRational> c;

    Polynomial() = default;

    static Polynomial zero() { return {}; }
    static Polynomial one() { return constant(GaussianRational(1)); }
    static Polynomial lambda();
    static Polynomial constant(const GaussianRational& v);
    // Trims trailing zero coefficients.
    static Polynomial from_coeffs(std::vector<GaussianRational> v);

    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0].is_one(); }
    bool is_constant() const { return c.size() <= 1; }

    // Degree of a nonzero polynomial. The zero polynomial has no well-defined
    // integer degree (conventionally minus infinity) and raises instead.
    int degree() const {
        if (c.empty()) throw UndefinedDegree("degree of the zero polynomial");
        return static_cast<int>(c.size()) - 1;
    }

    const GaussianRational& leading() const { return c.back(); }

    std::complex<double> eval(const std::complex<double>& z) const;
};

bool operator==(const Polynomial& a, const Polynomial& b);
inline bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const GaussianRational& s);

// Quotient and remainder; the divisor must be nonzero.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);

// Division known to be exact; raises ZeroPolynomial on a zero divisor and
// reports a logic failure if a remainder survives.
Polynomial poly_divexact(const Polynomial& a, const Polynomial& b);

Polynomial derivative(const Polynomial& p);
Polynomial poly_pow(const Polynomial& p, unsigned e);
Polynomial monic(const Polynomial& p);

// Monic greatest common divisor by the Euclidean algorithm.
Polynomial poly_gcd(const Polynomial& p, const Polynomial& q);
Polynomial poly_lcm(const Polynomial& p, const Polynomial& q);

// p = unit * prod factors[k].first ^ factors[k].second with monic, pairwise
// coprime, square-free parts and strictly increasing multiplicities.
struct SquarefreeFactorization {
    GaussianRational unit;
    std::vector<std::pair<Polynomial, int>> factors;
};
SquarefreeFactorization squarefree_factor(const Polynomial& p);

} // namespace isored
