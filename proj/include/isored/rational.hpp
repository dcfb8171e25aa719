#pragma once

#include <complex>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "isored/errors.hpp"

namespace isored {

// Exact complex number with arbitrary-precision rational real and imaginary
// parts. Equality and the zero test are exact; there is no tolerance anywhere
// in this type.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {} // NOLINT: implicit by design
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational imaginary_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    GaussianRational conj() const { return GaussianRational(re, -im); }

    // Squared modulus as an exact rational; nonzero unless the value is zero.
    mpq_class norm2() const { return re * re + im * im; }
};

inline bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

inline GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re + b.re, a.im + b.im);
}
inline GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re - b.re, a.im - b.im);
}
inline GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(-a.re, -a.im);
}
inline GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw DivisionByZeroElement("division by the zero coefficient");
    mpq_class n2 = b.norm2();
    return GaussianRational((a.re * b.re + a.im * b.im) / n2,
                            (a.im * b.re - a.re * b.im) / n2);
}

inline GaussianRational inverse(const GaussianRational& a) {
    return GaussianRational(1) / a;
}

inline std::complex<double> to_complex(const GaussianRational& a) {
    return {a.re.get_d(), a.im.get_d()};
}

// Plain a+bi rendering, used in diagnostics. Canonical weight strings are
// produced by format_weight in weights.hpp.
inline std::string debug_string(const GaussianRational& a) {
    if (a.is_real()) return a.re.get_str();
    std::string s = a.re.get_str();
    s += (sgn(a.im) < 0 ? "-" : "+");
    mpq_class m = abs(a.im);
    s += m.get_str() + "i";
    return s;
}

} // namespace isored
