#include "isored/weights.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace isored {

namespace {

enum class Tok { Number, Imag, Lambda, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    mpz_class value; // Number and Imag carry their integer payload
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        std::size_t at = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
            bool imag = i < s.size() && s[i] == 'i';
            if (imag) ++i;
            out.push_back({imag ? Tok::Imag : Tok::Number, at, mpz_class(digits)});
            continue;
        }
        switch (ch) {
            case 'i': out.push_back({Tok::Imag, at, mpz_class(1)}); ++i; break;
            case 'l': out.push_back({Tok::Lambda, at, 0}); ++i; break;
            case '+': out.push_back({Tok::Plus, at, 0}); ++i; break;
            case '-': out.push_back({Tok::Minus, at, 0}); ++i; break;
            case '*': out.push_back({Tok::Star, at, 0}); ++i; break;
            case '/': out.push_back({Tok::Slash, at, 0}); ++i; break;
            case '^': out.push_back({Tok::Caret, at, 0}); ++i; break;
            case '(': out.push_back({Tok::LParen, at, 0}); ++i; break;
            case ')': out.push_back({Tok::RParen, at, 0}); ++i; break;
            default:
                throw ParseError(at, {"a number", "'i'", "'l'", "an operator", "parentheses"});
        }
    }
    out.push_back({Tok::End, s.size(), 0});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& s) : toks_(lex(s)) {}

    RationalFunction run() {
        RationalFunction v = expr();
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, {"an operator", "end of input"});
        return v;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) { ++at_; return true; }
        return false;
    }

    RationalFunction expr() {
        RationalFunction v = term();
        for (;;) {
            if (accept(Tok::Plus)) v = rf_add(v, term());
            else if (accept(Tok::Minus)) v = rf_sub(v, term());
            else return v;
        }
    }

    RationalFunction term() {
        RationalFunction v = factor();
        for (;;) {
            if (accept(Tok::Star)) v = rf_mul(v, factor());
            else if (accept(Tok::Slash)) v = rf_div(v, factor());
            else return v;
        }
    }

    RationalFunction factor() {
        if (accept(Tok::Minus)) return rf_neg(factor());
        if (accept(Tok::Plus)) return factor();
        RationalFunction v = atom();
        while (peek().kind == Tok::Caret) {
            ++at_;
            if (peek().kind != Tok::Number)
                throw ParseError(peek().pos, {"a nonnegative integer exponent"});
            mpz_class e = take().value;
            if (!e.fits_uint_p())
                throw ParseError(toks_[at_ - 1].pos, {"a smaller exponent"});
            v = rf_pow(v, e.get_ui());
        }
        return v;
    }

    RationalFunction atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                mpz_class v = take().value;
                return rf_constant(GaussianRational(mpq_class(v)));
            }
            case Tok::Imag: {
                mpz_class v = take().value;
                return rf_constant(GaussianRational(mpq_class(0), mpq_class(v)));
            }
            case Tok::Lambda:
                ++at_;
                return rf_lambda();
            case Tok::LParen: {
                ++at_;
                RationalFunction v = expr();
                if (!accept(Tok::RParen)) throw ParseError(peek().pos, {"')'"});
                return v;
            }
            default:
                throw ParseError(t.pos, {"a number", "'i'", "'l'", "'('"});
        }
    }
};

// One additive term of a polynomial rendering: explicit sign plus the body
// without a sign, so terms can be joined with bare + and - separators.
struct TermText {
    bool negative;
    std::string body;
};

std::string rational_text(const mpq_class& q) { return q.get_str(); }

// Renders |coefficient| * l^k given a sign-split coefficient. A coefficient
// with both real and imaginary parts is kept in parentheses so the rendering
// re-parses to the same value.
TermText term_text(const GaussianRational& coeff, int k) {
    TermText t{false, ""};
    std::string mag;
    if (coeff.is_real()) {
        t.negative = sgn(coeff.re) < 0;
        mpq_class m = abs(coeff.re);
        if (!(m == 1) || k == 0) mag = rational_text(m);
    } else if (sgn(coeff.re) == 0) {
        t.negative = sgn(coeff.im) < 0;
        mpq_class m = abs(coeff.im);
        mag = (m == 1) ? "i" : rational_text(m) + "*i";
    } else {
        // mixed coefficient: keep its own signs inside parentheses
        std::string inner = rational_text(coeff.re);
        inner += sgn(coeff.im) < 0 ? "-" : "+";
        mpq_class m = abs(coeff.im);
        inner += (m == 1) ? "i" : rational_text(m) + "*i";
        mag = "(" + inner + ")";
    }
    if (k == 0) {
        t.body = mag;
        return t;
    }
    std::string var = k == 1 ? "l" : "l^" + std::to_string(k);
    t.body = mag.empty() ? var : mag + "*" + var;
    return t;
}

int term_count(const Polynomial& p) {
    int n = 0;
    for (const auto& c : p.c)
        if (!c.is_zero()) ++n;
    return n;
}

} // namespace

RationalFunction parse_weight(const std::string& expr) { return Parser(expr).run(); }

std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = static_cast<int>(p.c.size()) - 1; k >= 0; --k) {
        const GaussianRational& coeff = p.c[static_cast<std::size_t>(k)];
        if (coeff.is_zero()) continue;
        TermText t = term_text(coeff, k);
        if (out.empty()) {
            if (t.negative) out += "-";
        } else {
            out += t.negative ? "-" : "+";
        }
        out += t.body;
    }
    return out;
}

std::string format_weight(const RationalFunction& w) {
    std::string num = format_polynomial(w.num);
    if (w.den.is_one()) return num;
    if (term_count(w.num) > 1) num = "(" + num + ")";
    std::string den = format_polynomial(w.den);
    if (term_count(w.den) > 1) den = "(" + den + ")";
    return num + "/" + den;
}

} // namespace isored
