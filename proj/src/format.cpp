#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "diopop/dynamics.hpp"
#include "diopop/equilibria.hpp"
#include "diopop/report.hpp"
#include "diopop/roots.hpp"
#include "diopop/scalar.hpp"

namespace diopop {

namespace {

// integer digit run with optional sign; returns the digits, records the sign
bool split_sign(std::string& s, bool& negative) {
    negative = false;
    if (s.empty()) return false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

Rational rational_from_decimal(const std::string& text) {
    // [sign] digits [. digits] [eE [sign] digits], at least one mantissa digit
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    std::string digits;
    long frac_len = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            ++frac_len;
        }
    }
    if (digits.empty()) throw InvalidParams("cannot parse scalar: " + text);

    long exp10 = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        std::string edig;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) edig += text[i++];
        if (edig.empty() || edig.size() > 9) throw InvalidParams("cannot parse scalar: " + text);
        exp10 = std::stol(edig);
        if (eneg) exp10 = -exp10;
    }
    if (i != n) throw InvalidParams("cannot parse scalar: " + text);

    mpz_class mant(digits, 10);
    mpz_class num = mant, den = 1;
    const long shift = exp10 - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        num *= pow10;
    else
        den = pow10;
    Rational r(num, den);
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        std::string ptxt = text.substr(0, slash);
        std::string qtxt = text.substr(slash + 1);
        bool pneg = false, qneg = false;
        if (!split_sign(ptxt, pneg) || !split_sign(qtxt, qneg))
            throw InvalidParams("cannot parse scalar: " + text);
        mpz_class p(ptxt, 10), q(qtxt, 10);
        if (q == 0) throw ZeroDenominator(text);
        Rational r(p, q);
        r.canonicalize();
        if (pneg != qneg) r = -r;
        return r;
    }
    return rational_from_decimal(text);
}

double parse_double(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        // exact-ratio form: go through the rational parser and round once
        return parse_rational(text).get_d();
    }
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty())
        throw InvalidParams("cannot parse scalar: " + text);
    if (!std::isfinite(v)) throw InvalidParams("non-finite scalar: " + text);
    return v;
}

std::string format_scalar(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_scalar(const Rational& v) {
    std::string s = v.get_num().get_str();
    if (v.get_den() != 1) s += "/" + v.get_den().get_str();
    return s;
}

const char* to_string(Stability s) {
    switch (s) {
    case Stability::Attractor: return "attractor";
    case Stability::Repeller: return "repeller";
    case Stability::Saddle: return "saddle";
    case Stability::NonHyperbolic: return "non-hyperbolic";
    }
    return "?";
}

const char* to_string(FixedPointLabel l) {
    switch (l) {
    case FixedPointLabel::Z0: return "z0";
    case FixedPointLabel::Z1: return "z1";
    case FixedPointLabel::Z2: return "z2";
    case FixedPointLabel::Z3: return "z3";
    case FixedPointLabel::Z4: return "z4";
    case FixedPointLabel::O: return "O";
    case FixedPointLabel::P: return "P";
    }
    return "?";
}

const char* to_string(VerdictKind v) {
    switch (v) {
    case VerdictKind::ConvergedTo: return "ConvergedTo";
    case VerdictKind::Cycling: return "Cycling";
    case VerdictKind::MaxIterReached: return "MaxIterReached";
    }
    return "?";
}

const char* to_string(BasinLabel l) {
    switch (l) {
    case BasinLabel::ToZ0: return "ToZ0";
    case BasinLabel::ToZ2: return "ToZ2";
    case BasinLabel::ToZ3: return "ToZ3";
    case BasinLabel::ToOther: return "ToOther";
    case BasinLabel::Unresolved: return "Unresolved";
    }
    return "?";
}

} // namespace diopop
