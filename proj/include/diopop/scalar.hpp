#ifndef DIOPOP_SCALAR_HPP
#define DIOPOP_SCALAR_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "diopop/errors.hpp"

namespace diopop {

// Exact arbitrary-precision rational backend. The float backend is plain double.
using Rational = mpq_class;

template <class S>
inline constexpr bool is_rational_v = std::is_same_v<S, Rational>;

template <class S>
inline constexpr bool is_scalar_v = std::is_same_v<S, double> || is_rational_v<S>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline double abs_val(double v) { return std::fabs(v); }
inline Rational abs_val(const Rational& v) { return abs(v); }

// Largest bit length among numerator and denominator; 0 for floats (never grows).
inline std::size_t bit_size(double) { return 0; }
inline std::size_t bit_size(const Rational& v) {
    std::size_t n = mpz_sizeinbase(v.get_num_mpz_t(), 2);
    std::size_t d = mpz_sizeinbase(v.get_den_mpz_t(), 2);
    return n > d ? n : d;
}

// Division that refuses a zero denominator instead of producing NaN/inf.
template <class S>
S exact_div(const S& num, const S& den, const char* which = "denominator") {
    if (den == S(0)) throw ZeroDenominator(which);
    return num / den;
}

// Exact conversion: every double is a dyadic rational.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw InvalidParams("cannot convert non-finite float to rational");
    Rational r(v);
    r.canonicalize();
    return r;
}

template <class S> S scalar_from_double(double v);
template <> inline double scalar_from_double<double>(double v) { return v; }
template <> inline Rational scalar_from_double<Rational>(double v) { return rational_from_double(v); }

template <class S> S scalar_from_int(long n);
template <> inline double scalar_from_int<double>(long n) { return static_cast<double>(n); }
template <> inline Rational scalar_from_int<Rational>(long n) { return Rational(n); }

template <class S> S scalar_from_ratio(long p, long q);
template <> inline double scalar_from_ratio<double>(long p, long q) {
    return static_cast<double>(p) / static_cast<double>(q);
}
template <> inline Rational scalar_from_ratio<Rational>(long p, long q) {
    if (q == 0) throw ZeroDenominator("ratio");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Parses "p/q" or a decimal string ("0.3", "-1.25e-3") into an exact rational.
Rational parse_rational(const std::string& text);

// Parses the same forms into a double (decimal via strtod, p/q via division).
double parse_double(const std::string& text);

template <class S> S parse_scalar(const std::string& text);
template <> inline double parse_scalar<double>(const std::string& text) { return parse_double(text); }
template <> inline Rational parse_scalar<Rational>(const std::string& text) { return parse_rational(text); }

// Canonical text forms used by every writer: %.17g for floats, p/q for rationals.
std::string format_scalar(double v);
std::string format_scalar(const Rational& v);

} // namespace diopop

#endif
