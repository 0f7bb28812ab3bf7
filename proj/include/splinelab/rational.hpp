#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace splinelab {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

/// Parses "n" or "p/q" with arbitrary-precision parts.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_rational(Int(s), Int(1));
    return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Bit size of num plus den, the pivot-selection weight.
inline std::size_t bit_size(const Rational& q) {
    if (q == 0) return 1;
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

inline std::size_t bit_size(const Int& z) {
    if (z == 0) return 1;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

/// binom(n, k) with the convention 0 for k < 0 or k > n; requires n >= 0.
inline Int binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline long binom_long(long n, long k) {
    return static_cast<long>(binom(n, k).get_si());
}

/// x(x-1)/2 for any integer x: binom(x, 2) in the polynomial sense.
inline Rational poly_binom2(const Rational& x) {
    return x * (x - 1) / 2;
}

/// dim of the degree-d graded piece of a polynomial ring in nvars variables.
inline long graded_dim(int nvars, long d) {
    if (d < 0) return 0;
    return binom_long(d + nvars - 1, nvars - 1);
}

/// dim S(-a)_d for 3 variables: binom(d-a+2, 2) clipped at 0.
inline long shifted_dim3(long a, long d) {
    return graded_dim(3, d - a);
}

}  // namespace splinelab
