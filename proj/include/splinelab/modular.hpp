#pragma once

#include <splinelab/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace splinelab {

/// Raised when a prime hits a denominator of a matrix entry.
struct BadPrime : std::runtime_error {
    explicit BadPrime(std::uint64_t p)
        : std::runtime_error("prime divides a denominator: " + std::to_string(p)) {}
};

inline std::uint64_t next_prime_above(std::uint64_t n) {
    Int z(static_cast<unsigned long>(n));
    Int p;
    mpz_nextprime(p.get_mpz_t(), z.get_mpz_t());
    return static_cast<std::uint64_t>(p.get_ui());
}

/// Two fixed 31-bit primes derived from a seed; both exceed 2^30 so products
/// of residues stay within 64 bits.
inline std::pair<std::uint64_t, std::uint64_t> default_primes(std::uint64_t seed) {
    std::uint64_t base = (1ull << 30) + ((seed * 0x9E3779B97F4A7C15ull) >> 36);
    std::uint64_t p1 = next_prime_above(base);
    std::uint64_t p2 = next_prime_above(p1);
    return {p1, p2};
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * a % p;
        a = (unsigned __int128)a * a % p;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

inline std::uint64_t rational_mod(const Rational& q, std::uint64_t p) {
    Int pm(static_cast<unsigned long>(p));
    Int den_m = q.get_den() % pm;
    if (den_m == 0) throw BadPrime(p);
    Int num_m = q.get_num() % pm;
    std::uint64_t n = num_m < 0 ? p - mpz_get_ui(Int(-num_m).get_mpz_t())
                                : mpz_get_ui(num_m.get_mpz_t());
    std::uint64_t d = mpz_get_ui(den_m.get_mpz_t());
    return (unsigned __int128)n * inv_mod(d, p) % p;
}

/// Row-echelon rank of a dense matrix mod p. Rows are consumed.
inline int rank_mod_p_dense(std::vector<std::vector<std::uint64_t>>& rows, int cols,
                            std::uint64_t p) {
    int rank = 0;
    int nrows = static_cast<int>(rows.size());
    for (int c = 0; c < cols && rank < nrows; ++c) {
        int piv = -1;
        for (int r = rank; r < nrows; ++r) {
            if (rows[r][c] % p != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t inv = inv_mod(rows[rank][c] % p, p);
        for (int r = rank + 1; r < nrows; ++r) {
            std::uint64_t v = rows[r][c] % p;
            if (v == 0) continue;
            std::uint64_t f = (unsigned __int128)v * inv % p;
            auto& dst = rows[r];
            const auto& src = rows[rank];
            for (int j = c; j < cols; ++j) {
                dst[j] = (dst[j] + (unsigned __int128)(p - f) * src[j]) % p;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace splinelab
