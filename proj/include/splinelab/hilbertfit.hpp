#pragma once

#include <splinelab/bounds.hpp>
#include <splinelab/splinecore.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace splinelab {

/// Raised when a computed quantity contradicts a verified consequence of
/// the input being valid (exit code 4 at the CLI).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HilbertPoly {
    std::vector<Rational> coefficients;  // constant term first
    std::pair<int, int> fit_window{0, 0};

    Rational operator()(long d) const { return eval_poly(coefficients, Rational(d)); }
};

/// Quadratic through (d0, hf(d0)), (d0+1, .), (d0+2, .), verified against
/// hf at d0+3 and d0+4.
inline HilbertPoly fit_hp(const SplineProblem& p, int d0,
                          const RankPolicy& policy = RankPolicy::certified()) {
    if (d0 < 0) throw std::invalid_argument("fit_hp: negative base degree");
    std::vector<std::pair<long, Rational>> pts;
    std::vector<long> values;
    for (int d = d0; d <= d0 + 4; ++d) values.push_back(hf(p, d, policy));
    for (int i = 0; i < 3; ++i) pts.emplace_back(d0 + i, Rational(values[i]));
    HilbertPoly hp;
    hp.coefficients = interpolate_poly(pts, 2);
    hp.fit_window = {d0, d0 + 4};
    for (int i = 3; i <= 4; ++i) {
        if (hp(d0 + i) != values[i])
            throw VerificationError("fit_hp: interpolant fails verification at degree " +
                                    std::to_string(d0 + i));
    }
    return hp;
}

struct PostulationResult {
    std::optional<long> postulation;  // empty: never disagrees on the window
    HilbertPoly hp;
    long bound_used = 0;
    std::pair<int, int> verified_window{0, 0};
};

/// Largest degree where HF differs from the fitted HP, scanning down from
/// e(P) - 2.
inline PostulationResult postulation(const SplineProblem& p,
                                     const RankPolicy& policy = RankPolicy::certified(),
                                     std::optional<int> ceiling = std::nullopt) {
    PostulationResult out;
    out.bound_used = e_bound(p);
    int d0 = ceiling.value_or(static_cast<int>(std::max<long>(0, out.bound_used - 2)));
    out.hp = fit_hp(p, d0, policy);
    out.verified_window = out.hp.fit_window;
    for (int d = d0; d >= 0; --d) {
        if (Rational(hf(p, d, policy)) != out.hp(d)) {
            out.postulation = d;
            break;
        }
    }
    return out;
}

struct BoundCheck {
    long postulation_value = 0;  // -1 when HF never disagrees
    long e_bound = 0;
    bool e_ok = true;
    std::optional<long> m_bound;
    std::optional<bool> m_ok;
};

inline BoundCheck bound_check(const SplineProblem& p,
                              const RankPolicy& policy = RankPolicy::certified()) {
    BoundCheck out;
    auto post = postulation(p, policy);
    out.postulation_value = post.postulation.value_or(-1);
    out.e_bound = e_bound(p);
    out.e_ok = out.postulation_value <= out.e_bound - 3;
    if (p.simplicial()) {
        out.m_bound = m_bound(p);
        out.m_ok = out.postulation_value <= *out.m_bound - 2;
    }
    return out;
}

enum class Fixture { QUniform, DeltaMixed, SchlegelSneg1, SchlegelS };

inline Fixture fixture_by_name(const std::string& name) {
    if (name == "Q_uniform") return Fixture::QUniform;
    if (name == "Delta_mixed") return Fixture::DeltaMixed;
    if (name == "Schlegel_sneg1") return Fixture::SchlegelSneg1;
    if (name == "Schlegel_s") return Fixture::SchlegelS;
    throw std::invalid_argument("unknown fixture name: " + name);
}

/// Closed-form Hilbert polynomials of the worked examples. The Schlegel
/// s >= 0 formula is known to have a wrong constant term for small r, s and
/// is exposed for cross-checks only.
inline Rational fixture_hp(Fixture name, long r, long s, long d) {
    Rational dd(d);
    switch (name) {
        case Fixture::QUniform: {
            long ceil_half = (r + 2) / 2;  // ceil((r+1)/2)
            Rational konst = Rational(6) * Rational(binom(r, 2)) - 2 +
                             4 * (Rational(binom(r + 2, 2)) + Rational(ceil_half) * (r - ceil_half));
            return 2 * dd * dd - 6 * r * dd + konst;
        }
        case Fixture::DeltaMixed: {
            return poly_binom2(dd + 2) - 3 * poly_binom2(dd - 1) + 3 * poly_binom2(dd - 2) +
                   6 * poly_binom2(dd - 3);
        }
        case Fixture::SchlegelSneg1: {
            long f32 = (3 * r) / 2;
            return Rational(5, 2) * dd * dd + (Rational(-8) * r - Rational(1, 2)) * dd -
                   4 * Rational(f32) * f32 + 12 * r * Rational(f32) - Rational(r) * r + 4 * r + 2;
        }
        case Fixture::SchlegelS: {
            long g = (2 * (r + s)) / 3;
            long h = r / 2;
            long f32 = (3 * r) / 2;
            return Rational(5, 2) * dd * dd +
                   (Rational(-8) * r - Rational(4) * s - Rational(9, 2)) * dd -
                   3 * Rational(g) * g + 4 * r * Rational(g) + 4 * s * Rational(g) - Rational(g) -
                   4 * Rational(h) * h - 4 * Rational(f32) * f32 + 4 * r * Rational(h) +
                   12 * r * Rational(f32) - 5 * Rational(r) * r + 4 * Rational(r) * s + 8 * r +
                   4 * s + 4;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace splinelab
