#pragma once

#include <splinelab/linalg.hpp>
#include <splinelab/polyring.hpp>
#include <splinelab/rational.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace splinelab {

/// I(p,q,r) = <s^p, t^q> : (s+t)^r in k[s,t].
struct ColonSpec {
    long p = 1;
    long q = 1;
    long r = 0;

    void validate() const {
        if (p < 1 || q < 1 || r < 0) throw std::invalid_argument("colon spec requires p,q >= 1, r >= 0");
        if (p + q - r < 2) throw std::invalid_argument("colon spec requires p+q-r >= 2");
    }
};

struct ColonGenDegrees {
    long a = 0;
    long b = 0;
    int which_case = 0;  // 1, 2, 3 following the complete-intersection trichotomy
};

inline ColonGenDegrees colon_gen_degrees(const ColonSpec& c) {
    c.validate();
    ColonGenDegrees out;
    if (c.p + c.r - c.q <= 1) {
        out.a = std::min(c.p, c.q - c.r);
        out.b = std::max(c.p, c.q - c.r);
        out.which_case = 1;
    } else if (c.q + c.r - c.p <= 1) {
        out.a = std::min(c.q, c.p - c.r);
        out.b = std::max(c.q, c.p - c.r);
        out.which_case = 2;
    } else {
        out.a = (c.p + c.q - c.r) / 2;
        out.b = (c.p + c.q - c.r) - out.a;
        if (out.a > out.b) std::swap(out.a, out.b);
        out.which_case = 3;
    }
    return out;
}

/// HF(I,d) = binom(d+1-a,1) + binom(d+1-b,1) - binom(d+1-a-b,1) with
/// binom(x,1) = max(x, 0).
inline long colon_hf(const ColonSpec& c, long d) {
    auto g = colon_gen_degrees(c);
    auto pos = [](long x) { return x > 0 ? x : 0; };
    return pos(d + 1 - g.a) + pos(d + 1 - g.b) - pos(d + 1 - g.a - g.b);
}

/// The coefficient matrix whose kernel is I(p,q,r)_d; column j carries the
/// coefficient of s^j t^{d-j}, row u (for u = max(0, d+r-q+1) .. p-1) the
/// vanishing of the s^u t^{d+r-u} coefficient of f*(s+t)^r.
inline SparseMat coeff_matrix(const ColonSpec& c, long d) {
    c.validate();
    if (d < 0) throw std::invalid_argument("coeff_matrix: negative degree");
    long u_min = std::max<long>(0, d + c.r - c.q + 1);
    long u_max = c.p - 1;
    long nrows = std::max<long>(0, u_max - u_min + 1);
    SparseMat m(nrows, d + 1);
    for (long i = 0; i < nrows; ++i) {
        long u = u_min + i;
        for (long j = 0; j <= d; ++j) {
            Int v = binom(c.r, u - j);
            if (v != 0) m.set(i, j, Rational(v));
        }
    }
    return m;
}

/// Oracle basis of I(p,q,r)_d: expand f*(s+t)^r over unknown coefficients
/// and require every monomial not divisible by s^p or t^q to vanish.
/// Coordinates follow the coeff_matrix convention (index j <-> s^j t^{d-j}).
inline Subspace brute_force_colon(const ColonSpec& c, long d) {
    c.validate();
    if (d < 0) throw std::invalid_argument("brute_force_colon: negative degree");
    std::vector<SparseRow> rows;
    for (long u = 0; u <= d + c.r; ++u) {
        long v = d + c.r - u;
        if (u >= c.p || v >= c.q) continue;  // monomial already in <s^p, t^q>
        SparseRow row;
        for (long j = 0; j <= d; ++j) {
            Int coeff = binom(c.r, u - j);
            if (coeff != 0) row.emplace_back(static_cast<int>(j), Rational(coeff));
        }
        rows.push_back(std::move(row));
    }
    SparseMat m(static_cast<long>(rows.size()), d + 1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [col, val] : rows[r]) m.set(static_cast<long>(r), col, val);
    return kernel_basis(m);
}

/// A homogeneous 2-variable polynomial of fixed degree, c[j] the
/// coefficient of s^j t^{d-j}.
struct Poly2 {
    long degree = 0;
    std::vector<Rational> c;
};

/// Minimal generators of I(p,q,r) up to degree dmax, extracted degreewise:
/// new elements of I_d outside s*I_{d-1} + t*I_{d-1}.
inline std::vector<Poly2> colon_min_gens(const ColonSpec& c, long dmax) {
    std::vector<Poly2> gens;
    std::vector<std::vector<Rational>> prev;  // dense basis of I_{d-1}
    for (long d = 0; d <= dmax; ++d) {
        auto basis = brute_force_colon(c, d);
        std::vector<std::vector<Rational>> cur;
        for (const auto& row : basis.basis_rows()) {
            std::vector<Rational> v(d + 1, Rational(0));
            for (const auto& [col, val] : row) v[col] = val;
            cur.push_back(std::move(v));
        }
        std::vector<SparseRow> shifted;
        for (const auto& v : prev) {
            SparseRow by_s, by_t;
            for (long j = 0; j < d; ++j) {
                if (v[j] == 0) continue;
                by_s.emplace_back(static_cast<int>(j + 1), v[j]);  // s * s^j t^{d-1-j}
                by_t.emplace_back(static_cast<int>(j), v[j]);      // t * s^j t^{d-1-j}
            }
            std::sort(by_s.begin(), by_s.end());
            if (!by_s.empty()) shifted.push_back(std::move(by_s));
            if (!by_t.empty()) shifted.push_back(std::move(by_t));
        }
        Subspace span(d + 1, std::move(shifted));
        for (const auto& v : cur) {
            SparseRow row;
            for (long j = 0; j <= d; ++j)
                if (v[j] != 0) row.emplace_back(static_cast<int>(j), v[j]);
            if (span.contains(row)) continue;
            Poly2 g;
            g.degree = d;
            g.c = v;
            gens.push_back(g);
            std::vector<SparseRow> ext = span.basis_rows();
            ext.push_back(row);
            span = Subspace(d + 1, std::move(ext));
        }
        prev = std::move(cur);
    }
    return gens;
}

using MonomialPair = std::pair<long, long>;  // (s exponent, t exponent)

/// L(a,b) = (s^a, s^{a-1} t^{b-a+1}, ..., s^{a-i} t^{b-a+2i-1}, ..., t^{a+b-1}).
inline std::vector<MonomialPair> lex_segment(long a, long b) {
    if (a < 1 || a > b) throw std::invalid_argument("lex_segment requires 1 <= a <= b");
    std::vector<MonomialPair> out;
    out.emplace_back(a, 0);
    for (long i = 1; i <= a; ++i) out.emplace_back(a - i, b - a + 2 * i - 1);
    return out;
}

/// Minimal monomial generators of the lex initial ideal of I(p,q,r) up to
/// degree dmax, from degreewise row echelon in lex order (s > t).
inline std::vector<MonomialPair> initial_ideal_raw(const ColonSpec& c, long dmax) {
    std::vector<MonomialPair> gens;
    std::set<MonomialPair> prev_leads;
    for (long d = 0; d <= dmax; ++d) {
        auto basis = brute_force_colon(c, d);
        // Re-express in lex-descending coordinates: index i <-> s^{d-i} t^i.
        std::vector<SparseRow> rows;
        for (const auto& row : basis.basis_rows()) {
            SparseRow rr;
            for (const auto& [col, val] : row) rr.emplace_back(static_cast<int>(d - col), val);
            std::sort(rr.begin(), rr.end());
            rows.push_back(std::move(rr));
        }
        auto pivots = detail::rref(rows);
        std::set<MonomialPair> leads;
        for (int piv : pivots) leads.emplace(d - piv, piv);
        for (const auto& m : leads) {
            bool divisible = (m.first > 0 && prev_leads.count({m.first - 1, m.second})) ||
                             (m.second > 0 && prev_leads.count({m.first, m.second - 1}));
            if (!divisible) gens.push_back(m);
        }
        prev_leads = std::move(leads);
    }
    std::sort(gens.begin(), gens.end(), [](const MonomialPair& x, const MonomialPair& y) {
        return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    return gens;
}

/// initial_ideal verified against the lex-segment prediction.
inline std::vector<MonomialPair> initial_ideal(const ColonSpec& c, long dmax) {
    auto g = colon_gen_degrees(c);
    if (dmax < g.a + g.b) throw std::invalid_argument("initial_ideal: dmax must reach a+b");
    auto raw = initial_ideal_raw(c, dmax);
    auto expected = lex_segment(g.a, g.b);
    std::sort(expected.begin(), expected.end(), [](const MonomialPair& x, const MonomialPair& y) {
        return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    if (raw != expected)
        throw std::logic_error("initial ideal does not match the lex segment L(" +
                               std::to_string(g.a) + "," + std::to_string(g.b) + ")");
    return raw;
}

namespace detail {

inline Rational det_dense(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace detail

/// Sylvester resultant of two homogeneous 2-variable forms with formal
/// degrees (deg f, deg g); nonzero iff the forms are coprime.
inline Rational resultant(const Poly2& f, const Poly2& g) {
    long m = f.degree, n = g.degree;
    if (m == 0 || n == 0) return Rational(1);
    std::vector<std::vector<Rational>> syl(m + n, std::vector<Rational>(m + n, Rational(0)));
    // Row i (i < n): coefficients of s^{m..0} of f shifted by i, in t-degree order.
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) syl[i][i + j] = f.c[m - j];
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) syl[n + i][i + j] = g.c[n - j];
    return detail::det_dense(std::move(syl));
}

struct Partition {
    std::vector<long> parts;  // weakly decreasing, positive

    void validate() const {
        if (parts.empty()) throw std::invalid_argument("empty partition");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    Partition conjugate() const {
        Partition out;
        for (long j = 1; j <= parts[0]; ++j) {
            long cnt = 0;
            for (long p : parts)
                if (p >= j) ++cnt;
            out.parts.push_back(cnt);
        }
        return out;
    }
};

struct SchurCheck {
    Int det;
    Int hook_value;
    bool equal = false;
};

/// det of N(mu)_{ij} = binom(r, mu_j + i - j) against the hook content
/// evaluation of s_{mu'}(1, ..., 1) in r variables.
inline SchurCheck schur_check(const Partition& mu, long r) {
    mu.validate();
    if (r < mu.parts[0]) throw std::invalid_argument("schur_check requires r >= mu_0");
    long k = static_cast<long>(mu.parts.size());
    std::vector<std::vector<Rational>> n(k, std::vector<Rational>(k));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) n[i][j] = Rational(binom(r, mu.parts[j] + i - j));
    Rational det = detail::det_dense(std::move(n));

    Partition lambda = mu.conjugate();
    Rational hook(1);
    for (std::size_t i = 1; i <= lambda.parts.size(); ++i) {
        for (long j = 1; j <= lambda.parts[i - 1]; ++j) {
            long arm = lambda.parts[i - 1] - j;
            long leg = 0;
            for (std::size_t ii = i; ii < lambda.parts.size(); ++ii)
                if (lambda.parts[ii] >= j) ++leg;
            long h = arm + leg + 1;
            hook *= Rational(r + j - static_cast<long>(i)) / h;
        }
    }
    SchurCheck out;
    if (det.get_den() != 1 || hook.get_den() != 1)
        throw std::logic_error("schur_check: non-integral value");
    out.det = det.get_num();
    out.hook_value = hook.get_num();
    out.equal = out.det == out.hook_value && out.det != 0;
    return out;
}

struct SaturationCheck {
    long n = 0;
    bool full = false;
};

/// (in(I1) + in(I2))_N = S_N for N = max{a+d-1, b+c-1}, with in(I1) = L(a,b)
/// in (x,z) and in(I2) = L(c,d) in (y,z).
inline SaturationCheck sum_saturation_check(long a, long b, long c, long d) {
    if (!(1 <= a && a <= b && 1 <= c && c <= d))
        throw std::invalid_argument("sum_saturation_check requires 1 <= a <= b, 1 <= c <= d");
    SaturationCheck out;
    out.n = std::max(a + d - 1, b + c - 1);
    auto seg1 = lex_segment(a, b);  // exponents (x, z)
    auto seg2 = lex_segment(c, d);  // exponents (y, z)
    out.full = true;
    for (long i = 0; i <= out.n && out.full; ++i) {
        for (long j = 0; i + j <= out.n && out.full; ++j) {
            long k = out.n - i - j;  // monomial x^i y^j z^k
            bool covered = false;
            for (const auto& [xs, zs] : seg1)
                if (i >= xs && k >= zs) covered = true;
            for (const auto& [ys, zs] : seg2)
                if (j >= ys && k >= zs) covered = true;
            if (!covered) out.full = false;
        }
    }
    return out;
}

struct CorInitial3Report {
    long m_tau = 0;
    long check_degree = 0;
    ColonGenDegrees i1;
    ColonGenDegrees i2;
    bool full = false;
};

namespace detail {

/// Substitute a 2-variable form into 3 variables: s -> var_s, t -> var_t.
inline Form poly2_to_form3(const Poly2& f, int var_s, int var_t) {
    Form out(3, static_cast<int>(f.degree));
    for (long j = 0; j <= f.degree; ++j) {
        if (f.c[j] == 0) continue;
        Monomial m;
        m.nvars = 3;
        m.e[var_s] = static_cast<int>(j);
        m.e[var_t] = static_cast<int>(f.degree - j);
        out.add_term(m, f.c[j]);
    }
    return out;
}

}  // namespace detail

/// Builds the two colon ideals of the edge-star analysis as actual ideals,
/// I1 = <x^a1, z^at> : (x+z)^b1 and I2 = <y^a2, z^at> : (y+z)^b2, and checks
/// that their sum fills the graded piece at degree M(tau) - b1 - b2 - 1.
inline CorInitial3Report cor_initial3_check(long a1, long a2, long b1, long b2, long at) {
    if (a1 < 1 || a2 < 1 || b1 < 1 || b2 < 1 || at < 1)
        throw std::invalid_argument("cor_initial3_check: parameters must be >= 1");
    if (a1 + at - b1 < 2 || a2 + at - b2 < 2 || b1 + at - a1 < 2 || b2 + at - a2 < 2)
        throw std::invalid_argument("cor_initial3_check: hypothesis violated");

    CorInitial3Report out;
    long pairs[] = {a1 + a2, a1 + b1, a1 + b2, a2 + b1, a2 + b2,
                    b1 + b2, at + a1, at + a2, at + b1, at + b2};
    out.m_tau = at + *std::max_element(std::begin(pairs), std::end(pairs));
    out.check_degree = out.m_tau - b1 - b2 - 1;

    ColonSpec c1{a1, at, b1}, c2{a2, at, b2};
    out.i1 = colon_gen_degrees(c1);
    out.i2 = colon_gen_degrees(c2);
    auto gens1 = colon_min_gens(c1, out.i1.b);
    auto gens2 = colon_min_gens(c2, out.i2.b);

    long dcheck = out.check_degree;
    auto basis3 = monomial_basis(3, static_cast<int>(dcheck));
    std::vector<SparseRow> rows;
    auto add_multiples = [&](const Form& g) {
        long rest = dcheck - g.degree();
        if (rest < 0) return;
        auto mb = monomial_basis(3, static_cast<int>(rest));
        for (const auto& mono : mb->monomials) {
            SparseRow row;
            g.for_each([&](const Monomial& gm, const Rational& coeff) {
                row.emplace_back(basis3->index_of(gm * mono), coeff);
            });
            std::sort(row.begin(), row.end());
            rows.push_back(std::move(row));
        }
    };
    for (const auto& g : gens1) add_multiples(detail::poly2_to_form3(g, 0, 2));  // x, z
    for (const auto& g : gens2) add_multiples(detail::poly2_to_form3(g, 1, 2));  // y, z
    SparseMat m(static_cast<long>(rows.size()), basis3->size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [col, val] : rows[r]) m.add_to(static_cast<long>(r), col, val);
    out.full = m.rank_exact() == basis3->size();
    return out;
}

}  // namespace splinelab
