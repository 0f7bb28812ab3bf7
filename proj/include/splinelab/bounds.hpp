#pragma once

#include <splinelab/splinecore.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace splinelab {

/// Sum of exponents over all constraints in st(tau), each counted once.
inline long lambda_tau(const SplineProblem& p, int cid) {
    auto st = p.star(cid);
    long s = 0;
    for (int id : st.constraint_ids) s += p.constraints[id].exponent;
    return s;
}

inline long e_bound(const SplineProblem& p) {
    long e = 0;
    for (int cid : p.interior_ids()) e = std::max(e, lambda_tau(p, cid));
    return e;
}

inline long f_bound(const SplineProblem& p) {
    long f = 0;
    for (int s = 0; s < p.nfacets; ++s) f = std::max(f, lambda_facet(p, s));
    return f;
}

/// M(tau) = (alpha(tau)+1) + largest pair sum of exponents among the other
/// 2-faces of st(tau); faces with alpha = -1 count with weight 0.
inline long m_tau(const SplineProblem& p, int cid) {
    auto st = p.star(cid);
    std::vector<long> weights;
    for (int id : st.constraint_ids)
        if (id != cid) weights.push_back(p.constraints[id].exponent);
    weights.push_back(0);
    weights.push_back(0);
    std::sort(weights.rbegin(), weights.rend());
    return p.constraints[cid].exponent + weights[0] + weights[1];
}

inline long m_bound(const SplineProblem& p) {
    if (!p.simplicial())
        throw std::invalid_argument("m_bound requires a simplicial problem");
    long m = 0;
    for (int cid : p.interior_ids()) m = std::max(m, m_tau(p, cid));
    return m;
}

struct ConjectureStats {
    long f_all = 0;                  // max interior-wall count over facets
    std::optional<long> f_boundary;  // same max over boundary facets, if any
    long delta = 0;                  // identical quantity, reported separately
};

/// A facet is a boundary facet when it has a through-origin wall on the
/// boundary of the complex.
inline ConjectureStats conjecture_stats(const SplineProblem& p) {
    ConjectureStats out;
    for (int f = 0; f < p.nfacets; ++f) {
        long deg = p.boundary_degree(f);
        out.f_all = std::max(out.f_all, deg);
        if (p.facet_boundary_walls[f] > 0)
            out.f_boundary = std::max(out.f_boundary.value_or(0), deg);
    }
    out.delta = out.f_all;
    return out;
}

struct BoundReport {
    std::map<int, long> lambda_per_facet;
    std::map<int, long> lambda_per_tau;  // keyed by interior constraint id
    long e_bound = 0;
    long f_bound = 0;
    std::map<int, long> m_per_tau;
    std::optional<long> m_bound;
    long delta = 0;
    long conjecture_f = 0;
    std::optional<long> conjecture_f_boundary;
};

inline BoundReport bound_report(const SplineProblem& p) {
    BoundReport r;
    for (int f = 0; f < p.nfacets; ++f) r.lambda_per_facet[f] = lambda_facet(p, f);
    for (int cid : p.interior_ids()) r.lambda_per_tau[cid] = lambda_tau(p, cid);
    r.e_bound = e_bound(p);
    r.f_bound = f_bound(p);
    if (p.simplicial()) {
        for (int cid : p.interior_ids()) r.m_per_tau[cid] = m_tau(p, cid);
        r.m_bound = m_bound(p);
    }
    auto cs = conjecture_stats(p);
    r.delta = cs.delta;
    r.conjecture_f = cs.f_all;
    r.conjecture_f_boundary = cs.f_boundary;
    return r;
}

}  // namespace splinelab
