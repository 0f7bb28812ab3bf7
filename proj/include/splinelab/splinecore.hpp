#pragma once

#include <splinelab/complexes.hpp>
#include <splinelab/linalg.hpp>
#include <splinelab/polyring.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace splinelab {

struct HFTable {
    std::uint64_t problem_hash = 0;
    std::map<long, long> entries;
};

/// The graded Billera-Rose constraint matrix in one degree: facet column
/// blocks (f * dim S_d) followed by one auxiliary block per constraint
/// (dim S_{d - exponent}, empty when d < exponent); one row block per
/// constraint. Interior rows carry +I on facet a, -I on facet b and
/// -mult(l^{a+1}) on their auxiliary block; boundary rows +I and -mult.
struct GradedConstraintMatrix {
    int degree = 0;
    SparseMat matrix;
    long piece_dim = 0;                 // dim S_d
    std::vector<long> facet_col_offset;
    std::vector<long> aux_col_offset;
    std::vector<long> aux_dim;
    std::vector<long> row_offset;
    long total_cols = 0;
};

inline Form constraint_power(const Constraint& c) { return power(c.form, c.exponent); }

/// Product of l^{alpha+1} over the facet's incident constraints.
inline Form facet_wall_product(const SplineProblem& p, int facet) {
    Form acc = Form::one(p.nvars);
    for (int cid : p.facet_constraints[facet]) acc = acc * constraint_power(p.constraints[cid]);
    return acc;
}

inline long lambda_facet(const SplineProblem& p, int facet) {
    if (facet < 0 || facet >= p.nfacets) throw std::out_of_range("unknown facet");
    long s = 0;
    for (int cid : p.facet_constraints[facet]) s += p.constraints[cid].exponent;
    return s;
}

inline GradedConstraintMatrix assemble_constraint_matrix(const SplineProblem& p, int d) {
    GradedConstraintMatrix g;
    g.degree = d;
    g.piece_dim = graded_dim(p.nvars, d);
    long col = 0;
    for (int f = 0; f < p.nfacets; ++f) {
        g.facet_col_offset.push_back(col);
        col += g.piece_dim;
    }
    for (const auto& c : p.constraints) {
        g.aux_col_offset.push_back(col);
        long ad = graded_dim(p.nvars, d - c.exponent);
        g.aux_dim.push_back(ad);
        col += ad;
    }
    g.total_cols = col;
    long row = 0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        g.row_offset.push_back(row);
        row += g.piece_dim;
    }
    g.matrix = SparseMat(row, col);
    SparseMat id = SparseMat::identity(g.piece_dim);
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        g.matrix.place_block(g.row_offset[i], g.facet_col_offset[c.facet_a], id);
        if (c.kind == Constraint::Kind::Interior)
            g.matrix.place_block(g.row_offset[i], g.facet_col_offset[c.facet_b], id, Rational(-1));
        if (g.aux_dim[i] > 0) {
            SparseMat mul = mult_matrix(constraint_power(c), d - c.exponent);
            g.matrix.place_block(g.row_offset[i], g.aux_col_offset[i], mul, Rational(-1));
        }
    }
    return g;
}

namespace detail {

/// One connected component of the supported sub-problem, with a spanning
/// tree of its interior constraints and per-facet tree paths.
struct SupportComponent {
    std::vector<int> facets;
    std::vector<int> incident_cids;                    // sorted
    std::map<int, std::vector<std::pair<int, int>>> path;  // facet -> [(cid, sign)]
    // Rows of the reduced system: each is a list of (cid, sign) aux terms
    // plus a flag for the root identity block.
    struct Row {
        bool has_root = false;
        std::vector<std::pair<int, int>> terms;  // (cid, signed multiplicity)
    };
    std::vector<Row> rows;
};

inline std::vector<SupportComponent> build_components(const SplineProblem& p,
                                                      const std::vector<int>& subset) {
    std::set<int> in_subset(subset.begin(), subset.end());
    for (int f : subset)
        if (f < 0 || f >= p.nfacets) throw std::out_of_range("unknown facet in subset");

    // Adjacency over interior constraints with both endpoints in the subset.
    std::map<int, std::vector<std::pair<int, int>>> adj;  // facet -> [(neighbor, cid)]
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        if (c.kind != Constraint::Kind::Interior) continue;
        if (in_subset.count(c.facet_a) && in_subset.count(c.facet_b)) {
            adj[c.facet_a].emplace_back(c.facet_b, static_cast<int>(i));
            adj[c.facet_b].emplace_back(c.facet_a, static_cast<int>(i));
        }
    }

    std::vector<SupportComponent> comps;
    std::set<int> seen;
    for (int start : subset) {
        if (seen.count(start)) continue;
        SupportComponent comp;
        std::set<int> tree_cids;
        comp.path[start] = {};
        seen.insert(start);
        std::vector<int> queue{start};
        std::size_t qi = 0;
        while (qi < queue.size()) {
            int u = queue[qi++];
            comp.facets.push_back(u);
            for (auto [v, cid] : adj[u]) {
                if (seen.count(v)) continue;
                seen.insert(v);
                tree_cids.insert(cid);
                const auto& c = p.constraints[cid];
                // F_a - F_b = l^e g: stepping a -> b subtracts, b -> a adds.
                int sign = (c.facet_a == u) ? -1 : +1;
                comp.path[v] = comp.path[u];
                comp.path[v].emplace_back(cid, sign);
                queue.push_back(v);
            }
        }

        std::set<int> incident;
        for (int f : comp.facets)
            for (int cid : p.facet_constraints[f]) {
                const auto& c = p.constraints[cid];
                if (c.kind == Constraint::Kind::Interior) {
                    bool a_in = in_subset.count(c.facet_a) > 0;
                    bool b_in = in_subset.count(c.facet_b) > 0;
                    if (a_in && b_in) {
                        // Both ends lie in this component by connectivity.
                        incident.insert(cid);
                    } else {
                        incident.insert(cid);
                    }
                } else {
                    incident.insert(cid);
                }
            }
        comp.incident_cids.assign(incident.begin(), incident.end());

        auto combine = [](std::map<int, int>& acc, const std::vector<std::pair<int, int>>& terms,
                          int scale) {
            for (auto [cid, s] : terms) {
                acc[cid] += s * scale;
                if (acc[cid] == 0) acc.erase(cid);
            }
        };

        for (int cid : comp.incident_cids) {
            const auto& c = p.constraints[cid];
            SupportComponent::Row row;
            std::map<int, int> acc;
            if (c.kind == Constraint::Kind::Interior) {
                bool a_in = in_subset.count(c.facet_a) > 0;
                bool b_in = in_subset.count(c.facet_b) > 0;
                if (a_in && b_in) {
                    if (tree_cids.count(cid)) continue;  // eliminated by the tree
                    // F_a - F_b - l^e g = 0.
                    combine(acc, comp.path[c.facet_a], +1);
                    combine(acc, comp.path[c.facet_b], -1);
                    acc[cid] -= 1;
                } else if (a_in) {
                    // F_a - l^e g = 0.
                    row.has_root = true;
                    combine(acc, comp.path[c.facet_a], +1);
                    acc[cid] -= 1;
                } else {
                    // F_b + l^e g = 0.
                    row.has_root = true;
                    combine(acc, comp.path[c.facet_b], +1);
                    acc[cid] += 1;
                }
            } else {
                // Boundary: F_a - l^e g = 0.
                row.has_root = true;
                combine(acc, comp.path[c.facet_a], +1);
                acc[cid] -= 1;
            }
            for (auto [k, v] : acc) row.terms.emplace_back(k, v);
            comp.rows.push_back(std::move(row));
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

/// The reduced system of one component in one degree, with its column
/// layout: root block (dim S_d) followed by aux blocks per incident cid.
struct ReducedSystem {
    SparseMat mat;
    long piece_dim = 0;
    std::vector<long> aux_offset;  // parallel to comp.incident_cids
    std::vector<long> aux_dims;
    long total_cols = 0;           // root + aux
};

inline ReducedSystem assemble_reduced(const SplineProblem& p, const SupportComponent& comp, int d) {
    ReducedSystem sys;
    sys.piece_dim = graded_dim(p.nvars, d);
    long col = sys.piece_dim;
    std::map<int, std::size_t> cid_slot;
    for (std::size_t i = 0; i < comp.incident_cids.size(); ++i) {
        int cid = comp.incident_cids[i];
        cid_slot[cid] = i;
        sys.aux_offset.push_back(col);
        long ad = graded_dim(p.nvars, d - p.constraints[cid].exponent);
        sys.aux_dims.push_back(ad);
        col += ad;
    }
    sys.total_cols = col;

    sys.mat = SparseMat(static_cast<long>(comp.rows.size()) * sys.piece_dim, col);
    SparseMat id = SparseMat::identity(sys.piece_dim);
    for (std::size_t r = 0; r < comp.rows.size(); ++r) {
        long row_off = static_cast<long>(r) * sys.piece_dim;
        const auto& row = comp.rows[r];
        if (row.has_root) sys.mat.place_block(row_off, 0, id);
        for (auto [cid, mult] : row.terms) {
            std::size_t slot = cid_slot.at(cid);
            if (sys.aux_dims[slot] == 0) continue;
            const auto& c = p.constraints[cid];
            SparseMat m = mult_matrix(constraint_power(c), d - c.exponent);
            sys.mat.place_block(row_off, sys.aux_offset[slot], m, Rational(mult));
        }
    }
    return sys;
}

}  // namespace detail

/// dim of the degree-d piece of the spline module: kernel dimension of the
/// constraint matrix, evaluated through a spanning-tree reduction.
inline long hf_supported(const SplineProblem& p, const std::vector<int>& subset, int d,
                         const RankPolicy& policy = RankPolicy::exact()) {
    if (subset.empty()) throw std::invalid_argument("hf_supported: empty facet subset");
    if (d < 0) throw std::invalid_argument("negative degree");
    auto comps = detail::build_components(p, subset);
    long total = 0;
    for (const auto& comp : comps) {
        auto sys = detail::assemble_reduced(p, comp, d);
        total += sys.total_cols - sys.mat.rank(policy);
    }
    return total;
}

inline long hf(const SplineProblem& p, int d, const RankPolicy& policy = RankPolicy::exact()) {
    std::vector<int> all(p.nfacets);
    std::iota(all.begin(), all.end(), 0);
    return hf_supported(p, all, d, policy);
}

inline HFTable hf_table(const SplineProblem& p, int dmin, int dmax,
                        const RankPolicy& policy = RankPolicy::exact()) {
    HFTable t;
    t.problem_hash = p.hash();
    for (int d = dmin; d <= dmax; ++d) t.entries[d] = hf(p, d, policy);
    return t;
}

/// Full-coordinate layout of kernel vectors: facet blocks then auxiliary
/// blocks, matching GradedConstraintMatrix columns.
struct KernelLayout {
    long piece_dim = 0;
    std::vector<long> facet_offset;
    std::vector<long> aux_offset;
    std::vector<long> aux_dim;
    long total = 0;
};

inline KernelLayout kernel_layout(const SplineProblem& p, int d) {
    KernelLayout l;
    l.piece_dim = graded_dim(p.nvars, d);
    long col = 0;
    for (int f = 0; f < p.nfacets; ++f) {
        l.facet_offset.push_back(col);
        col += l.piece_dim;
    }
    for (const auto& c : p.constraints) {
        l.aux_offset.push_back(col);
        long ad = graded_dim(p.nvars, d - c.exponent);
        l.aux_dim.push_back(ad);
        col += ad;
    }
    l.total = col;
    return l;
}

/// Exact kernel basis of the degree-d constraint system restricted to the
/// subset, back-substituted into full coordinates (zero outside).
inline std::vector<SparseRow> kernel_vectors_supported(const SplineProblem& p,
                                                       const std::vector<int>& subset, int d) {
    auto layout = kernel_layout(p, d);
    auto comps = detail::build_components(p, subset);
    std::vector<SparseRow> out;
    for (const auto& comp : comps) {
        auto sys = detail::assemble_reduced(p, comp, d);
        Subspace ker = kernel_basis(sys.mat);
        std::map<int, std::size_t> cid_slot;
        for (std::size_t i = 0; i < comp.incident_cids.size(); ++i)
            cid_slot[comp.incident_cids[i]] = i;

        for (const auto& kv : ker.basis_rows()) {
            std::vector<Rational> root(sys.piece_dim, Rational(0));
            std::map<int, std::vector<Rational>> aux;
            for (std::size_t i = 0; i < comp.incident_cids.size(); ++i)
                aux[comp.incident_cids[i]] = std::vector<Rational>(sys.aux_dims[i], Rational(0));
            for (const auto& [c, v] : kv) {
                if (c < sys.piece_dim) {
                    root[c] = v;
                } else {
                    std::size_t slot =
                        static_cast<std::size_t>(std::upper_bound(sys.aux_offset.begin(),
                                                                  sys.aux_offset.end(), c) -
                                                 sys.aux_offset.begin()) -
                        1;
                    aux[comp.incident_cids[slot]][c - sys.aux_offset[slot]] = v;
                }
            }
            SparseRow full;
            auto emit = [&](long off, const std::vector<Rational>& seg) {
                for (std::size_t i = 0; i < seg.size(); ++i)
                    if (seg[i] != 0) full.emplace_back(static_cast<int>(off + i), seg[i]);
            };
            for (int f : comp.facets) {
                std::vector<Rational> fa = root;
                for (auto [cid, sign] : comp.path.at(f)) {
                    const auto& c = p.constraints[cid];
                    if (graded_dim(p.nvars, d - c.exponent) == 0) continue;
                    std::vector<Rational> prod;
                    mult_apply_segment(constraint_power(c), d - c.exponent, aux.at(cid), prod);
                    for (long i = 0; i < sys.piece_dim; ++i)
                        fa[i] += Rational(sign) * prod[i];
                }
                emit(layout.facet_offset[f], fa);
            }
            for (const auto& [cid, seg] : aux) emit(layout.aux_offset[cid], seg);
            std::sort(full.begin(), full.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.push_back(std::move(full));
        }
    }
    return out;
}

inline std::vector<SparseRow> kernel_vectors(const SplineProblem& p, int d) {
    std::vector<int> all(p.nfacets);
    std::iota(all.begin(), all.end(), 0);
    return kernel_vectors_supported(p, all, d);
}

namespace detail {

/// Restriction of full-coordinate kernel vectors to the facet blocks.
inline Subspace facet_projection(const SplineProblem& p, int d,
                                 const std::vector<SparseRow>& vectors) {
    long piece = graded_dim(p.nvars, d);
    long ambient = static_cast<long>(p.nfacets) * piece;
    std::vector<SparseRow> proj;
    for (const auto& v : vectors) {
        SparseRow r;
        for (const auto& [c, val] : v)
            if (c < ambient) r.emplace_back(c, val);
        proj.push_back(std::move(r));
    }
    return Subspace(ambient, std::move(proj));
}

}  // namespace detail

/// The ideal generators of Prop-style edge-star splines: L_tau and the wall
/// products of the two star facets with L_tau divided out.
struct StarIdealForms {
    Form l_tau;
    Form l1;
    Form l2;
};

inline StarIdealForms star_ideal(const SplineProblem& p, int cid) {
    const auto& c = p.constraints[cid];
    if (c.kind != Constraint::Kind::Interior)
        throw std::invalid_argument("star_ideal: boundary constraint");
    StarIdealForms out;
    out.l_tau = constraint_power(c);
    out.l1 = Form::one(p.nvars);
    out.l2 = Form::one(p.nvars);
    for (int id : p.facet_constraints[c.facet_a])
        if (id != cid) out.l1 = out.l1 * constraint_power(p.constraints[id]);
    for (int id : p.facet_constraints[c.facet_b])
        if (id != cid) out.l2 = out.l2 * constraint_power(p.constraints[id]);
    return out;
}

/// Degree-d syzygies of (L1, L2, L_tau): kernel of the one-row block matrix
/// [mult(L1) | mult(L2) | mult(L_tau)] with shifted column blocks.
inline long hf_tau_syzygy(const SplineProblem& p, int cid, int d,
                          const RankPolicy& policy = RankPolicy::exact()) {
    auto forms = star_ideal(p, cid);
    long piece = graded_dim(p.nvars, d);
    long d1 = graded_dim(p.nvars, d - forms.l1.degree());
    long d2 = graded_dim(p.nvars, d - forms.l2.degree());
    long d3 = graded_dim(p.nvars, d - forms.l_tau.degree());
    SparseMat m(piece, d1 + d2 + d3);
    if (d1 > 0) m.place_block(0, 0, mult_matrix(forms.l1, d - forms.l1.degree()));
    if (d2 > 0) m.place_block(0, d1, mult_matrix(forms.l2, d - forms.l2.degree()));
    if (d3 > 0) m.place_block(0, d1 + d2, mult_matrix(forms.l_tau, d - forms.l_tau.degree()));
    return d1 + d2 + d3 - m.rank(policy);
}

/// Spline basis of C^alpha_tau(P) in facet coordinates via the syzygy
/// identification: (G1, G2, G3) -> (L1 G1 on sigma_1, -L2 G2 on sigma_2).
inline std::vector<SparseRow> star_spline_vectors(const SplineProblem& p, int cid, int d) {
    auto forms = star_ideal(p, cid);
    const auto& c = p.constraints[cid];
    long piece = graded_dim(p.nvars, d);
    long d1 = graded_dim(p.nvars, d - forms.l1.degree());
    long d2 = graded_dim(p.nvars, d - forms.l2.degree());
    long d3 = graded_dim(p.nvars, d - forms.l_tau.degree());
    SparseMat m(piece, d1 + d2 + d3);
    if (d1 > 0) m.place_block(0, 0, mult_matrix(forms.l1, d - forms.l1.degree()));
    if (d2 > 0) m.place_block(0, d1, mult_matrix(forms.l2, d - forms.l2.degree()));
    if (d3 > 0) m.place_block(0, d1 + d2, mult_matrix(forms.l_tau, d - forms.l_tau.degree()));
    Subspace ker = kernel_basis(m);

    std::vector<SparseRow> out;
    for (const auto& kv : ker.basis_rows()) {
        std::vector<Rational> g1(d1, Rational(0)), g2(d2, Rational(0));
        for (const auto& [col, v] : kv) {
            if (col < d1)
                g1[col] = v;
            else if (col < d1 + d2)
                g2[col - d1] = v;
        }
        SparseRow full;
        if (d1 > 0) {
            std::vector<Rational> f1;
            mult_apply_segment(forms.l1, d - forms.l1.degree(), g1, f1);
            for (std::size_t i = 0; i < f1.size(); ++i)
                if (f1[i] != 0)
                    full.emplace_back(static_cast<int>(c.facet_a * piece + i), f1[i]);
        }
        if (d2 > 0) {
            std::vector<Rational> f2;
            mult_apply_segment(forms.l2, d - forms.l2.degree(), g2, f2);
            for (std::size_t i = 0; i < f2.size(); ++i)
                if (f2[i] != 0)
                    full.emplace_back(static_cast<int>(c.facet_b * piece + i), -f2[i]);
        }
        std::sort(full.begin(), full.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (!full.empty()) out.push_back(std::move(full));
    }
    return out;
}

enum class LsRoute { SyzygyBases, SupportedKernels };

/// Dimension of LS^{alpha,k} in degree d: the span of single-facet spline
/// spaces (k = 0) or edge-star spline spaces (k = 1) inside the facet
/// coordinate space.
inline long hf_ls(const SplineProblem& p, int k, int d,
                  LsRoute route = LsRoute::SyzygyBases) {
    if (k != 0 && k != 1) throw std::invalid_argument("hf_ls: k must be 0 or 1");
    long piece = graded_dim(p.nvars, d);
    long ambient = static_cast<long>(p.nfacets) * piece;
    std::vector<Subspace> spans;
    if (k == 0) {
        for (int f = 0; f < p.nfacets; ++f) {
            if (route == LsRoute::SupportedKernels) {
                spans.push_back(detail::facet_projection(p, d, kernel_vectors_supported(p, {f}, d)));
                continue;
            }
            Form lam = facet_wall_product(p, f);
            long gdim = graded_dim(p.nvars, d - lam.degree());
            std::vector<SparseRow> vecs;
            auto basis = gdim > 0 ? monomial_basis(p.nvars, d - lam.degree()) : nullptr;
            for (long i = 0; i < gdim; ++i) {
                std::vector<Rational> g(gdim, Rational(0));
                g[i] = 1;
                std::vector<Rational> fcoef;
                mult_apply_segment(lam, d - lam.degree(), g, fcoef);
                SparseRow r;
                for (std::size_t j = 0; j < fcoef.size(); ++j)
                    if (fcoef[j] != 0) r.emplace_back(static_cast<int>(f * piece + j), fcoef[j]);
                vecs.push_back(std::move(r));
            }
            spans.emplace_back(ambient, std::move(vecs));
        }
    } else {
        for (int cid : p.interior_ids()) {
            if (route == LsRoute::SupportedKernels) {
                auto st = p.star(cid);
                spans.push_back(detail::facet_projection(
                    p, d, kernel_vectors_supported(p, {st.facets[0], st.facets[1]}, d)));
            } else {
                spans.emplace_back(ambient, star_spline_vectors(p, cid, d));
            }
        }
    }
    if (spans.empty()) return 0;
    return subspace_sum_dim(spans);
}

/// Alternating-sum route through the exact intersection complex:
/// sum_tau dim C_tau - sum_sigma (|interior walls| - 1) * dim S(-lambda)_d.
inline long hf_ls1_euler(const SplineProblem& p, int d,
                         const RankPolicy& policy = RankPolicy::exact()) {
    long acc = 0;
    for (int cid : p.interior_ids()) acc += hf_tau_syzygy(p, cid, d, policy);
    for (int f = 0; f < p.nfacets; ++f) {
        long m = p.boundary_degree(f);
        if (m >= 2) acc -= (m - 1) * shifted_dim3(lambda_facet(p, f), d);
    }
    return acc;
}

/// Minimal generator counts of the kernel module per degree up to dmax:
/// dim K_d minus dim of the span of x_i * K_{d-1}.
inline std::map<int, long> generator_degrees(const SplineProblem& p, int dmax) {
    if (dmax < 0) throw std::invalid_argument("generator_degrees: negative dmax");
    std::map<int, long> out;
    std::vector<SparseRow> prev;  // kernel basis at d-1
    for (int d = 0; d <= dmax; ++d) {
        auto cur = kernel_vectors(p, d);
        long dim_d = static_cast<long>(cur.size());
        long span = 0;
        if (d > 0 && !prev.empty()) {
            auto lay_prev = kernel_layout(p, d - 1);
            auto lay_cur = kernel_layout(p, d);
            std::vector<SparseRow> shifted;
            for (const auto& v : prev) {
                for (int var = 0; var < p.nvars; ++var) {
                    Form x = Form::variable(p.nvars, var);
                    SparseRow w;
                    auto push_seg = [&](long off_prev, long off_cur, int seg_deg, long seg_dim) {
                        if (seg_dim <= 0) return;
                        std::vector<Rational> seg(seg_dim, Rational(0));
                        bool any = false;
                        for (const auto& [c, val] : v)
                            if (c >= off_prev && c < off_prev + seg_dim) {
                                seg[c - off_prev] = val;
                                any = true;
                            }
                        if (!any) return;
                        std::vector<Rational> prod;
                        mult_apply_segment(x, seg_deg, seg, prod);
                        for (std::size_t i = 0; i < prod.size(); ++i)
                            if (prod[i] != 0)
                                w.emplace_back(static_cast<int>(off_cur + i), prod[i]);
                    };
                    for (int f = 0; f < p.nfacets; ++f)
                        push_seg(lay_prev.facet_offset[f], lay_cur.facet_offset[f], d - 1,
                                 lay_prev.piece_dim);
                    for (std::size_t ci = 0; ci < p.constraints.size(); ++ci)
                        push_seg(lay_prev.aux_offset[ci], lay_cur.aux_offset[ci],
                                 d - 1 - p.constraints[ci].exponent, lay_prev.aux_dim[ci]);
                    std::sort(w.begin(), w.end(),
                              [](const auto& a, const auto& b) { return a.first < b.first; });
                    if (!w.empty()) shifted.push_back(std::move(w));
                }
            }
            SparseMat m(static_cast<long>(shifted.size()), kernel_layout(p, d).total);
            for (std::size_t r = 0; r < shifted.size(); ++r)
                for (const auto& [c, val] : shifted[r]) m.set(static_cast<long>(r), c, val);
            span = m.rank_exact();
        }
        long count = dim_d - span;
        if (count != 0) out[d] = count;
        prev = std::move(cur);
    }
    return out;
}

}  // namespace splinelab
