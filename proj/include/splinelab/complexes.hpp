#pragma once

#include <splinelab/polyring.hpp>
#include <splinelab/rational.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace splinelab {

using Point2 = std::array<Rational, 2>;
using Point3 = std::array<Rational, 3>;
using FaceId = std::pair<int, int>;  // sorted vertex-index pair

inline FaceId face_id(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

/// Planar polytopal complex: convex polygons given by cyclically ordered
/// vertex indices.
struct PlanarComplex {
    std::vector<Point2> vertices;
    std::vector<std::vector<int>> facets;
};

/// Central 3D star: each facet is the cone of the origin over a boundary
/// triangle.
struct CentralStar {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> triangles;
};

struct Smoothness {
    int interior_default = 0;
    int boundary_default = -1;
    std::map<FaceId, int> overrides;

    int interior_alpha(FaceId f) const {
        auto it = overrides.find(f);
        return it == overrides.end() ? interior_default : it->second;
    }
    int boundary_alpha(FaceId f) const {
        auto it = overrides.find(f);
        return it == overrides.end() ? boundary_default : it->second;
    }
};

struct ValidationReport {
    bool pure = true;
    bool hereditary = true;
    bool intersections_ok = true;
    bool nondegenerate = true;
    bool connected = true;
    std::vector<std::string> issues;

    bool ok() const { return pure && hereditary && intersections_ok && nondegenerate && connected; }
};

namespace geo {

inline Rational cross2(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline Point3 cross3(const Point3& a, const Point3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Rational dot3(const Point3& a, const Point3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Rational det3(const Point3& a, const Point3& b, const Point3& c) {
    return dot3(a, cross3(b, c));
}

/// Strictly convex in the given cyclic order, consistently oriented.
inline bool polygon_strictly_convex(const std::vector<Point2>& pts) {
    std::size_t n = pts.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rational c = cross2(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
        if (c == 0) return false;
        int s = c > 0 ? 1 : -1;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            return false;
    }
    return true;
}

/// Separating-axis test: do the convex polygons have intersecting interiors?
inline bool polygons_overlap(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    auto separated_by_edges_of = [](const std::vector<Point2>& p, const std::vector<Point2>& q) {
        std::size_t n = p.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& u = p[i];
            const Point2& v = p[(i + 1) % n];
            // Axis normal to edge (u, v): check all of q weakly on the outer side.
            bool all_q_one_side_pos = true, all_q_one_side_neg = true;
            for (const auto& x : q) {
                Rational c = cross2(u, v, x);
                if (c < 0) all_q_one_side_pos = false;
                if (c > 0) all_q_one_side_neg = false;
            }
            if (!(all_q_one_side_pos || all_q_one_side_neg)) continue;
            bool q_pos = all_q_one_side_pos;
            bool p_opposite = true;
            for (const auto& x : p) {
                Rational c = cross2(u, v, x);
                if (q_pos ? c > 0 : c < 0) p_opposite = false;
            }
            if (p_opposite) return true;
        }
        return false;
    };
    return !(separated_by_edges_of(a, b) || separated_by_edges_of(b, a));
}

inline bool point_on_segment_interior(const Point2& p, const Point2& a, const Point2& b) {
    if (cross2(a, b, p) != 0) return false;
    Rational d0 = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
    Rational d1 = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
    return d0 > 0 && d0 < d1;
}

/// Membership of x in the closed simplicial cone spanned by the columns
/// (requires the columns independent).
inline bool in_cone3(const Point3& x, const Point3& a, const Point3& b, const Point3& c) {
    Rational d = det3(a, b, c);
    Rational la = det3(x, b, c) / d;
    Rational lb = det3(a, x, c) / d;
    Rational lc = det3(a, b, x) / d;
    return la >= 0 && lb >= 0 && lc >= 0;
}

/// Proper crossing of the open great-arcs cone(a1,a2) and cone(b1,b2).
inline bool arcs_cross(const Point3& a1, const Point3& a2, const Point3& b1, const Point3& b2) {
    Point3 n1 = cross3(a1, a2);
    Point3 n2 = cross3(b1, b2);
    Point3 t = cross3(n1, n2);
    if (t[0] == 0 && t[1] == 0 && t[2] == 0) return false;  // coplanar arcs
    auto in_open_sector = [](const Point3& p, const Point3& u, const Point3& v, const Point3& n) {
        return dot3(cross3(u, p), n) > 0 && dot3(cross3(p, v), n) > 0;
    };
    for (int sgn = 0; sgn < 2; ++sgn) {
        Point3 cand = sgn == 0 ? t : Point3{-t[0], -t[1], -t[2]};
        if (in_open_sector(cand, a1, a2, n1) && in_open_sector(cand, b1, b2, n2)) return true;
    }
    return false;
}

}  // namespace geo

namespace detail {

/// Facet-adjacency connectivity restricted to a subset of facets; adjacency
/// via the given shared codimension-one faces.
inline bool subgraph_connected(const std::vector<int>& nodes,
                               const std::map<FaceId, std::vector<int>>& edge_facets) {
    if (nodes.empty()) return true;
    std::set<int> node_set(nodes.begin(), nodes.end());
    std::map<int, std::vector<int>> adj;
    for (const auto& [e, fs] : edge_facets) {
        if (fs.size() != 2) continue;
        if (node_set.count(fs[0]) && node_set.count(fs[1])) {
            adj[fs[0]].push_back(fs[1]);
            adj[fs[1]].push_back(fs[0]);
        }
    }
    std::vector<int> stack{nodes[0]};
    std::set<int> seen{nodes[0]};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (seen.insert(v).second) stack.push_back(v);
    }
    return seen.size() == node_set.size();
}

}  // namespace detail

/// Edge -> incident facet list, in facet order.
inline std::map<FaceId, std::vector<int>> edge_incidence(const PlanarComplex& c) {
    std::map<FaceId, std::vector<int>> edges;
    for (std::size_t f = 0; f < c.facets.size(); ++f) {
        const auto& poly = c.facets[f];
        for (std::size_t i = 0; i < poly.size(); ++i)
            edges[face_id(poly[i], poly[(i + 1) % poly.size()])].push_back(static_cast<int>(f));
    }
    return edges;
}

inline std::map<FaceId, std::vector<int>> edge_incidence(const CentralStar& c) {
    std::map<FaceId, std::vector<int>> edges;
    for (std::size_t f = 0; f < c.triangles.size(); ++f) {
        const auto& t = c.triangles[f];
        for (int i = 0; i < 3; ++i)
            edges[face_id(t[i], t[(i + 1) % 3])].push_back(static_cast<int>(f));
    }
    return edges;
}

inline ValidationReport validate(const PlanarComplex& c) {
    ValidationReport rep;
    auto issue = [&](const std::string& s) { rep.issues.push_back(s); };

    if (c.facets.empty()) {
        rep.connected = false;
        issue("no facets");
        return rep;
    }
    for (std::size_t f = 0; f < c.facets.size(); ++f) {
        const auto& poly = c.facets[f];
        std::set<int> distinct(poly.begin(), poly.end());
        if (poly.size() < 3 || distinct.size() != poly.size()) {
            rep.nondegenerate = false;
            issue("facet " + std::to_string(f) + " repeats vertices or is too small");
            continue;
        }
        for (int v : poly)
            if (v < 0 || v >= static_cast<int>(c.vertices.size()))
                throw std::out_of_range("facet references unknown vertex");
        std::vector<Point2> pts;
        for (int v : poly) pts.push_back(c.vertices[v]);
        if (!geo::polygon_strictly_convex(pts)) {
            rep.nondegenerate = false;
            issue("facet " + std::to_string(f) + " not strictly convex in given order");
        }
    }
    if (!rep.nondegenerate) return rep;

    auto edges = edge_incidence(c);
    for (const auto& [e, fs] : edges) {
        if (fs.size() > 2) {
            rep.intersections_ok = false;
            issue("edge shared by more than two facets");
        }
    }

    // Pairwise intersection conditions.
    for (std::size_t f = 0; f < c.facets.size(); ++f) {
        for (std::size_t g = f + 1; g < c.facets.size(); ++g) {
            const auto& pf = c.facets[f];
            const auto& pg = c.facets[g];
            std::set<int> sf(pf.begin(), pf.end());
            std::vector<int> shared;
            for (int v : pg)
                if (sf.count(v)) shared.push_back(v);
            std::vector<Point2> ptsf, ptsg;
            for (int v : pf) ptsf.push_back(c.vertices[v]);
            for (int v : pg) ptsg.push_back(c.vertices[v]);
            if (geo::polygons_overlap(ptsf, ptsg)) {
                rep.intersections_ok = false;
                issue("facets " + std::to_string(f) + "," + std::to_string(g) +
                      " have overlapping interiors");
                continue;
            }
            if (shared.size() > 2) {
                rep.intersections_ok = false;
                issue("facets share more than two vertices");
            } else if (shared.size() == 2) {
                if (!edges.count(face_id(shared[0], shared[1])) ||
                    edges[face_id(shared[0], shared[1])].size() != 2) {
                    rep.intersections_ok = false;
                    issue("two shared vertices do not form a shared edge");
                }
            }
            // Hanging nodes: a vertex of one polygon inside an edge of the other.
            auto t_junction = [&](const std::vector<int>& pa, const std::vector<int>& pb) {
                for (std::size_t i = 0; i < pa.size(); ++i) {
                    const Point2& u = c.vertices[pa[i]];
                    const Point2& v = c.vertices[pa[(i + 1) % pa.size()]];
                    for (int w : pb)
                        if (geo::point_on_segment_interior(c.vertices[w], u, v)) return true;
                }
                return false;
            };
            if (t_junction(pf, pg) || t_junction(pg, pf)) {
                rep.intersections_ok = false;
                issue("facets " + std::to_string(f) + "," + std::to_string(g) + " form a T-junction");
            }
        }
    }

    // Hereditary: connected facet-adjacency of the star of every face.
    std::vector<int> all;
    for (std::size_t f = 0; f < c.facets.size(); ++f) all.push_back(static_cast<int>(f));
    if (!detail::subgraph_connected(all, edges)) {
        rep.connected = false;
        rep.hereditary = false;
        issue("dual graph disconnected");
    }
    std::map<int, std::vector<int>> vertex_star;
    for (std::size_t f = 0; f < c.facets.size(); ++f)
        for (int v : c.facets[f]) vertex_star[v].push_back(static_cast<int>(f));
    for (const auto& [v, fs] : vertex_star) {
        if (!detail::subgraph_connected(fs, edges)) {
            rep.hereditary = false;
            issue("star of vertex " + std::to_string(v) + " has disconnected dual graph");
        }
    }
    return rep;
}

inline ValidationReport validate(const CentralStar& c) {
    ValidationReport rep;
    auto issue = [&](const std::string& s) { rep.issues.push_back(s); };

    if (c.triangles.empty()) {
        rep.connected = false;
        issue("no facets");
        return rep;
    }
    for (std::size_t f = 0; f < c.triangles.size(); ++f) {
        const auto& t = c.triangles[f];
        for (int v : t)
            if (v < 0 || v >= static_cast<int>(c.vertices.size()))
                throw std::out_of_range("triangle references unknown vertex");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            rep.nondegenerate = false;
            issue("triangle " + std::to_string(f) + " repeats vertices");
            continue;
        }
        if (geo::det3(c.vertices[t[0]], c.vertices[t[1]], c.vertices[t[2]]) == 0) {
            rep.nondegenerate = false;
            issue("triangle " + std::to_string(f) + " spans a plane through the origin");
        }
    }
    if (!rep.nondegenerate) return rep;

    auto edges = edge_incidence(c);
    for (const auto& [e, fs] : edges)
        if (fs.size() > 2) {
            rep.intersections_ok = false;
            issue("edge shared by more than two cone facets");
        }

    // Pairwise cone intersection conditions.
    for (std::size_t f = 0; f < c.triangles.size(); ++f) {
        for (std::size_t g = f + 1; g < c.triangles.size(); ++g) {
            const auto& tf = c.triangles[f];
            const auto& tg = c.triangles[g];
            std::set<int> sf(tf.begin(), tf.end());
            int shared = 0;
            for (int v : tg) shared += sf.count(v) ? 1 : 0;
            if (shared == 3) {
                rep.intersections_ok = false;
                issue("duplicate cone facet");
                continue;
            }
            bool bad = false;
            for (int v : tg) {
                if (sf.count(v)) continue;
                if (geo::in_cone3(c.vertices[v], c.vertices[tf[0]], c.vertices[tf[1]],
                                  c.vertices[tf[2]]))
                    bad = true;
            }
            for (int v : tf) {
                if (std::count(tg.begin(), tg.end(), v)) continue;
                if (geo::in_cone3(c.vertices[v], c.vertices[tg[0]], c.vertices[tg[1]],
                                  c.vertices[tg[2]]))
                    bad = true;
            }
            for (int i = 0; i < 3 && !bad; ++i) {
                for (int j = 0; j < 3 && !bad; ++j) {
                    FaceId ef = face_id(tf[i], tf[(i + 1) % 3]);
                    FaceId eg = face_id(tg[j], tg[(j + 1) % 3]);
                    if (ef == eg) continue;
                    if (geo::arcs_cross(c.vertices[ef.first], c.vertices[ef.second],
                                        c.vertices[eg.first], c.vertices[eg.second]))
                        bad = true;
                }
            }
            if (bad) {
                rep.intersections_ok = false;
                issue("cones " + std::to_string(f) + "," + std::to_string(g) +
                      " intersect beyond a shared face");
            }
        }
    }

    std::vector<int> all;
    for (std::size_t f = 0; f < c.triangles.size(); ++f) all.push_back(static_cast<int>(f));
    if (!detail::subgraph_connected(all, edges)) {
        rep.connected = false;
        rep.hereditary = false;
        issue("dual graph disconnected");
    }
    std::map<int, std::vector<int>> vertex_star;
    for (std::size_t f = 0; f < c.triangles.size(); ++f)
        for (int v : c.triangles[f]) vertex_star[v].push_back(static_cast<int>(f));
    for (const auto& [v, fs] : vertex_star) {
        if (!detail::subgraph_connected(fs, edges)) {
            rep.hereditary = false;
            issue("star of ray " + std::to_string(v) + " has disconnected dual graph");
        }
    }
    return rep;
}

/// One row-block of the constraint system.
struct Constraint {
    enum class Kind { Interior, Boundary };
    Kind kind;
    int facet_a;       // interior: smaller facet index; boundary: the facet
    int facet_b = -1;  // interior only
    Form form;         // degree-1 form vanishing on the wall
    int exponent;      // alpha(tau) + 1 >= 1
    FaceId face;       // sorted vertex pair naming the wall
};

/// Abstract graded constraint system, always in 3 variables here.
struct SplineProblem {
    int nvars = 3;
    int nfacets = 0;
    std::vector<Constraint> constraints;
    std::vector<std::vector<int>> facet_constraints;   // incident constraint ids per facet
    std::vector<int> facet_boundary_walls;             // through-origin boundary faces per facet
    std::vector<bool> facet_simplicial;                // facet is a (coned) simplex

    bool simplicial() const {
        for (bool s : facet_simplicial)
            if (!s) return false;
        return true;
    }

    std::vector<int> interior_ids() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < constraints.size(); ++i)
            if (constraints[i].kind == Constraint::Kind::Interior) out.push_back(static_cast<int>(i));
        return out;
    }

    long boundary_degree(int facet) const {
        if (facet < 0 || facet >= nfacets) throw std::out_of_range("unknown facet");
        long n = 0;
        for (int cid : facet_constraints[facet])
            if (constraints[cid].kind == Constraint::Kind::Interior) ++n;
        return n;
    }

    /// The two facets of st(tau) plus every constraint incident to either.
    struct StarDescriptor {
        std::array<int, 2> facets;
        std::vector<int> constraint_ids;
    };

    StarDescriptor star(int cid) const {
        if (cid < 0 || cid >= static_cast<int>(constraints.size()))
            throw std::out_of_range("unknown constraint");
        const auto& c = constraints[cid];
        if (c.kind != Constraint::Kind::Interior)
            throw std::invalid_argument("star: boundary constraint");
        StarDescriptor out;
        out.facets = {c.facet_a, c.facet_b};
        std::set<int> ids(facet_constraints[c.facet_a].begin(), facet_constraints[c.facet_a].end());
        ids.insert(facet_constraints[c.facet_b].begin(), facet_constraints[c.facet_b].end());
        out.constraint_ids.assign(ids.begin(), ids.end());
        return out;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(nfacets));
        for (const auto& c : constraints) {
            mix(c.kind == Constraint::Kind::Interior ? 1 : 2);
            mix(static_cast<std::uint64_t>(c.facet_a + 1));
            mix(static_cast<std::uint64_t>(c.facet_b + 2));
            mix(static_cast<std::uint64_t>(c.exponent));
            c.form.for_each([&](const Monomial& m, const Rational& v) {
                mix(m.key());
                mix(std::hash<std::string>{}(to_string(v)));
            });
        }
        return h;
    }
};

namespace detail {

inline void finalize_problem(SplineProblem& p) {
    p.facet_constraints.assign(p.nfacets, {});
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        p.facet_constraints[c.facet_a].push_back(static_cast<int>(i));
        if (c.kind == Constraint::Kind::Interior)
            p.facet_constraints[c.facet_b].push_back(static_cast<int>(i));
    }
    // Connectivity of the dual graph over interior constraints.
    if (p.nfacets > 1) {
        std::vector<std::vector<int>> adj(p.nfacets);
        for (const auto& c : p.constraints) {
            if (c.kind != Constraint::Kind::Interior) continue;
            adj[c.facet_a].push_back(c.facet_b);
            adj[c.facet_b].push_back(c.facet_a);
        }
        std::vector<bool> seen(p.nfacets, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
        }
        if (count != p.nfacets)
            throw std::invalid_argument("constraint dual graph is disconnected");
    }
}

}  // namespace detail

/// Cone a validated planar complex, turning each edge into a graded
/// constraint in 3 variables via the embedding (a, b) -> (1, a, b).
inline SplineProblem cone(const PlanarComplex& c, const Smoothness& a) {
    auto rep = validate(c);
    if (!rep.ok()) {
        std::string msg = "cone: validation failed";
        for (const auto& s : rep.issues) msg += "; " + s;
        throw std::invalid_argument(msg);
    }
    auto edges = edge_incidence(c);
    for (const auto& [f, alpha] : a.overrides)
        if (!edges.count(f))
            throw std::invalid_argument("smoothness override references a non-edge");

    SplineProblem p;
    p.nfacets = static_cast<int>(c.facets.size());
    p.facet_boundary_walls.assign(p.nfacets, 0);
    for (const auto& poly : c.facets) p.facet_simplicial.push_back(poly.size() == 3);

    auto cone_vec = [&](int v) {
        return std::vector<Rational>{Rational(1), c.vertices[v][0], c.vertices[v][1]};
    };
    for (const auto& [e, fs] : edges) {
        Form form = linear_form_vanishing_on({cone_vec(e.first), cone_vec(e.second)}, 3);
        if (fs.size() == 2) {
            int alpha = a.interior_alpha(e);
            if (alpha < 0)
                throw std::invalid_argument("interior face requires smoothness >= 0");
            Constraint cons{Constraint::Kind::Interior, std::min(fs[0], fs[1]),
                            std::max(fs[0], fs[1]), form, alpha + 1, e};
            p.constraints.push_back(std::move(cons));
        } else {
            p.facet_boundary_walls[fs[0]] += 1;
            int alpha = a.boundary_alpha(e);
            if (alpha < -1) throw std::invalid_argument("boundary smoothness below -1");
            if (alpha == -1) continue;
            Constraint cons{Constraint::Kind::Boundary, fs[0], -1, form, alpha + 1, e};
            p.constraints.push_back(std::move(cons));
        }
    }
    detail::finalize_problem(p);
    return p;
}

/// Constraint system of a central 3D star; interior constraints are the
/// walls shared by two cone facets.
inline SplineProblem star_problem(const CentralStar& c, const Smoothness& a) {
    auto rep = validate(c);
    if (!rep.ok()) {
        std::string msg = "star_problem: validation failed";
        for (const auto& s : rep.issues) msg += "; " + s;
        throw std::invalid_argument(msg);
    }
    auto edges = edge_incidence(c);
    for (const auto& [f, alpha] : a.overrides)
        if (!edges.count(f))
            throw std::invalid_argument(
                "smoothness override references a face that is not a through-origin wall");

    SplineProblem p;
    p.nfacets = static_cast<int>(c.triangles.size());
    p.facet_boundary_walls.assign(p.nfacets, 0);
    p.facet_simplicial.assign(p.nfacets, true);

    auto ray = [&](int v) {
        return std::vector<Rational>{c.vertices[v][0], c.vertices[v][1], c.vertices[v][2]};
    };
    for (const auto& [e, fs] : edges) {
        Form form = linear_form_vanishing_on({ray(e.first), ray(e.second)}, 3);
        if (fs.size() == 2) {
            int alpha = a.interior_alpha(e);
            if (alpha < 0)
                throw std::invalid_argument("interior face requires smoothness >= 0");
            Constraint cons{Constraint::Kind::Interior, std::min(fs[0], fs[1]),
                            std::max(fs[0], fs[1]), form, alpha + 1, e};
            p.constraints.push_back(std::move(cons));
        } else {
            p.facet_boundary_walls[fs[0]] += 1;
            int alpha = a.boundary_alpha(e);
            if (alpha < -1) throw std::invalid_argument("boundary smoothness below -1");
            if (alpha == -1) continue;
            Constraint cons{Constraint::Kind::Boundary, fs[0], -1, form, alpha + 1, e};
            p.constraints.push_back(std::move(cons));
        }
    }
    detail::finalize_problem(p);
    return p;
}

}  // namespace splinelab
