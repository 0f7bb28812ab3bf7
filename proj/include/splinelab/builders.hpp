#pragma once

#include <splinelab/complexes.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace splinelab {

/// The four-facet polytopal complex of the worked polytopal example: inner
/// triangle plus three trapezoids.
inline PlanarComplex build_q_example() {
    PlanarComplex c;
    c.vertices = {
        {Rational(0), Rational(1)},  {Rational(0), Rational(3)},  {Rational(-3), Rational(-2)},
        {Rational(3), Rational(-2)}, {Rational(-1), Rational(-1)}, {Rational(1), Rational(-1)},
    };
    c.facets = {{0, 4, 5}, {0, 1, 2, 4}, {0, 5, 3, 1}, {2, 3, 5, 4}};
    return c;
}

/// Its triangulation with the mixed smoothness of the worked simplicial
/// example: 2 on the center triangle, 3 on the six spokes.
inline std::pair<PlanarComplex, Smoothness> build_delta_example() {
    PlanarComplex c;
    c.vertices = build_q_example().vertices;
    c.facets = {{0, 4, 5}, {0, 1, 2}, {0, 2, 4}, {0, 5, 1}, {5, 3, 1}, {4, 3, 5}, {4, 2, 3}};
    Smoothness a;
    a.interior_default = 3;
    a.boundary_default = -1;
    a.overrides[face_id(0, 4)] = 2;
    a.overrides[face_id(4, 5)] = 2;
    a.overrides[face_id(0, 5)] = 2;
    return {c, a};
}

/// Centrally triangulated octahedron; a nonzero seed perturbs the boundary
/// vertices by small rationals.
inline CentralStar build_octahedron(std::uint64_t seed = 0) {
    CentralStar s;
    s.vertices = {
        {Rational(1), Rational(0), Rational(0)},  {Rational(-1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},  {Rational(0), Rational(-1), Rational(0)},
        {Rational(0), Rational(0), Rational(1)},  {Rational(0), Rational(0), Rational(-1)},
    };
    s.triangles = {{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5},
                   {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}};
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (auto& v : s.vertices)
            for (auto& coord : v)
                coord += make_rational(static_cast<long>(rng() % 5) - 2, 16);
    }
    return s;
}

/// Upper four triangles of the octahedron: an incomplete central star.
inline CentralStar build_hemisphere() {
    CentralStar s = build_octahedron();
    s.triangles = {{0, 2, 4}, {0, 3, 4}, {1, 2, 4}, {1, 3, 4}};
    return s;
}

namespace detail {

/// Exact rational unit-circle directions in angular order, via the
/// half-angle parametrization t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
inline const std::vector<Point2>& circle_directions() {
    static const std::vector<Point2> dirs = [] {
        std::vector<std::pair<long, long>> upper = {
            {0, 1}, {1, 8}, {1, 4}, {3, 8}, {1, 2}, {5, 8}, {3, 4}, {7, 8},
            {1, 1}, {5, 4}, {3, 2}, {2, 1}, {3, 1}, {5, 1}, {10, 1}};
        std::vector<Point2> out;
        auto point = [](const Rational& t) -> Point2 {
            Rational denom = 1 + t * t;
            return {(1 - t * t) / denom, 2 * t / denom};
        };
        for (const auto& [n, d] : upper) out.push_back(point(make_rational(n, d)));
        out.push_back({Rational(-1), Rational(0)});
        for (std::size_t i = upper.size() - 1; i >= 1; --i)
            out.push_back(point(make_rational(-upper[i].first, upper[i].second)));
        return out;
    }();
    return dirs;
}

}  // namespace detail

/// An n-gon ring: an inner polygon of exact rational near-regular vertices
/// inside its doubled copy, joined by n quadrilaterals.
inline PlanarComplex build_ngon_ring(int n, const std::vector<Rational>& perturb = {}) {
    if (n < 3) throw std::invalid_argument("build_ngon_ring requires n >= 3");
    if (!perturb.empty() && static_cast<int>(perturb.size()) != 2 * n)
        throw std::invalid_argument("perturbation wants 2n rational offsets");
    const auto& dirs = detail::circle_directions();
    int total = static_cast<int>(dirs.size());
    PlanarComplex c;
    for (int k = 0; k < n; ++k) {
        const Point2& d = dirs[(k * total) / n];
        c.vertices.push_back(d);
    }
    for (int k = 0; k < n; ++k) {
        Point2 outer = {2 * c.vertices[k][0], 2 * c.vertices[k][1]};
        if (!perturb.empty()) {
            outer[0] += perturb[2 * k];
            outer[1] += perturb[2 * k + 1];
        }
        c.vertices.push_back(outer);
    }
    std::vector<int> inner;
    for (int k = 0; k < n; ++k) inner.push_back(k);
    c.facets.push_back(inner);
    for (int k = 0; k < n; ++k) {
        int k1 = (k + 1) % n;
        c.facets.push_back({k1, k, n + k, n + k1});
    }
    auto rep = validate(c);
    if (!rep.ok()) throw std::invalid_argument("build_ngon_ring: degenerate perturbation");
    return c;
}

/// The mirror construction: a polygon A with distinguished edge tau,
/// reflected across the x-axis, with a quadrilateral over every other edge.
/// Requires tau parallel to the x-axis and A strictly between the x-axis
/// and aff(tau); rejects degenerate sigma quadrilaterals.
inline PlanarComplex build_reflection(const std::vector<Point2>& a_vertices, int tau_a, int tau_b) {
    int m = static_cast<int>(a_vertices.size());
    if (m < 3) throw std::invalid_argument("build_reflection: polygon too small");
    if (tau_a < 0 || tau_b < 0 || tau_a >= m || tau_b >= m)
        throw std::invalid_argument("build_reflection: bad tau indices");
    bool adjacent = (tau_b == (tau_a + 1) % m) || (tau_a == (tau_b + 1) % m);
    if (!adjacent) throw std::invalid_argument("build_reflection: tau is not an edge of A");
    if (!geo::polygon_strictly_convex(a_vertices))
        throw std::invalid_argument("build_reflection: A is not strictly convex");

    const Rational h = a_vertices[tau_a][1];
    if (a_vertices[tau_b][1] != h)
        throw std::invalid_argument("build_reflection: tau is not parallel to the mirror axis");
    if (h <= 0) throw std::invalid_argument("build_reflection: A must lie above the mirror axis");
    for (int i = 0; i < m; ++i) {
        if (i == tau_a || i == tau_b) continue;
        if (!(a_vertices[i][1] > 0 && a_vertices[i][1] < h))
            throw std::invalid_argument(
                "build_reflection: A must lie strictly between the mirror axis and aff(tau)");
    }
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        if ((i == tau_a && j == tau_b) || (i == tau_b && j == tau_a)) continue;
        if (a_vertices[i][0] == a_vertices[j][0])
            throw std::invalid_argument("build_reflection: degenerate mirror quadrilateral (edge " +
                                        std::to_string(i) + ")");
    }

    PlanarComplex c;
    c.vertices = a_vertices;
    for (const auto& v : a_vertices) c.vertices.push_back({v[0], -v[1]});
    std::vector<int> a_facet, b_facet;
    for (int i = 0; i < m; ++i) a_facet.push_back(i);
    for (int i = m - 1; i >= 0; --i) b_facet.push_back(m + i);
    c.facets.push_back(a_facet);
    c.facets.push_back(b_facet);
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        if ((i == tau_a && j == tau_b) || (i == tau_b && j == tau_a)) continue;
        c.facets.push_back({j, i, m + i, m + j});
    }
    auto rep = validate(c);
    if (!rep.ok()) {
        std::string msg = "build_reflection: invalid result";
        for (const auto& s : rep.issues) msg += "; " + s;
        throw std::invalid_argument(msg);
    }
    return c;
}

/// Do the forms of the non-tau walls restrict to pairwise distinct forms on
/// the homogenized mirror plane?
inline bool reflection_mirror_forms_distinct(const std::vector<Point2>& a_vertices, int tau_a,
                                             int tau_b) {
    int m = static_cast<int>(a_vertices.size());
    std::vector<std::pair<Rational, Rational>> restricted;  // (x0, x1) coefficients
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        if ((i == tau_a && j == tau_b) || (i == tau_b && j == tau_a)) continue;
        Form f = linear_form_vanishing_on(
            {{Rational(1), a_vertices[i][0], a_vertices[i][1]},
             {Rational(1), a_vertices[j][0], a_vertices[j][1]}},
            3);
        Rational c0 = f.coeff(make_monomial({1, 0, 0}));
        Rational c1 = f.coeff(make_monomial({0, 1, 0}));
        restricted.emplace_back(c0, c1);
    }
    for (std::size_t i = 0; i < restricted.size(); ++i)
        for (std::size_t j = i + 1; j < restricted.size(); ++j) {
            auto [p0, p1] = restricted[i];
            auto [q0, q1] = restricted[j];
            if (p0 * q1 - p1 * q0 == 0) return false;
        }
    return true;
}

/// The standard mirror fixture: a symmetric trapezoid under its top edge.
inline PlanarComplex build_reflection_trapezoid() {
    std::vector<Point2> a = {{Rational(-2), Rational(2)},
                             {Rational(2), Rational(2)},
                             {Rational(1), Rational(1)},
                             {Rational(-1), Rational(1)}};
    return build_reflection(a, 0, 1);
}

struct RandomFan {
    PlanarComplex complex;
    Smoothness alpha;
    bool closed = false;
};

/// A deterministic random triangular fan around the origin (closed) or an
/// open fan strip, with mixed smoothness drawn from [0, max_alpha].
inline RandomFan build_random_fan(std::uint64_t seed, int m, int max_alpha) {
    if (m < 2) throw std::invalid_argument("build_random_fan requires m >= 2");
    if (max_alpha < 0) throw std::invalid_argument("build_random_fan: negative smoothness cap");
    std::mt19937_64 rng(seed);
    RandomFan out;
    out.closed = m >= 3 && (rng() % 2 == 0);

    const auto& dirs = detail::circle_directions();
    int total = static_cast<int>(dirs.size());
    PlanarComplex& c = out.complex;
    c.vertices.push_back({Rational(0), Rational(0)});

    int rim = out.closed ? m : m + 1;
    for (int k = 0; k < rim; ++k) {
        int idx;
        if (out.closed) {
            idx = (k * total) / rim;
            if (k > 0 && rng() % 2 == 0) idx = std::min(idx + 1, ((k + 1) * total) / rim - 1);
        } else {
            idx = (k * (total / 2 - 1)) / rim;
            if (k > 0 && rng() % 2 == 0)
                idx = std::min(idx + 1, ((k + 1) * (total / 2 - 1)) / rim - 1);
        }
        idx = std::max(idx, 0);
        Rational radius = 1 + make_rational(static_cast<long>(rng() % 5), 4);
        c.vertices.push_back({dirs[idx][0] * radius, dirs[idx][1] * radius});
    }
    for (int k = 0; k < m; ++k) {
        int u = 1 + k;
        int v = 1 + (out.closed ? (k + 1) % rim : k + 1);
        c.facets.push_back({0, u, v});
    }

    Smoothness& a = out.alpha;
    a.interior_default = 0;
    a.boundary_default = -1;
    auto edges = edge_incidence(c);
    for (const auto& [e, fs] : edges) {
        if (fs.size() == 2) {
            a.overrides[e] = static_cast<int>(rng() % (max_alpha + 1));
        } else if (rng() % 4 == 0) {
            a.overrides[e] = static_cast<int>(rng() % 2);
        }
    }
    auto rep = validate(c);
    if (!rep.ok()) throw std::logic_error("build_random_fan produced an invalid complex");
    return out;
}

}  // namespace splinelab
