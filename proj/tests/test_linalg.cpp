#include <splinelab/linalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace splinelab;

namespace {

SparseMat from_rows(const std::vector<std::vector<long>>& rows, long cols) {
    SparseMat m(static_cast<long>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (long c = 0; c < cols; ++c)
            if (rows[r][c] != 0) m.set(static_cast<long>(r), c, Rational(rows[r][c]));
    return m;
}

long rank_dense_oracle(const SparseMat& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (long r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    long rank = 0;
    long nr = m.rows(), nc = m.cols();
    for (long c = 0; c < nc && rank < nr; ++c) {
        long piv = -1;
        for (long r = rank; r < nr; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (long r = rank + 1; r < nr; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (long j = c; j < nc; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("rank on basic matrices") {
    CHECK(SparseMat::identity(3).rank_exact() == 3);
    CHECK(from_rows({{1, 2}, {2, 4}}, 2).rank_exact() == 1);
    // The 1x3 coefficient row (1, 2, 1) of the colon-ideal matrix at (3,3,2,2).
    CHECK(from_rows({{1, 2, 1}}, 3).rank_exact() == 1);
    CHECK(SparseMat(2, 3).rank_exact() == 0);
}

TEST_CASE("kernel bases") {
    CHECK(kernel_basis(SparseMat::identity(2)).dim() == 0);
    CHECK(kernel_basis(SparseMat(2, 3)).dim() == 3);
    auto k = kernel_basis(from_rows({{1, 2, 1}}, 3));
    REQUIRE(k.dim() == 2);
    // Solved by hand: kernel of (1,2,1) is spanned by (-2,1,0) and (-1,0,1).
    SparseRow v1{{0, Rational(-2)}, {1, Rational(1)}};
    SparseRow v2{{0, Rational(-1)}, {2, Rational(1)}};
    CHECK(k.contains(v1));
    CHECK(k.contains(v2));
}

TEST_CASE("rank plus kernel dimension equals columns, kernel vectors annihilate") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        long rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        SparseMat m(rows, cols);
        for (long r = 0; r < rows; ++r)
            for (long c = 0; c < cols; ++c)
                if (rng() % 3 == 0)
                    m.set(r, c, make_rational(static_cast<long>(rng() % 11) - 5,
                                              1 + static_cast<long>(rng() % 4)));
        long rank = m.rank_exact();
        CHECK(rank == rank_dense_oracle(m));
        auto ker = kernel_basis(m);
        CHECK(rank + ker.dim() == cols);
        for (const auto& kv : ker.basis_rows()) {
            std::vector<Rational> x(cols, Rational(0));
            for (const auto& [c, v] : kv) x[c] = v;
            for (const auto& y : m.apply(x)) CHECK(y == 0);
        }
    }
}

TEST_CASE("subspace sums are order independent and idempotent") {
    SparseRow e1{{0, Rational(1)}};
    SparseRow e2{{1, Rational(1)}};
    Subspace s1(3, {e1});
    Subspace s2(3, {e2});
    CHECK(subspace_sum_dim({s1, s1}) == 1);
    CHECK(subspace_sum_dim({s1, s2}) == 2);
    CHECK(subspace_sum_dim({s2, s1}) == 2);
    CHECK(subspace_sum_dim({s1, s2, s1, s2}) == 2);
    Subspace other(4, {e1});
    CHECK_THROWS_AS(subspace_sum_dim({s1, other}), std::invalid_argument);
}

TEST_CASE("modular rank matches exact rank") {
    auto [p1, p2] = default_primes(1);
    REQUIRE(p1 > (1ull << 30));
    REQUIRE(p2 > p1);

    CHECK(SparseMat::identity(3).modular_rank({p1, p2}).rank == 3);
    auto row = from_rows({{1, 2, 1}}, 3);
    auto res = row.modular_rank({p1, p2});
    CHECK(res.rank == 1);
    CHECK(res.agreement);

    std::mt19937_64 rng(99);
    SparseMat big(50, 50);
    for (long r = 0; r < 50; ++r)
        for (long c = 0; c < 50; ++c)
            if (rng() % 2 == 0)
                big.set(r, c, make_rational(static_cast<long>(rng() % 2001) - 1000,
                                            1 + static_cast<long>(rng() % 9)));
    CHECK(big.modular_rank({p1, p2}).rank == big.rank_exact());

    CHECK_THROWS_AS(row.modular_rank({}), std::invalid_argument);
    CHECK_THROWS_AS(row.modular_rank({5}), std::invalid_argument);
    CHECK_THROWS_AS(row.modular_rank({p1, p1}), std::invalid_argument);
}

TEST_CASE("certified policy falls back consistently") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        SparseMat m(6, 6);
        for (long r = 0; r < 6; ++r)
            for (long c = 0; c < 6; ++c)
                if (rng() % 2 == 0) m.set(r, c, Rational(static_cast<long>(rng() % 9) - 4));
        RankPolicy tiny = RankPolicy::certified();
        tiny.exact_column_threshold = 0;  // force the modular path
        CHECK(m.rank(tiny) == m.rank_exact());
    }
}

TEST_CASE("polynomial interpolation") {
    auto q = interpolate_poly({{0, Rational(1)}, {1, Rational(3)}, {2, Rational(7)}}, 2);
    REQUIRE(q.size() == 3);
    CHECK(q[0] == 1);
    CHECK(q[1] == 1);
    CHECK(q[2] == 1);

    auto lin = interpolate_poly({{0, make_rational(5, 3)}, {1, make_rational(5, 3)}}, 1);
    CHECK(lin[0] == make_rational(5, 3));
    CHECK(lin[1] == 0);

    // HF tail of the uniform polytopal example at r=1: 2d^2 - 6d + 10.
    auto hp = interpolate_poly({{8, Rational(90)}, {9, Rational(118)}, {10, Rational(150)}}, 2);
    CHECK(hp[2] == 2);
    CHECK(hp[1] == -6);
    CHECK(hp[0] == 10);

    CHECK_THROWS_AS(interpolate_poly({{0, Rational(1)}, {0, Rational(2)}}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(interpolate_poly({{0, Rational(1)}}, 2), std::invalid_argument);
}

TEST_CASE("interpolation reproduces its nodes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        long deg = rng() % 4;
        std::vector<std::pair<long, Rational>> pts;
        for (long i = 0; i <= deg; ++i)
            pts.emplace_back(3 * i - 2, make_rational(static_cast<long>(rng() % 19) - 9,
                                                      1 + static_cast<long>(rng() % 5)));
        auto coeffs = interpolate_poly(pts, deg);
        for (const auto& [x, y] : pts) CHECK(eval_poly(coeffs, Rational(x)) == y);
    }
}
