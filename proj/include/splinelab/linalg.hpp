#pragma once

#include <splinelab/modular.hpp>
#include <splinelab/rational.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace splinelab {

/// A sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<int, Rational>>;

namespace detail {

inline void add_scaled_row(SparseRow& dst, const SparseRow& src, const Rational& f) {
    if (f == 0) return;
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            Rational v = f * src[j].second;
            if (v != 0) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            Rational v = dst[i].second + f * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

/// In-place reduced row echelon form; returns pivot columns. Rows end up
/// sorted by pivot column with unit leading entries.
inline std::vector<int> rref(std::vector<SparseRow>& rows) {
    std::vector<int> pivots;
    std::vector<SparseRow> done;
    std::vector<SparseRow> work;
    for (auto& r : rows)
        if (!r.empty()) work.push_back(std::move(r));

    while (!work.empty()) {
        // Pick the row with the leftmost leading column, minimal bit size.
        std::size_t best = 0;
        for (std::size_t i = 1; i < work.size(); ++i) {
            int ci = work[i][0].first, cb = work[best][0].first;
            if (ci < cb || (ci == cb && bit_size(work[i][0].second) < bit_size(work[best][0].second)))
                best = i;
        }
        std::swap(work[best], work.back());
        SparseRow piv = std::move(work.back());
        work.pop_back();
        int pc = piv[0].first;
        Rational lead = piv[0].second;
        if (lead != 1)
            for (auto& [c, v] : piv) v /= lead;
        for (auto& r : done) {
            auto it = std::lower_bound(r.begin(), r.end(), pc,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != r.end() && it->first == pc) add_scaled_row(r, piv, -it->second);
        }
        for (std::size_t i = 0; i < work.size();) {
            if (work[i][0].first == pc) {
                add_scaled_row(work[i], piv, -work[i][0].second);
                if (work[i].empty()) {
                    std::swap(work[i], work.back());
                    work.pop_back();
                    continue;
                }
            }
            ++i;
        }
        pivots.push_back(pc);
        done.push_back(std::move(piv));
    }
    std::vector<std::size_t> order(done.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return done[a][0].first < done[b][0].first; });
    rows.clear();
    for (auto i : order) rows.push_back(std::move(done[i]));
    std::sort(pivots.begin(), pivots.end());
    return pivots;
}

}  // namespace detail

struct ModularRankResult {
    long rank = 0;
    bool agreement = true;
};

enum class RankMode { Exact, Certified };

/// Rank strategy: exact fraction-free elimination below the column
/// threshold, two-prime modular rank with exact fallback above it.
struct RankPolicy {
    RankMode mode = RankMode::Certified;
    long exact_column_threshold = 2000;
    std::uint64_t seed = 1;

    static RankPolicy exact() { return {RankMode::Exact, 0, 1}; }
    static RankPolicy certified(std::uint64_t seed = 1) { return {RankMode::Certified, 2000, seed}; }
};

class SparseMat {
  public:
    SparseMat() = default;
    SparseMat(long rows, long cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static SparseMat identity(long n) {
        SparseMat m(n, n);
        for (long i = 0; i < n; ++i) m.data_[i].emplace_back(static_cast<int>(i), Rational(1));
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    void set(long r, long c, const Rational& v) {
        check(r, c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), static_cast<int>(c),
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (v == 0)
                row.erase(it);
            else
                it->second = v;
        } else if (v != 0) {
            row.insert(it, {static_cast<int>(c), v});
        }
    }

    void add_to(long r, long c, const Rational& v) {
        if (v == 0) return;
        check(r, c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), static_cast<int>(c),
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second == 0) row.erase(it);
        } else {
            row.insert(it, {static_cast<int>(c), v});
        }
    }

    Rational get(long r, long c) const {
        check(r, c);
        const auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), static_cast<int>(c),
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return Rational(0);
    }

    const SparseRow& row(long r) const { return data_[r]; }
    SparseRow& row_mut(long r) { return data_[r]; }

    long nnz() const {
        long n = 0;
        for (const auto& r : data_) n += static_cast<long>(r.size());
        return n;
    }

    /// Copies the rows of `other` into this matrix starting at (row_off, col_off).
    void place_block(long row_off, long col_off, const SparseMat& other, const Rational& scale = 1) {
        if (scale == 0) return;
        for (long r = 0; r < other.rows_; ++r)
            for (const auto& [c, v] : other.data_[r]) add_to(row_off + r, col_off + c, scale * v);
    }

    SparseMat operator*(const SparseMat& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
        SparseMat out(rows_, rhs.cols_);
        for (long r = 0; r < rows_; ++r) {
            std::map<int, Rational> acc;
            for (const auto& [k, v] : data_[r])
                for (const auto& [c, w] : rhs.data_[k]) acc[c] += v * w;
            for (auto& [c, v] : acc)
                if (v != 0) out.data_[r].emplace_back(c, v);
        }
        return out;
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        if (static_cast<long>(x.size()) != cols_) throw std::invalid_argument("apply shape mismatch");
        std::vector<Rational> y(rows_, Rational(0));
        for (long r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    bool operator==(const SparseMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    long rank(const RankPolicy& policy = RankPolicy::exact()) const {
        if (policy.mode == RankMode::Exact || cols_ < policy.exact_column_threshold)
            return rank_exact();
        auto [p1, p2] = default_primes(policy.seed);
        auto res = modular_rank({p1, p2});
        if (!res.agreement) return rank_exact();
        return res.rank;
    }

    /// Fraction-free (Bareiss) elimination with lazily updated rows.
    long rank_exact() const {
        struct Row {
            std::vector<std::pair<int, Int>> e;
            int step = 0;  // index into the pivot history applied so far
        };
        std::vector<Row> work;
        work.reserve(data_.size());
        for (const auto& r : data_) {
            if (r.empty()) continue;
            Int lcm(1);
            for (const auto& [c, v] : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
            Row row;
            row.e.reserve(r.size());
            for (const auto& [c, v] : r) {
                Int z = v.get_num() * (lcm / v.get_den());
                row.e.emplace_back(c, std::move(z));
            }
            work.push_back(std::move(row));
        }

        std::vector<Int> pivots{Int(1)};  // pivots[k] after k elimination steps
        // Bucket rows by leading column.
        std::map<int, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < work.size(); ++i) buckets[work[i].e[0].first].push_back(i);

        auto normalize = [&](Row& r, int to_step) {
            if (r.step == to_step) return;
            // Rows that skipped steps scale by the ratio of skipped pivots.
            for (auto& [c, v] : r.e) {
                Int t = v * pivots[to_step];
                Int q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(),
                            pivots[r.step].get_mpz_t());
                if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
                v = std::move(q);
            }
            r.step = to_step;
        };

        long rank = 0;
        while (!buckets.empty()) {
            auto bucket_it = buckets.begin();
            auto idxs = std::move(bucket_it->second);
            buckets.erase(bucket_it);
            if (idxs.empty()) continue;

            int k = static_cast<int>(rank);  // steps completed so far
            std::size_t best = 0;
            for (std::size_t i = 1; i < idxs.size(); ++i)
                if (bit_size(work[idxs[i]].e[0].second) < bit_size(work[idxs[best]].e[0].second))
                    best = i;
            std::swap(idxs[0], idxs[best]);
            Row& piv = work[idxs[0]];
            normalize(piv, k);
            const Int piv_lead = piv.e[0].second;

            for (std::size_t i = 1; i < idxs.size(); ++i) {
                Row& r = work[idxs[i]];
                normalize(r, k);
                const Int r_lead = r.e[0].second;
                // r' = (piv_lead * r - r_lead * piv) / pivots[k]
                std::vector<std::pair<int, Int>> out;
                out.reserve(r.e.size() + piv.e.size());
                std::size_t a = 0, b = 0;
                while (a < r.e.size() || b < piv.e.size()) {
                    Int v;
                    int col;
                    if (b == piv.e.size() || (a < r.e.size() && r.e[a].first < piv.e[b].first)) {
                        col = r.e[a].first;
                        v = piv_lead * r.e[a].second;
                        ++a;
                    } else if (a == r.e.size() || piv.e[b].first < r.e[a].first) {
                        col = piv.e[b].first;
                        v = -r_lead * piv.e[b].second;
                        ++b;
                    } else {
                        col = r.e[a].first;
                        v = piv_lead * r.e[a].second - r_lead * piv.e[b].second;
                        ++a;
                        ++b;
                    }
                    if (v == 0) continue;
                    Int q, rem;
                    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(),
                                pivots[k].get_mpz_t());
                    if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
                    out.emplace_back(col, std::move(q));
                }
                r.e = std::move(out);
                r.step = k + 1;
                if (!r.e.empty()) buckets[r.e[0].first].push_back(idxs[i]);
            }
            pivots.push_back(piv_lead);
            ++rank;
        }
        return rank;
    }

    long rank_mod(std::uint64_t p) const {
        std::vector<std::vector<std::uint64_t>> dense(rows_,
                                                      std::vector<std::uint64_t>(cols_, 0));
        for (long r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) dense[r][c] = rational_mod(v, p);
        return rank_mod_p_dense(dense, static_cast<int>(cols_), p);
    }

    /// Max of the ranks mod each prime: a lower bound for the rational rank,
    /// equal to it unless every prime divides a common nonzero minor.
    ModularRankResult modular_rank(std::vector<std::uint64_t> primes) const {
        if (primes.empty()) throw std::invalid_argument("modular_rank: empty prime list");
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (primes[i] <= (1ull << 30)) throw std::invalid_argument("modular_rank: prime too small");
            for (std::size_t j = i + 1; j < primes.size(); ++j)
                if (primes[i] == primes[j]) throw std::invalid_argument("modular_rank: repeated prime");
        }
        ModularRankResult res;
        bool first = true;
        for (auto p : primes) {
            long rk = -1;
            // A prime hitting a denominator is replaced deterministically.
            for (int attempt = 0; attempt < 64 && rk < 0; ++attempt) {
                try {
                    rk = rank_mod(p);
                } catch (const BadPrime&) {
                    p = next_prime_above(p);
                }
            }
            if (rk < 0) throw std::runtime_error("modular_rank: no usable prime found");
            if (first) {
                res.rank = rk;
                first = false;
            } else {
                if (rk != res.rank) res.agreement = false;
                res.rank = std::max(res.rank, rk);
            }
        }
        return res;
    }

    std::vector<SparseRow> rows_copy() const { return data_; }

  private:
    void check(long r, long c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index out of range");
    }

    long rows_ = 0;
    long cols_ = 0;
    std::vector<SparseRow> data_;
};

/// A subspace of Q^ambient stored as the RREF of a spanning set.
class Subspace {
  public:
    explicit Subspace(long ambient) : ambient_(ambient) {}
    Subspace(long ambient, std::vector<SparseRow> spanning) : ambient_(ambient) {
        for (const auto& r : spanning)
            if (!r.empty() && r.back().first >= ambient)
                throw std::invalid_argument("subspace vector exceeds ambient dimension");
        rows_ = std::move(spanning);
        detail::rref(rows_);
    }

    long ambient_dim() const { return ambient_; }
    long dim() const { return static_cast<long>(rows_.size()); }
    const std::vector<SparseRow>& basis_rows() const { return rows_; }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

    bool contains(const SparseRow& v) const {
        SparseRow w = v;
        for (const auto& r : rows_) {
            if (w.empty()) return true;
            auto it = std::lower_bound(w.begin(), w.end(), r[0].first,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != w.end() && it->first == r[0].first) detail::add_scaled_row(w, r, -it->second);
        }
        return w.empty();
    }

  private:
    long ambient_;
    std::vector<SparseRow> rows_;
};

/// Dimension of the span of the union of the given subspaces.
inline long subspace_sum_dim(const std::vector<Subspace>& bases) {
    if (bases.empty()) return 0;
    long ambient = bases[0].ambient_dim();
    std::vector<SparseRow> all;
    for (const auto& b : bases) {
        if (b.ambient_dim() != ambient)
            throw std::invalid_argument("subspace_sum_dim: mismatched ambient dimension");
        for (const auto& r : b.basis_rows()) all.push_back(r);
    }
    auto piv = detail::rref(all);
    return static_cast<long>(piv.size());
}

/// Basis of the right null space, returned in RREF.
inline Subspace kernel_basis(const SparseMat& m) {
    auto rows = m.rows_copy();
    auto pivots = detail::rref(rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<SparseRow> kernel;
    for (long free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        SparseRow v;
        // Entry at each pivot row's column: negated coefficient of free_col.
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            auto it = std::lower_bound(r.begin(), r.end(), static_cast<int>(free_col),
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != r.end() && it->first == free_col) v.emplace_back(pivots[i], -it->second);
        }
        v.emplace_back(static_cast<int>(free_col), Rational(1));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        kernel.push_back(std::move(v));
    }
    return Subspace(m.cols(), std::move(kernel));
}

/// Coefficients (constant term first) of the unique degree-`degree`
/// polynomial through the given points.
inline std::vector<Rational> interpolate_poly(const std::vector<std::pair<long, Rational>>& points,
                                              long degree) {
    if (static_cast<long>(points.size()) != degree + 1)
        throw std::invalid_argument("interpolate_poly: need exactly degree+1 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolate_poly: duplicate abscissae");

    std::vector<Rational> coeffs(degree + 1, Rational(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        // Lagrange basis polynomial for node i, expanded.
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            Rational xj(points[j].first);
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= xj * basis[k];
            }
            basis = std::move(next);
            denom *= Rational(points[i].first) - xj;
        }
        for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] += points[i].second * basis[k] / denom;
    }
    return coeffs;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace splinelab
