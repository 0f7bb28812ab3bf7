#pragma once

#include <splinelab/linalg.hpp>
#include <splinelab/rational.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace splinelab {

constexpr int kMaxVars = 4;

/// A monomial in up to four variables, packed exponents.
struct Monomial {
    int nvars = 0;
    std::array<int, kMaxVars> e{0, 0, 0, 0};

    int degree() const {
        int d = 0;
        for (int i = 0; i < nvars; ++i) d += e[i];
        return d;
    }

    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (int i = 0; i < nvars; ++i) k = (k << 16) | static_cast<std::uint64_t>(e[i]);
        return k;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial m = *this;
        for (int i = 0; i < nvars; ++i) m.e[i] += o.e[i];
        return m;
    }

    bool operator==(const Monomial& o) const { return nvars == o.nvars && e == o.e; }
};

inline Monomial make_monomial(std::initializer_list<int> exps) {
    Monomial m;
    m.nvars = static_cast<int>(exps.size());
    if (m.nvars < 1 || m.nvars > kMaxVars) throw std::invalid_argument("1 to 4 variables supported");
    int i = 0;
    for (int v : exps) m.e[i++] = v;
    return m;
}

/// Graded lex with x0 > x1 > ...: higher total degree first, then lex.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = 0; i < a.nvars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

/// The full monomial basis of one graded piece, in a fixed deterministic
/// order (descending grlex), with index lookup.
struct GradedPieceBasis {
    int nvars = 0;
    int degree = 0;
    std::vector<Monomial> monomials;
    std::unordered_map<std::uint64_t, int> index;

    long size() const { return static_cast<long>(monomials.size()); }

    int index_of(const Monomial& m) const {
        auto it = index.find(m.key());
        if (it == index.end()) throw std::out_of_range("monomial not in graded piece");
        return it->second;
    }
};

namespace detail {

inline void enumerate_monomials(int nvars, int var, int rem, Monomial& cur,
                                std::vector<Monomial>& out) {
    if (var == nvars - 1) {
        cur.e[var] = rem;
        out.push_back(cur);
        return;
    }
    for (int k = rem; k >= 0; --k) {
        cur.e[var] = k;
        enumerate_monomials(nvars, var + 1, rem - k, cur, out);
    }
    cur.e[var] = 0;
}

}  // namespace detail

/// Memoized; concurrent reads with single-writer insertion.
inline std::shared_ptr<const GradedPieceBasis> monomial_basis(int nvars, int d) {
    if (nvars < 1 || nvars > kMaxVars)
        throw std::invalid_argument("monomial_basis: 1 to 4 variables supported");
    if (d < 0) throw std::invalid_argument("monomial_basis: negative degree");

    static std::map<std::pair<int, int>, std::shared_ptr<const GradedPieceBasis>> cache;
    static std::shared_mutex mutex;
    {
        std::shared_lock lock(mutex);
        auto it = cache.find({nvars, d});
        if (it != cache.end()) return it->second;
    }
    auto basis = std::make_shared<GradedPieceBasis>();
    basis->nvars = nvars;
    basis->degree = d;
    Monomial cur;
    cur.nvars = nvars;
    detail::enumerate_monomials(nvars, 0, d, cur, basis->monomials);
    basis->index.reserve(basis->monomials.size());
    for (std::size_t i = 0; i < basis->monomials.size(); ++i)
        basis->index.emplace(basis->monomials[i].key(), static_cast<int>(i));

    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(nvars, d), basis);
    return it->second;
}

/// A homogeneous polynomial; all terms share the stated degree.
class Form {
  public:
    Form() = default;
    Form(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

    static Form one(int nvars) {
        Form f(nvars, 0);
        Monomial m;
        m.nvars = nvars;
        f.terms_[m.key()] = {m, Rational(1)};
        return f;
    }

    static Form variable(int nvars, int var) {
        Form f(nvars, 1);
        Monomial m;
        m.nvars = nvars;
        m.e[var] = 1;
        f.terms_[m.key()] = {m, Rational(1)};
        return f;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.nvars != nvars_ || m.degree() != degree_)
            throw std::invalid_argument("term does not match form degree");
        if (c == 0) return;
        auto it = terms_.find(m.key());
        if (it == terms_.end()) {
            terms_[m.key()] = {m, c};
        } else {
            it->second.second += c;
            if (it->second.second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m.key());
        return it == terms_.end() ? Rational(0) : it->second.second;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [k, tv] : terms_) f(tv.first, tv.second);
    }

    Form operator*(const Form& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("form product variable mismatch");
        Form out(nvars_, degree_ + o.degree_);
        for (const auto& [ka, ta] : terms_)
            for (const auto& [kb, tb] : o.terms_) out.add_term(ta.first * tb.first, ta.second * tb.second);
        return out;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("evaluate: wrong point dimension");
        Rational acc(0);
        for (const auto& [k, tv] : terms_) {
            Rational t = tv.second;
            for (int i = 0; i < nvars_; ++i)
                for (int j = 0; j < tv.first.e[i]; ++j) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<Monomial, Rational>*> ts;
        for (const auto& [k, tv] : terms_) ts.push_back(&tv);
        std::sort(ts.begin(), ts.end(),
                  [](auto* a, auto* b) { return grlex_less(b->first, a->first); });
        std::string out;
        for (auto* t : ts) {
            if (!out.empty()) out += " + ";
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (t->first.e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (t->first.e[i] > 1) mono += "^" + std::to_string(t->first.e[i]);
            }
            if (mono.empty())
                out += to_string(t->second);
            else if (t->second == 1)
                out += mono;
            else
                out += to_string(t->second) + "*" + mono;
        }
        return out;
    }

    bool operator==(const Form& o) const {
        if (nvars_ != o.nvars_ || degree_ != o.degree_ || terms_.size() != o.terms_.size())
            return false;
        for (const auto& [k, tv] : terms_) {
            auto it = o.terms_.find(k);
            if (it == o.terms_.end() || it->second.second != tv.second) return false;
        }
        return true;
    }

  private:
    int nvars_ = 0;
    int degree_ = 0;
    std::map<std::uint64_t, std::pair<Monomial, Rational>> terms_;
};

inline Form power(const Form& f, int k) {
    if (k < 0) throw std::invalid_argument("power: negative exponent");
    Form acc = Form::one(f.nvars());
    for (int i = 0; i < k; ++i) acc = acc * f;
    return acc;
}

/// The degree-1 form with coprime integer coefficients, first nonzero
/// coefficient positive, vanishing on every given vector. The vectors must
/// span a hyperplane through the origin.
inline Form linear_form_vanishing_on(const std::vector<std::vector<Rational>>& vectors, int nvars) {
    if (nvars < 2 || nvars > kMaxVars) throw std::invalid_argument("2 to 4 variables supported");
    SparseMat m(static_cast<long>(vectors.size()), nvars);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (static_cast<int>(vectors[r].size()) != nvars)
            throw std::invalid_argument("vector has wrong dimension");
        for (int c = 0; c < nvars; ++c) m.set(static_cast<long>(r), c, vectors[r][c]);
    }
    auto kernel = kernel_basis(m);
    if (kernel.dim() != 1)
        throw std::invalid_argument("vectors do not span a hyperplane (kernel dimension " +
                                    std::to_string(kernel.dim()) + ")");
    std::vector<Rational> n(nvars, Rational(0));
    for (const auto& [c, v] : kernel.basis_rows()[0]) n[c] = v;

    Int lcm(1), gcd(0);
    for (const auto& q : n) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> zi(nvars);
    for (int i = 0; i < nvars; ++i) {
        zi[i] = n[i].get_num() * (lcm / n[i].get_den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), zi[i].get_mpz_t());
    }
    int first = 0;
    while (zi[first] == 0) ++first;
    if (zi[first] < 0) gcd = -gcd;
    Form f(nvars, 1);
    for (int i = 0; i < nvars; ++i) {
        if (zi[i] == 0) continue;
        Monomial mono;
        mono.nvars = nvars;
        mono.e[i] = 1;
        f.add_term(mono, Rational(zi[i] / gcd));
    }
    return f;
}

/// Matrix of the multiplication map S_d -> S_{d + deg f}, g -> f*g, in the
/// fixed monomial bases.
inline SparseMat mult_matrix(const Form& f, int d) {
    if (d < 0) throw std::invalid_argument("mult_matrix: negative degree");
    auto domain = monomial_basis(f.nvars(), d);
    auto codomain = monomial_basis(f.nvars(), d + f.degree());
    SparseMat m(codomain->size(), domain->size());
    for (long c = 0; c < domain->size(); ++c) {
        f.for_each([&](const Monomial& mono, const Rational& coeff) {
            m.add_to(codomain->index_of(domain->monomials[c] * mono), c, coeff);
        });
    }
    return m;
}

/// Coefficient vector of f*g for g given as coefficients in the degree-d
/// basis; result is in the degree d + deg f basis.
inline void mult_apply_segment(const Form& f, int d, const std::vector<Rational>& g,
                               std::vector<Rational>& out) {
    auto domain = monomial_basis(f.nvars(), d);
    auto codomain = monomial_basis(f.nvars(), d + f.degree());
    out.assign(codomain->size(), Rational(0));
    for (long c = 0; c < domain->size(); ++c) {
        if (g[c] == 0) continue;
        f.for_each([&](const Monomial& mono, const Rational& coeff) {
            out[codomain->index_of(domain->monomials[c] * mono)] += coeff * g[c];
        });
    }
}

}  // namespace splinelab
