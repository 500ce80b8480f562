#pragma once

#include <optional>

#include "omq/omega_engine.hpp"
#include "omq/pbt.hpp"

namespace omq {

namespace detail {
template <>
struct KeyLessFor<Pbt> {
    using type = PbtLess;
};

/// Tree-level dendriform products, by the standard recursions on the
/// decompositions t = t_l v t_r, s = s_l v s_r:
///   t < s = t_l v (t_r * s),   t > s = (t * s_l) v s_r,   * = < + >
/// with 1 * x = x = x * 1 inside the recursion.
const Expansion<Pbt>& dend_mul_expansion(Pbt a, Pbt b);

inline const Expansion<Pbt>& dend_prec_expansion(Pbt a, Pbt b) {
    static std::mutex mu;
    static std::map<std::pair<Pbt, Pbt>, Expansion<Pbt>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    std::vector<Pbt> raw;
    for (const auto& [t, m] : dend_mul_expansion(a->right(), b))
        for (long long i = 0; i < m; ++i) raw.push_back(pbt_node(a->left(), t));
    Expansion<Pbt> exp = collect(std::move(raw));
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(a, b), std::move(exp)).first->second;
}

inline const Expansion<Pbt>& dend_succ_expansion(Pbt a, Pbt b) {
    static std::mutex mu;
    static std::map<std::pair<Pbt, Pbt>, Expansion<Pbt>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    std::vector<Pbt> raw;
    for (const auto& [t, m] : dend_mul_expansion(a, b->left()))
        for (long long i = 0; i < m; ++i) raw.push_back(pbt_node(t, b->right()));
    Expansion<Pbt> exp = collect(std::move(raw));
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(a, b), std::move(exp)).first->second;
}

inline const Expansion<Pbt>& dend_mul_expansion(Pbt a, Pbt b) {
    static std::mutex mu;
    static std::map<std::pair<Pbt, Pbt>, Expansion<Pbt>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    Expansion<Pbt> exp;
    if (a->is_leaf()) {
        exp.emplace_back(b, 1);
    } else if (b->is_leaf()) {
        exp.emplace_back(a, 1);
    } else {
        std::map<Pbt, long long, PbtLess> acc;
        for (const auto& [k, m] : dend_prec_expansion(a, b)) acc[k] += m;
        for (const auto& [k, m] : dend_succ_expansion(a, b)) acc[k] += m;
        exp.assign(acc.begin(), acc.end());
    }
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(a, b), std::move(exp)).first->second;
}

/// a <- b = b > a - a < b, as a signed expansion.
inline const Expansion<Pbt>& dend_prelie_expansion(Pbt a, Pbt b) {
    static std::mutex mu;
    static std::map<std::pair<Pbt, Pbt>, Expansion<Pbt>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    std::map<Pbt, long long, PbtLess> acc;
    for (const auto& [k, m] : dend_succ_expansion(b, a)) acc[k] += m;
    for (const auto& [k, m] : dend_prec_expansion(a, b)) acc[k] -= m;
    Expansion<Pbt> exp;
    for (const auto& [k, m] : acc)
        if (m != 0) exp.emplace_back(k, m);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(a, b), std::move(exp)).first->second;
}

struct DendPreLieCtx {
    using Key = Pbt;
    using Less = PbtLess;
    static Key generator() { return pbt_vertex(); }
    static const Expansion<Pbt>& expand(Pbt a, Pbt b) { return dend_prelie_expansion(a, b); }
};
}  // namespace detail

/// Series of the free dendriform algebra with an optional adjoined unit.
/// The unit never appears as a basis tree; it is a separate coefficient, and
/// the forbidden products 1 < x and x > 1 raise UnitContractError.
struct DendSeries {
    RationalFunction unit;
    Series<Pbt, RationalFunction> part;

    explicit DendSeries(int order) : part(order) {}

    int order() const { return part.order(); }
    bool unit_free() const { return unit.is_zero(); }

    static DendSeries one(int order) {
        DendSeries s(order);
        s.unit = RationalFunction::one();
        return s;
    }

    static DendSeries vertex(int order, RationalFunction c = RationalFunction::one()) {
        DendSeries s(order);
        s.part.add_term(pbt_vertex(), std::move(c));
        return s;
    }

    friend bool operator==(const DendSeries& a, const DendSeries& b) {
        return a.unit == b.unit && a.part == b.part;
    }

    DendSeries& operator+=(const DendSeries& o) {
        unit += o.unit;
        part += o.part;
        return *this;
    }

    DendSeries& operator-=(const DendSeries& o) {
        unit -= o.unit;
        part -= o.part;
        return *this;
    }

    friend DendSeries operator+(DendSeries a, const DendSeries& b) { return a += b; }
    friend DendSeries operator-(DendSeries a, const DendSeries& b) { return a -= b; }

    template <typename Scalar>
    DendSeries scaled(const Scalar& s) const {
        DendSeries r(order());
        r.unit = unit * s;
        r.part = part.scaled(s);
        return r;
    }
};

namespace detail {
template <typename ExpandFn>
void add_bilinear(Series<Pbt, RationalFunction>& out, const Series<Pbt, RationalFunction>& a,
                  const Series<Pbt, RationalFunction>& b, ExpandFn&& expand) {
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            if (ta->degree() + tb->degree() > out.order()) continue;
            const RationalFunction prod = ca * cb;
            for (const auto& [k, m] : expand(ta, tb)) out.add_term(k, prod * BigRational(m));
        }
}
}  // namespace detail

/// x < y. The left factor must be unit-free; x < 1 = x.
inline DendSeries dend_prec(const DendSeries& a, const DendSeries& b) {
    if (!a.unit_free()) throw UnitContractError("1 < x is not defined");
    DendSeries r(std::min(a.order(), b.order()));
    r.part += a.part.truncated(r.order()).scaled(b.unit);
    detail::add_bilinear(r.part, a.part, b.part, detail::dend_prec_expansion);
    return r;
}

/// x > y. The right factor must be unit-free; 1 > x = x.
inline DendSeries dend_succ(const DendSeries& a, const DendSeries& b) {
    if (!b.unit_free()) throw UnitContractError("x > 1 is not defined");
    DendSeries r(std::min(a.order(), b.order()));
    r.part += b.part.truncated(r.order()).scaled(a.unit);
    detail::add_bilinear(r.part, a.part, b.part, detail::dend_succ_expansion);
    return r;
}

/// The associative product * = < + > with 1 * x = x = x * 1.
inline DendSeries dend_mul(const DendSeries& a, const DendSeries& b) {
    DendSeries r(std::min(a.order(), b.order()));
    r.unit = a.unit * b.unit;
    r.part += b.part.truncated(r.order()).scaled(a.unit);
    r.part += a.part.truncated(r.order()).scaled(b.unit);
    detail::add_bilinear(r.part, a.part, b.part, detail::dend_mul_expansion);
    return r;
}

/// The pre-Lie product x <- y = y > x - x < y on unit-free series.
inline DendSeries dend_prelie(const DendSeries& x, const DendSeries& y) {
    if (!x.unit_free() || !y.unit_free())
        throw UnitContractError("pre-Lie product requires unit-free series");
    DendSeries r(std::min(x.order(), y.order()));
    detail::add_bilinear(r.part, x.part, y.part, detail::dend_prelie_expansion);
    return r;
}

/// L = sum of left combs, the solution of L = (1 + L) > vertex.
inline DendSeries left_combs(int N) {
    DendSeries s(N);
    for (int n = 1; n <= N; ++n) s.part.add_term(left_comb(n), RationalFunction::one());
    return s;
}

/// R = sum of right combs, the solution of R = vertex < (1 + R).
inline DendSeries right_combs(int N) {
    DendSeries s(N);
    for (int n = 1; n <= N; ++n) s.part.add_term(right_comb(n), RationalFunction::one());
    return s;
}

inline DendSeries suspension(const DendSeries& s) {
    DendSeries r(s.order());
    r.unit = s.unit;
    r.part = suspension(s.part);
    return r;
}

/// Image of the q-deformed series under the pre-Lie morphism into the free
/// dendriform algebra, obtained by running the defining recursion with the
/// dendriform pre-Lie product.
inline DendSeries omega_q_dend_recursive(int N) {
    auto slices = detail::OmegaRecursion<detail::DendPreLieCtx>::instance().q_slices(N);
    DendSeries s(N);
    for (const auto& slice : slices)
        for (const auto& [t, c] : slice) s.part.add_term(t, c);
    return s;
}

/// The same image by the closed formula: in degree n, with d(t) the number of
/// descents and maj(t) the major index,
///
///   ((-1)^{n-1}/[n]_q) sum_t (-1)^{d(t)} qbinom(n-1, d(t))^{-1}
///                            q^{maj(t) - binom(d(t)+1, 2)} t.
inline DendSeries omega_q_dend_explicit(int N) {
    DendSeries s(N);
    for (int n = 1; n <= N; ++n) {
        const RationalFunction outer(
            QPolynomial(BigRational(n % 2 == 1 ? 1 : -1)), q_integer(static_cast<unsigned>(n)));
        const auto& trees = enumerate_pbt(n);
        std::vector<RationalFunction> coeffs(trees.size());
        parallel_for(trees.size(), [&](size_t i) {
            Pbt t = trees[i];
            const auto descents = descent_set(t);
            const int d = static_cast<int>(descents.size());
            int maj = 0;
            for (int x : descents) maj += x;
            RationalFunction c =
                outer * RationalFunction(QPolynomial(BigRational(d % 2 == 0 ? 1 : -1)),
                                         q_binomial(static_cast<unsigned>(n - 1),
                                                    static_cast<unsigned>(d)));
            coeffs[i] = c.shifted(static_cast<unsigned>(maj - d * (d + 1) / 2));
        });
        for (size_t i = 0; i < trees.size(); ++i) s.part.add_term(trees[i], coeffs[i]);
    }
    return s;
}

struct EBReport {
    bool ok = true;
    std::optional<int> first_failing_degree;
    std::string detail;
};

/// Builds B from B = vertex + B > vertex - vertex < B and E = sum n L_n, then
/// checks E = (1 + L) * B and E = L + E > vertex up to order N.
inline EBReport verify_EB(int N) {
    const DendSeries dot = DendSeries::vertex(N);
    DendSeries B(N);
    B.part.add_term(pbt_vertex(), RationalFunction::one());
    for (int n = 2; n <= N; ++n) {
        DendSeries prev(N);
        prev.part = B.part.degree_slice(n - 1);
        B += dend_succ(prev, dot) - dend_prec(dot, prev);
    }
    DendSeries E(N);
    for (int n = 1; n <= N; ++n)
        E.part.add_term(left_comb(n), RationalFunction(BigRational(n)));

    const DendSeries one_plus_L = DendSeries::one(N) + left_combs(N);
    const DendSeries lhs1 = dend_mul(one_plus_L, B);
    const DendSeries lhs2 = left_combs(N) + dend_succ(E, dot);

    EBReport report;
    for (int n = 1; n <= N && report.ok; ++n) {
        if (!(lhs1.part.degree_slice(n) == E.part.degree_slice(n))) {
            report.ok = false;
            report.first_failing_degree = n;
            report.detail = "E = (1+L)*B fails";
        } else if (!(lhs2.part.degree_slice(n) == E.part.degree_slice(n))) {
            report.ok = false;
            report.first_failing_degree = n;
            report.detail = "E = L + E > vertex fails";
        }
    }
    return report;
}

}  // namespace omq
