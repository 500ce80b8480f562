#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omq/omega_engine.hpp"

namespace omq {

namespace detail {
struct TreeGraftCtx {
    using Key = Tree;
    using Less = TreeLess;
    static Key generator() { return single_vertex(); }
    static const Expansion<Tree>& expand(Tree a, Tree b) { return graft_expansion(a, b); }
};

inline TreeSeries series_from_slices(
    const std::vector<std::map<Tree, RationalFunction, TreeLess>>& slices, int order) {
    TreeSeries s(order);
    for (const auto& slice : slices)
        for (const auto& [t, c] : slice) s.add_term(t, c);
    return s;
}
}  // namespace detail

/// The canonical tree series: unique solution of the classical fixed-point
/// equation, computed degree by degree with Bernoulli-number weights.
/// Coefficients are constant rational functions.
inline TreeSeries omega_classical(int N) {
    auto slices = detail::OmegaRecursion<detail::TreeGraftCtx>::instance().classical_slices(N);
    TreeSeries s(N);
    for (const auto& slice : slices)
        for (const auto& [t, c] : slice) s.add_term(t, RationalFunction(c));
    return s;
}

/// The q-deformation: coefficients in Q(q) with poles only at roots of unity.
/// The classical series is computed and cached alongside.
inline TreeSeries omega_q(int N) {
    return detail::series_from_slices(
        detail::OmegaRecursion<detail::TreeGraftCtx>::instance().q_slices(N), N);
}

/// Same series obtained from the fork fixed point: in each degree n the
/// (trunk, leaves) = (0, 0) substitution term contributes q^n S_{q,n}, so
///
///   (1 - q^n) S_{q,n} = sum_{(l,k) != (0,0)} ((-1)^l / k!) Frk_{l,k} o S_q[q]
///                       + (1-q) (-1)^{n-1} Lnr_n
///
/// restricted to degree n. Entirely independent of the graft recursion above;
/// the two routes are each other's oracle.
inline TreeSeries omega_q_via_forks(int N) {
    static std::mutex mu;
    static std::vector<std::map<Tree, QPolynomial, TreeLess>> pnum = {
        {}, {{single_vertex(), QPolynomial::one()}}};
    static std::vector<std::map<Tree, RationalFunction, TreeLess>> reduced(1);

    std::lock_guard<std::mutex> lock(mu);
    auto ratio = [](int hi, int lo) {  // prod_{d=lo+1..hi} (q^d - 1)
        QPolynomial r = QPolynomial::one();
        for (int d = lo + 1; d <= hi; ++d) {
            std::vector<BigRational> c(d + 1);
            c[0] = -1;
            c[d] = 1;
            r *= QPolynomial(std::move(c));
        }
        return r;
    };
    for (int n = static_cast<int>(pnum.size()); n <= N; ++n) {
        // right-hand side over the common denominator D_{n-1}
        Series<Tree, QPolynomial> rhs(n);
        for (int trunk = 0; trunk <= n - 1; ++trunk) {
            for (int leaves = 0; trunk + leaves <= n - 1; ++leaves) {
                if (trunk == 0 && leaves == 0) continue;
                const int m = n - trunk - leaves;
                if (m < 1) continue;
                Series<Tree, QPolynomial> arg(n);
                const QPolynomial scale =
                    ratio(n - 1, m).shifted(static_cast<unsigned>(m)) *
                    BigRational(BigInt(trunk % 2 == 0 ? 1 : -1),
                                factorial(static_cast<unsigned>(leaves)));
                for (const auto& [t, c] : pnum[m]) arg.add_term(t, c * scale);
                rhs += fork_substitute(trunk, leaves, arg);
            }
        }
        // (1-q) (-1)^{n-1} Lnr_n, also over D_{n-1}
        QPolynomial lin =
            ratio(n - 1, 1) * QPolynomial(std::vector<BigRational>{BigRational(1), BigRational(-1)});
        if (n % 2 == 0) lin = -lin;
        rhs.add_term(linear_tree(n), lin);

        std::map<Tree, QPolynomial, TreeLess> next;
        for (const auto& [t, c] : rhs.terms()) next.emplace(t, -c);
        pnum.push_back(std::move(next));
    }
    while (static_cast<int>(reduced.size()) <= N) {
        const int n = static_cast<int>(reduced.size());
        std::map<Tree, RationalFunction, TreeLess> slice;
        for (const auto& [t, c] : pnum[n]) {
            QPolynomial num = c;
            QPolynomial den = QPolynomial::one();
            for (int e = 1; e <= n; ++e) {
                unsigned mult =
                    e == 1 ? static_cast<unsigned>(n - 1) : static_cast<unsigned>(n / e);
                if (mult == 0) continue;
                const QPolynomial& phi = cyclotomic(static_cast<unsigned>(e));
                unsigned cancelled = 0;
                while (cancelled < mult) {
                    auto [quot, rem] = num.divmod(phi);
                    if (!rem.is_zero()) break;
                    num = std::move(quot);
                    ++cancelled;
                }
                for (unsigned j = cancelled; j < mult; ++j) den *= phi;
            }
            auto f = RationalFunction::from_canonical(std::move(num), std::move(den));
            if (!f.is_zero()) slice.emplace(t, std::move(f));
        }
        reduced.push_back(std::move(slice));
    }
    return detail::series_from_slices({reduced.begin() + 1, reduced.begin() + N + 1}, N);
}

enum class SpecialPoint { One, Zero };

/// Coefficient-wise exact evaluation at q = 1 or q = 0. These series are
/// regular at both points; a PoleError escaping here indicates a bug.
inline TreeSeries specialize(const TreeSeries& s, SpecialPoint point) {
    const BigRational a = point == SpecialPoint::One ? 1 : 0;
    TreeSeries r(s.order());
    for (const auto& [t, c] : s.terms()) r.add_term(t, RationalFunction(c.eval_at(a)));
    return r;
}

enum class InfinityMode { Limit, ClosedForm };

/// Value at q = infinity: the limit of the q-shifted series divided by q.
/// Limit mode reads the coefficient of each degree-n tree as the limit of
/// q^{n-1} times its Q(q) coefficient; closed form is (-1)^{n-1}/aut(T).
inline TreeSeries omega_infinity(int N, InfinityMode mode) {
    TreeSeries r(N);
    if (mode == InfinityMode::Limit) {
        const TreeSeries base = omega_q(N);
        for (const auto& [t, c] : base.terms())
            r.add_term(t, RationalFunction(c.infinity_limit(t->degree() - 1)));
        return r;
    }
    for (int n = 1; n <= N; ++n)
        for (Tree t : enumerate_trees(n)) {
            BigRational coeff(BigInt(n % 2 == 1 ? 1 : -1), aut_count(t));
            r.add_term(t, RationalFunction(coeff));
        }
    return r;
}

/// Image under the morphism onto linear trees (composition of power series):
/// the coefficient of the n-chain for n = 1..order.
inline std::vector<RationalFunction> extract_qlog(const TreeSeries& s) {
    std::vector<RationalFunction> out;
    for (int n = 1; n <= s.order(); ++n) out.push_back(s.coeff(linear_tree(n)));
    return out;
}

/// Image under the corolla quotient: beta_n = n! * coefficient of the
/// (n+1)-corolla, for n = 0..order-1.
inline std::vector<RationalFunction> extract_carlitz(const TreeSeries& s) {
    std::vector<RationalFunction> out;
    for (int n = 0; n < s.order(); ++n)
        out.push_back(s.coeff(corolla(n + 1)) * BigRational(factorial(static_cast<unsigned>(n))));
    return out;
}

/// The q-Bernoulli numbers by their umbral recursion
///   q (q beta + 1)^n - beta_n = [n = 1],   beta_0 = 1,
/// solved for beta_n degree by degree. Independent cross-check for
/// extract_carlitz.
inline std::vector<RationalFunction> carlitz_oracle(int N) {
    std::vector<RationalFunction> beta = {RationalFunction::one()};
    for (int n = 1; n < N; ++n) {
        RationalFunction rhs =
            n == 1 ? RationalFunction::one() : RationalFunction::zero();
        for (int k = 0; k < n; ++k) {
            RationalFunction term = beta[k] * BigRational(binomial(n, k));
            rhs -= term.shifted(static_cast<unsigned>(k + 1));
        }
        std::vector<BigRational> c(n + 2);
        c[0] = -1;
        c[n + 1] = 1;
        beta.push_back(rhs / RationalFunction(QPolynomial(std::move(c))));
    }
    return beta;
}

/// Image in the pre-Lie algebra of polynomial vector fields sending the
/// generator to x, where every tree lands on x^{degree}. Computed by the
/// structural recursion image(tree) = x * prod image(subtrees) and verified
/// against the per-degree coefficient sums; returns coefficients of x^1..x^N.
inline std::vector<RationalFunction> vector_field_image(const TreeSeries& s) {
    const int N = s.order();
    std::vector<RationalFunction> structural(N + 1);  // index = power of x
    auto tree_power = [](auto&& self, Tree t) -> int {
        int p = 1;
        for (Tree c : t->children()) p += self(self, c);
        return p;
    };
    for (const auto& [t, c] : s.terms()) {
        const int p = tree_power(tree_power, t);
        if (p <= N) structural[p] += c;
    }
    std::vector<RationalFunction> sums(N + 1);
    for (const auto& [t, c] : s.terms()) sums[t->degree()] += c;
    for (int n = 1; n <= N; ++n)
        if (!(structural[n] == sums[n]))
            throw InternalConsistencyError("vector field image mismatch at degree " +
                                           std::to_string(n));
    return {structural.begin() + 1, structural.end()};
}

struct DenominatorReport {
    bool ok = true;
    std::vector<std::string> lines;          // one factorization entry per term
    std::optional<std::string> violation;    // first failing term, if any
};

/// Checks that in degree n every denominator divides prod_{d=2..n} Phi_d and
/// tabulates the cyclotomic factorizations.
inline DenominatorReport denominator_check(const TreeSeries& s) {
    DenominatorReport report;
    std::vector<QPolynomial> bound(s.order() + 1, QPolynomial::one());
    for (int n = 2; n <= s.order(); ++n)
        bound[n] = bound[n - 1] * cyclotomic(static_cast<unsigned>(n));
    for (const auto& [t, c] : s.terms()) {
        const int n = t->degree();
        const bool divides = bound[n].divmod(c.den()).second.is_zero();
        std::string line = canonical_encode(t) + " : den = ";
        if (auto factors = cyclotomic_factorization(c.den())) {
            if (factors->empty()) line += "1";
            for (size_t i = 0; i < factors->size(); ++i) {
                if (i) line += "*";
                line += "Phi" + std::to_string((*factors)[i].first);
                if ((*factors)[i].second > 1) line += "^" + std::to_string((*factors)[i].second);
            }
        } else {
            line += c.den().str() + " (not cyclotomic)";
        }
        report.lines.push_back(line);
        if (!divides && report.ok) {
            report.ok = false;
            report.violation = line;
        }
    }
    return report;
}

}  // namespace omq
