#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "omq/parallel.hpp"
#include "omq/prelie.hpp"

namespace omq::detail {

/// Degree-by-degree solver for the canonical series and its q-deformation,
/// generic over the underlying pre-Lie structure.
///
/// A context supplies the basis key, an ordering, the generator, and the
/// bilinear product as an integer-multiplicity expansion on basis elements:
///
///   struct Ctx {
///     using Key = ...;
///     using Less = ...;
///     static Key generator();
///     static const Expansion<Key>& expand(Key a, Key b);   // a <- b
///   };
///
/// The classical series solves, with B_k the Bernoulli numbers,
///
///   S_n = sum_{k>=0} (B_k/k!) sum_{m_1+...+m_k=n-1} ((g <- S_{m_k}) ...) <- S_{m_1}
///
/// and the q-deformation solves
///
///   (q^n - 1) S_{q,n} = g <- S_{q,n-1}
///     - sum_{k>=1} (1/k!) sum_{m_1+...+m_k+l=n} q^l ((S_{q,l} <- S_{m_k}) ...) <- S_{m_1}.
///
/// Coefficients of the q-side are carried as plain polynomials over the
/// running common denominator D_n = prod_{d=2..n} (q^d - 1); the division by
/// q^n - 1 is absorbed into that ledger, so the recursion stays inside Q[q]
/// and coefficients are brought to reduced form only when a slice is read.
template <typename Ctx>
class OmegaRecursion {
  public:
    using Key = typename Ctx::Key;
    using Less = typename Ctx::Less;
    using RatMap = std::map<Key, BigRational, Less>;
    using PolyMap = std::map<Key, QPolynomial, Less>;
    using ReducedMap = std::map<Key, RationalFunction, Less>;

    static OmegaRecursion& instance() {
        static OmegaRecursion self;
        return self;
    }

    /// Homogeneous components S_1..S_N of the classical series.
    std::vector<RatMap> classical_slices(int N) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_classical(N);
        return {classical_.begin() + 1, classical_.begin() + N + 1};
    }

    /// Homogeneous components S_{q,1}..S_{q,N}, reduced.
    std::vector<ReducedMap> q_slices(int N) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_q(N);
        while (static_cast<int>(reduced_.size()) <= N) {
            const int n = static_cast<int>(reduced_.size());
            reduced_.push_back(reduce_slice(qnum_[n], n));
        }
        return {reduced_.begin() + 1, reduced_.begin() + N + 1};
    }

  private:
    OmegaRecursion() {
        classical_.resize(2);
        classical_[1].emplace(Ctx::generator(), BigRational(1));
        qnum_.resize(2);
        qnum_[1].emplace(Ctx::generator(), QPolynomial::one());
        reduced_.resize(1);
    }

    template <typename Map, typename Scalar>
    static void merge_scaled(Map& out, const Map& in, const Scalar& scale) {
        for (const auto& [k, c] : in) {
            auto [it, fresh] = out.emplace(k, c * scale);
            if (!fresh) it->second += c * scale;
            if (coef_is_zero(it->second)) out.erase(it);
        }
    }

    static void merge_scaled(PolyMap& out, const PolyMap& in, const BigRational& scale) {
        for (const auto& [k, c] : in) {
            auto [it, fresh] = out.emplace(k, QPolynomial());
            it->second.add_scaled(c, scale);
            if (it->second.is_zero()) out.erase(it);
        }
    }

    // out += scale * (A <- B) for rational coefficients on both sides
    static void add_graft(RatMap& out, const RatMap& A, const RatMap& B, const BigRational& scale) {
        for (const auto& [a, ca] : A)
            for (const auto& [b, cb] : B) {
                const BigRational prod = ca * cb * scale;
                for (const auto& [k, m] : Ctx::expand(a, b)) {
                    auto [it, fresh] = out.emplace(k, BigRational(0));
                    it->second += prod * m;
                    if (it->second == 0) out.erase(it);
                }
            }
    }

    // out += scale * (A <- B), polynomial coefficients on the left factor
    static void add_graft(PolyMap& out, const PolyMap& A, const RatMap& B,
                          const QPolynomial& scale) {
        for (const auto& [a, ca] : A) {
            const QPolynomial left = ca * scale;
            for (const auto& [b, cb] : B) {
                for (const auto& [k, m] : Ctx::expand(a, b)) {
                    auto [it, fresh] = out.emplace(k, QPolynomial());
                    it->second.add_scaled(left, cb * m);
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
    }

    // out += (A <- B), polynomial coefficients on the right factor
    static void add_graft(PolyMap& out, const RatMap& A, const PolyMap& B) {
        for (const auto& [a, ca] : A)
            for (const auto& [b, cb] : B) {
                for (const auto& [k, m] : Ctx::expand(a, b)) {
                    auto [it, fresh] = out.emplace(k, QPolynomial());
                    it->second.add_scaled(cb, ca * m);
                    if (it->second.is_zero()) out.erase(it);
                }
            }
    }

    /// prod_{d=lo+1..hi} (q^d - 1)
    static QPolynomial denominator_ratio(int hi, int lo) {
        QPolynomial r = QPolynomial::one();
        for (int d = lo + 1; d <= hi; ++d) {
            std::vector<BigRational> c(d + 1);
            c[0] = -1;
            c[d] = 1;
            r *= QPolynomial(std::move(c));
        }
        return r;
    }

    // C(k, p): sum over compositions m_1+...+m_k = p of ((g <- S_{m_k}) ...) <- S_{m_1}
    const RatMap& composition_sum(int k, int p) {
        auto it = cdp_.find({k, p});
        if (it != cdp_.end()) return it->second;
        RatMap acc;
        if (k == 1) {
            add_graft(acc, RatMap{{Ctx::generator(), BigRational(1)}}, classical_[p],
                      BigRational(1));
        } else {
            for (int m = 1; m <= p - k + 1; ++m)
                add_graft(acc, composition_sum(k - 1, p - m), classical_[m], BigRational(1));
        }
        return cdp_.emplace(std::make_pair(k, p), std::move(acc)).first->second;
    }

    // Q(k, p): as composition_sum but with innermost factor q^l S_{q,l};
    // coefficients normalized to the common denominator D_{p-1}.
    const PolyMap& q_composition_sum(int k, int p) {
        auto it = qdp_.find({k, p});
        if (it != qdp_.end()) return it->second;
        PolyMap acc;
        if (k == 1) {
            for (int l = 1; l <= p - 1; ++l) {
                const QPolynomial scale =
                    denominator_ratio(p - 1, l).shifted(static_cast<unsigned>(l));
                add_graft(acc, qnum_[l], classical_[p - l], scale);
            }
        } else {
            for (int m = 1; m <= p - k; ++m) {
                const QPolynomial scale = denominator_ratio(p - 1, p - m - 1);
                add_graft(acc, q_composition_sum(k - 1, p - m), classical_[m], scale);
            }
        }
        return qdp_.emplace(std::make_pair(k, p), std::move(acc)).first->second;
    }

    void extend_classical(int N) {
        for (int n = static_cast<int>(classical_.size()); n <= N; ++n) {
            RatMap acc;
            for (int k = 1; k <= n - 1; ++k) {
                const BigRational weight = bernoulli(static_cast<unsigned>(k)) /
                                           BigRational(factorial(static_cast<unsigned>(k)));
                if (weight == 0) continue;
                merge_scaled(acc, composition_sum(k, n - 1), weight);
            }
            classical_.push_back(std::move(acc));
        }
    }

    void extend_q(int N) {
        if (N >= 2) extend_classical(N - 1);
        for (int n = static_cast<int>(qnum_.size()); n <= N; ++n) {
            PolyMap acc;
            add_graft(acc, RatMap{{Ctx::generator(), BigRational(1)}}, qnum_[n - 1]);
            for (int k = 1; k <= n - 1; ++k) {
                const BigRational weight(BigInt(-1), factorial(static_cast<unsigned>(k)));
                merge_scaled(acc, q_composition_sum(k, n), weight);
            }
            qnum_.push_back(std::move(acc));
        }
    }

    /// Reads off a degree-n slice: every coefficient is P / D_n, cancelled
    /// against the known cyclotomic factorization of the ledger.
    static ReducedMap reduce_slice(const PolyMap& pm, int n) {
        for (int e = 1; e <= n; ++e) cyclotomic(static_cast<unsigned>(e));  // warm the table
        std::vector<std::pair<Key, const QPolynomial*>> entries;
        entries.reserve(pm.size());
        for (const auto& [k, c] : pm) entries.emplace_back(k, &c);
        std::vector<RationalFunction> reduced(entries.size());
        parallel_for(entries.size(), [&](size_t i) {
            QPolynomial num = *entries[i].second;
            QPolynomial den = QPolynomial::one();
            for (int e = 1; e <= n; ++e) {
                // multiplicity of Phi_e in D_n
                unsigned mult = e == 1 ? static_cast<unsigned>(n - 1)
                                       : static_cast<unsigned>(n / e);
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
            reduced[i] = RationalFunction::from_canonical(std::move(num), std::move(den));
        });
        ReducedMap out;
        for (size_t i = 0; i < entries.size(); ++i)
            if (!reduced[i].is_zero()) out.emplace(entries[i].first, std::move(reduced[i]));
        return out;
    }

    std::mutex mu_;
    std::vector<RatMap> classical_;   // index n = degree, slot 0 unused
    std::vector<PolyMap> qnum_;       // numerators over D_n
    std::vector<ReducedMap> reduced_;
    std::map<std::pair<int, int>, RatMap> cdp_;
    std::map<std::pair<int, int>, PolyMap> qdp_;
};

}  // namespace omq::detail
