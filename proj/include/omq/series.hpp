#pragma once

#include <map>
#include <type_traits>

#include "omq/forest.hpp"
#include "omq/rational_function.hpp"
#include "omq/rooted_tree.hpp"

namespace omq {

namespace detail {
template <typename Key>
int key_degree(const Key& k) {
    if constexpr (std::is_pointer_v<Key>)
        return k->degree();
    else
        return k.degree();
}

template <typename Key>
struct KeyLessFor;
template <>
struct KeyLessFor<Tree> {
    using type = TreeLess;
};
template <>
struct KeyLessFor<Forest> {
    using type = ForestLess;
};

inline bool coef_is_zero(const RationalFunction& c) { return c.is_zero(); }
inline bool coef_is_zero(const QPolynomial& c) { return c.is_zero(); }
inline bool coef_is_zero(const BigRational& c) { return c == 0; }
}  // namespace detail

/// Graded sparse linear combination over a canonical basis, truncated at a
/// fixed order. Zero coefficients and terms beyond the order are never stored.
template <typename Key, typename Coef = RationalFunction>
class Series {
  public:
    using KeyLess = typename detail::KeyLessFor<Key>::type;
    using Terms = std::map<Key, Coef, KeyLess>;

    explicit Series(int order) : order_(order) {}

    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Coef coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coef{} : it->second;
    }

    /// Adds c to the coefficient of k, respecting truncation.
    void add_term(const Key& k, const Coef& c) {
        if (detail::key_degree(k) > order_ || detail::coef_is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (detail::coef_is_zero(it->second)) terms_.erase(it);
        }
    }

    void set_term(const Key& k, Coef c) {
        if (detail::key_degree(k) > order_) return;
        if (detail::coef_is_zero(c)) {
            terms_.erase(k);
            return;
        }
        terms_.insert_or_assign(k, std::move(c));
    }

    Series& operator+=(const Series& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    Series& operator-=(const Series& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    Series operator-() const {
        Series r(order_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    template <typename Scalar>
    Series scaled(const Scalar& s) const {
        Series r(order_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }

    /// Terms of one homogeneous degree.
    Series degree_slice(int n) const {
        Series r(order_);
        for (const auto& [k, c] : terms_)
            if (detail::key_degree(k) == n) r.terms_.emplace(k, c);
        return r;
    }

    /// Copy truncated (or extended) to a new order.
    Series truncated(int order) const {
        Series r(order);
        for (const auto& [k, c] : terms_)
            if (detail::key_degree(k) <= order) r.terms_.emplace(k, c);
        return r;
    }

    int min_degree() const {
        return terms_.empty() ? order_ + 1 : detail::key_degree(terms_.begin()->first);
    }

    friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

  private:
    int order_;
    Terms terms_;
};

using TreeSeries = Series<Tree>;
using ForestSeries = Series<Forest>;

inline TreeSeries tree_series(Tree t, int order, RationalFunction c = RationalFunction::one()) {
    TreeSeries s(order);
    s.add_term(t, c);
    return s;
}

/// Rescales each homogeneous component by a degree-dependent factor.
template <typename Key, typename Coef, typename Fn>
Series<Key, Coef> scale_by_degree(const Series<Key, Coef>& s, Fn&& factor) {
    Series<Key, Coef> r(s.order());
    for (const auto& [k, c] : s.terms()) r.add_term(k, c * factor(detail::key_degree(k)));
    return r;
}

/// A |-> sum_n q^n A_n.
template <typename Key>
Series<Key, RationalFunction> q_shift(const Series<Key, RationalFunction>& s) {
    Series<Key, RationalFunction> r(s.order());
    for (const auto& [k, c] : s.terms())
        r.add_term(k, c.shifted(static_cast<unsigned>(detail::key_degree(k))));
    return r;
}

/// Degree-n components pick up the sign (-1)^{n-1}.
template <typename Key, typename Coef>
Series<Key, Coef> suspension(const Series<Key, Coef>& s) {
    return scale_by_degree(s, [](int n) { return BigRational(n % 2 == 1 ? 1 : -1); });
}

}  // namespace omq
