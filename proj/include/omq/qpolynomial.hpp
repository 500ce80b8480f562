#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "omq/rational.hpp"

namespace omq {

/// Dense univariate polynomial over Q in the indeterminate q.
///
/// Coefficients are stored by ascending degree; the top coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
class QPolynomial {
  public:
    QPolynomial() = default;

    explicit QPolynomial(BigRational constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }

    explicit QPolynomial(std::vector<BigRational> ascending) : coeffs_(std::move(ascending)) {
        trim();
    }

    static QPolynomial zero() { return QPolynomial(); }
    static QPolynomial one() { return QPolynomial(BigRational(1)); }

    /// q^k with an optional scalar factor.
    static QPolynomial monomial(unsigned k, BigRational scale = BigRational(1)) {
        if (scale == 0) return {};
        std::vector<BigRational> c(k + 1);
        c[k] = std::move(scale);
        return QPolynomial(std::move(c));
    }

    static QPolynomial variable() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const BigRational& leading() const {
        if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    BigRational coeff(unsigned k) const {
        return k < coeffs_.size() ? coeffs_[k] : BigRational(0);
    }

    std::span<const BigRational> coefficients() const { return coeffs_; }

    BigRational constant_term() const { return coeff(0); }

    friend bool operator==(const QPolynomial& a, const QPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

    QPolynomial operator-() const {
        QPolynomial r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
        std::vector<BigRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
            if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
        }
        return QPolynomial(std::move(c));
    }

    friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) { return a + (-b); }

    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return QPolynomial(std::move(c));
    }

    friend QPolynomial operator*(const QPolynomial& a, const BigRational& s) {
        if (s == 0) return {};
        QPolynomial r = a;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    friend QPolynomial operator*(const BigRational& s, const QPolynomial& a) { return a * s; }

    QPolynomial& operator+=(const QPolynomial& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    QPolynomial& operator-=(const QPolynomial& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    QPolynomial& operator*=(const QPolynomial& o) { return *this = *this * o; }

    QPolynomial& operator*=(const BigRational& s) {
        if (s == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    /// In-place *this += o * s without intermediate polynomials.
    void add_scaled(const QPolynomial& o, const BigRational& s) {
        if (o.is_zero() || s == 0) return;
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i] * s;
        trim();
    }

    /// Multiplication by q^k in place.
    QPolynomial shifted(unsigned k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<BigRational> c(coeffs_.size() + k);
        std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + k);
        return QPolynomial(std::move(c));
    }

    /// Quotient and remainder of Euclidean division.
    std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        QPolynomial r = *this;
        std::vector<BigRational> q;
        if (r.degree() >= d.degree()) q.assign(r.degree() - d.degree() + 1, BigRational(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const size_t shift = r.degree() - d.degree();
            BigRational f = r.leading() / d.leading();
            q[shift] = f;
            for (size_t i = 0; i < d.coeffs_.size(); ++i) r.coeffs_[shift + i] -= f * d.coeffs_[i];
            r.trim();
        }
        return {QPolynomial(std::move(q)), std::move(r)};
    }

    /// Division known to be exact; throws if a remainder appears.
    QPolynomial exact_divide(const QPolynomial& d) const {
        auto [quot, rem] = divmod(d);
        if (!rem.is_zero()) throw std::logic_error("polynomial division was not exact");
        return quot;
    }

    QPolynomial monic() const {
        if (is_zero()) return {};
        return *this * BigRational(denominator(leading()), numerator(leading()));
    }

    BigRational eval(const BigRational& a) const {
        BigRational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
        return acc;
    }

    /// gcd of numerators over lcm of denominators, signed like the leading coefficient.
    BigRational content() const {
        if (is_zero()) return 0;
        BigInt num = 0, den = 1;
        for (const auto& c : coeffs_) {
            num = gcd(num, numerator(c));
            den = lcm(den, denominator(c));
        }
        BigRational r(num, den);
        return leading() < 0 ? -r : r;
    }

    /// this / content(): integer coefficients with positive leading one.
    QPolynomial primitive_part() const {
        if (is_zero()) return {};
        const BigRational c = content();
        return *this * BigRational(denominator(c), numerator(c));
    }

    friend QPolynomial operator/(const QPolynomial& a, const BigRational& s) {
        if (s == 0) throw std::domain_error("division by zero scalar");
        return a * BigRational(denominator(s), numerator(s));
    }

    /// Human-readable form, descending powers, e.g. "q^2 - q + 1".
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const BigRational& c = coeffs_[k];
            if (c == 0) continue;
            const BigRational mag = c < 0 ? BigRational(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (k == 0) {
                out << to_string(mag);
            } else {
                if (mag != 1) out << to_string(mag) << "*";
                out << (k == 1 ? "q" : "q^" + std::to_string(k));
            }
        }
        return out.str();
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigRational> coeffs_;
};

/// Monic greatest common divisor via the Euclidean algorithm over Q.
inline QPolynomial poly_gcd(QPolynomial a, QPolynomial b) {
    while (!b.is_zero()) {
        QPolynomial r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();  // normalizing each remainder keeps coefficients small
    }
    return a.monic();
}

/// The q-integer [n]_q = 1 + q + ... + q^{n-1}.
inline QPolynomial q_integer(unsigned n) {
    if (n == 0) throw std::invalid_argument("q_integer requires n >= 1");
    return QPolynomial(std::vector<BigRational>(n, BigRational(1)));
}

/// Gaussian binomial coefficient, computed by the q-Pascal rule
/// qbinom(n, k) = qbinom(n-1, k-1) + q^k qbinom(n-1, k).
inline QPolynomial q_binomial(unsigned n, unsigned k) {
    if (k > n) throw std::invalid_argument("q_binomial requires k <= n");
    std::vector<QPolynomial> row = {QPolynomial::one()};
    for (unsigned i = 1; i <= n; ++i) {
        std::vector<QPolynomial> next(std::min(i, k) + 1);
        next[0] = QPolynomial::one();
        for (unsigned j = 1; j < next.size(); ++j) {
            const QPolynomial upper = j < row.size() ? row[j] : QPolynomial::zero();
            next[j] = row[j - 1] + upper.shifted(j);
        }
        row = std::move(next);
    }
    return row[k];
}

namespace detail {
struct CyclotomicTable {
    std::mutex mu;
    std::map<unsigned, QPolynomial> entries;
};

inline CyclotomicTable& cyclotomic_table() {
    static CyclotomicTable table;
    return table;
}
}  // namespace detail

/// d-th cyclotomic polynomial, by dividing q^d - 1 by the proper-divisor ones.
/// Memoized for the lifetime of the process.
inline const QPolynomial& cyclotomic(unsigned d) {
    if (d == 0) throw std::invalid_argument("cyclotomic requires d >= 1");
    auto& table = detail::cyclotomic_table();
    std::lock_guard<std::mutex> lock(table.mu);
    auto compute = [&table](unsigned m, auto&& self) -> const QPolynomial& {
        auto it = table.entries.find(m);
        if (it != table.entries.end()) return it->second;
        std::vector<BigRational> c(m + 1);
        c[0] = -1;
        c[m] = 1;
        QPolynomial num{std::move(c)};  // q^m - 1
        for (unsigned e = 1; e < m; ++e)
            if (m % e == 0) num = num.exact_divide(self(e, self));
        return table.entries.emplace(m, std::move(num)).first->second;
    };
    return compute(d, compute);
}

}  // namespace omq
