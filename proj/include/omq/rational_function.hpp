#pragma once

#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include "omq/errors.hpp"
#include "omq/qpolynomial.hpp"

namespace omq {

/// Valuation reported for the zero function.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// Element of Q(q), kept as a reduced fraction with monic denominator.
class RationalFunction {
  public:
    RationalFunction() : den_(QPolynomial::one()) {}

    RationalFunction(QPolynomial num, QPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    explicit RationalFunction(QPolynomial num) : num_(std::move(num)), den_(QPolynomial::one()) {}

    explicit RationalFunction(BigRational c)
        : num_(QPolynomial(std::move(c))), den_(QPolynomial::one()) {}

    RationalFunction(long num, long den = 1) : RationalFunction(make_rational(num, den)) {}

    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction one() { return RationalFunction(BigRational(1)); }

    /// Wraps a fraction the caller guarantees to be in canonical form already
    /// (gcd(num, den) = 1, den monic). Skips the reduction pass.
    static RationalFunction from_canonical(QPolynomial num, QPolynomial den) {
        RationalFunction r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        if (r.num_.is_zero()) r.den_ = QPolynomial::one();
        return r;
    }

    const QPolynomial& num() const { return num_; }
    const QPolynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    BigRational constant_value() const {
        if (!is_constant()) throw std::logic_error("rational function is not constant");
        return num_.constant_term();
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        // cross-reduce once so the final gcd is trivial
        RationalFunction x(a.num_, b.den_);
        RationalFunction y(b.num_, a.den_);
        RationalFunction r;
        r.num_ = x.num_ * y.num_;
        r.den_ = x.den_ * y.den_;
        return r;
    }

    friend RationalFunction operator*(const RationalFunction& a, const BigRational& s) {
        if (s == 0) return zero();
        RationalFunction r = a;
        r.num_ = r.num_ * s;  // denominator untouched, still coprime
        return r;
    }

    friend RationalFunction operator*(const BigRational& s, const RationalFunction& a) {
        return a * s;
    }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        RationalFunction r;
        r.num_ = den_;
        r.den_ = num_;
        const BigRational lead = r.den_.leading();
        if (!(lead == 1)) {
            const BigRational inv_lead(denominator(lead), numerator(lead));
            r.num_ = r.num_ * inv_lead;
            r.den_ = r.den_ * inv_lead;
        }
        return r;
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        return a * b.inverse();
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator*=(const BigRational& s) { return *this = *this * s; }

    /// Multiplication by q^k. Cheap when the denominator has no root at 0.
    RationalFunction shifted(unsigned k) const {
        if (k == 0 || is_zero()) return *this;
        if (!(den_.constant_term() == 0)) {
            RationalFunction r = *this;
            r.num_ = r.num_.shifted(k);
            return r;
        }
        return *this * RationalFunction(QPolynomial::monomial(k));
    }

    /// Exact value f(a); throws PoleError at a root of the denominator.
    BigRational eval_at(const BigRational& a) const {
        const BigRational d = den_.eval(a);
        if (d == 0) throw PoleError(to_string(a));
        return num_.eval(a) / d;
    }

    /// Smallest exponent of the Laurent expansion in powers of 1/q:
    /// deg(den) - deg(num). The zero function reports kInfiniteValuation.
    long infinity_valuation() const {
        if (is_zero()) return kInfiniteValuation;
        return static_cast<long>(den_.degree()) - static_cast<long>(num_.degree());
    }

    /// Limit of q^shift * f as q grows without bound.
    /// Requires infinity_valuation() >= shift, otherwise throws DivergenceError.
    BigRational infinity_limit(long shift) const {
        const long v = infinity_valuation();
        if (v < shift) {
            std::ostringstream msg;
            msg << "q^" << shift << " * f diverges at infinity (valuation " << v << ")";
            throw DivergenceError(msg.str());
        }
        if (v > shift) return 0;
        return num_.leading() / den_.leading();
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = QPolynomial::one();
            return;
        }
        if (den_.degree() > 0 && num_.degree() > 0) {
            const QPolynomial g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.exact_divide(g);
                den_ = den_.exact_divide(g);
            }
        }
        const BigRational lead = den_.leading();
        if (!(lead == 1)) {
            const BigRational inv(denominator(lead), numerator(lead));
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    QPolynomial num_;
    QPolynomial den_;
};

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Factorization of a monic polynomial into cyclotomic factors, if total.
/// Returns pairs (d, multiplicity) or nothing when a non-cyclotomic factor remains.
inline std::optional<std::vector<std::pair<unsigned, unsigned>>> cyclotomic_factorization(
    const QPolynomial& monic) {
    std::vector<std::pair<unsigned, unsigned>> factors;
    QPolynomial rest = monic;
    if (rest.is_one()) return factors;
    if (rest.degree() <= 0) return std::nullopt;
    // phi(d) >= sqrt(d/2), so candidates with deg(Phi_d) <= K satisfy d <= 2 K^2
    const unsigned phi_bound = static_cast<unsigned>(rest.degree());
    const unsigned d_bound = 2 * phi_bound * phi_bound + 1;
    for (unsigned d = 1; d <= d_bound && !rest.is_one(); ++d) {
        if (euler_phi(d) > static_cast<unsigned>(rest.degree())) continue;
        unsigned mult = 0;
        while (true) {
            auto [quot, rem] = rest.divmod(cyclotomic(d));
            if (!rem.is_zero()) break;
            rest = quot;
            ++mult;
        }
        if (mult > 0) factors.emplace_back(d, mult);
    }
    if (!rest.is_one()) return std::nullopt;
    return factors;
}

/// Canonical text form. Denominators print as cyclotomic products whenever the
/// factorization is total, e.g. "q/(2*Phi2*Phi3)"; otherwise the expanded monic
/// denominator is used. Plain rationals print as "p/q".
inline std::string text_form(const RationalFunction& f) {
    if (f.is_zero()) return "0";
    const BigRational c = f.num().content();
    const QPolynomial prim = f.num().primitive_part();

    std::ostringstream out;
    const BigInt cnum = numerator(c);
    const BigInt cden = denominator(c);

    // numerator part: cnum * prim, with a q-power split off for readability
    std::string num_text;
    {
        unsigned low = 0;
        while (prim.coeff(low) == 0) ++low;
        QPolynomial core = low > 0 ? prim.exact_divide(QPolynomial::monomial(low)) : prim;
        std::ostringstream n;
        const BigInt mag = cnum < 0 ? BigInt(-cnum) : cnum;
        if (cnum < 0) n << "-";
        bool need_star = false;
        if (mag != 1 || (low == 0 && core.is_one())) {
            n << mag.str();
            need_star = true;
        }
        if (low > 0) {
            if (need_star) n << "*";
            n << (low == 1 ? "q" : "q^" + std::to_string(low));
            need_star = true;
        }
        if (!core.is_one()) {
            if (need_star) n << "*";
            n << "(" << core.str() << ")";
        }
        num_text = n.str();
    }

    if (f.den().is_one()) {
        // polynomial over Q: "q/2", "-1/2", "(q^2 + 1)/3"
        if (cden == 1) return num_text;
        out << num_text << "/" << cden.str();
        return out.str();
    }

    std::ostringstream d;
    bool first = true;
    if (cden != 1) {
        d << cden.str();
        first = false;
    }
    if (auto factors = cyclotomic_factorization(f.den())) {
        for (const auto& [idx, mult] : *factors) {
            if (!first) d << "*";
            d << "Phi" << idx;
            if (mult > 1) d << "^" << mult;
            first = false;
        }
    } else if (first) {
        d << f.den().str();
    } else {
        d << "*(" << f.den().str() << ")";
    }
    out << num_text << "/(" << d.str() << ")";
    return out.str();
}

}  // namespace omq
