#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace omq {

using BigInt = boost::multiprecision::mpz_int;

/// Arbitrary-precision rational, always reduced, denominator > 0.
using BigRational = boost::multiprecision::mpq_rational;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return BigRational(num, den);  // gmp canonicalizes
}

inline BigRational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

/// Parses "p/q" or "p". The result is reduced even if the input is not.
inline BigRational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return BigRational(BigInt(std::string(text)));
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        return make_rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational literal: " + std::string(text));
    }
}

inline std::string to_string(const BigRational& r) { return r.str(); }

inline bool is_integer(const BigRational& r) { return denominator(r) == 1; }

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;  // exact at every step
    }
    return b;
}

inline BigRational pow_rational(const BigRational& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return pow_rational(BigRational(denominator(base), numerator(base)), -e);
    }
    BigRational acc = 1;
    for (long i = 0; i < e; ++i) acc *= base;
    return acc;
}

namespace detail {
struct BernoulliTable {
    std::mutex mu;
    // deque: growth must not invalidate references handed out earlier
    std::deque<BigRational> values = {BigRational(1), BigRational(-1, 2)};
};

inline BernoulliTable& bernoulli_table() {
    static BernoulliTable table;
    return table;
}
}  // namespace detail

/// Bernoulli number B_k for the expansion x/(e^x - 1), so B_1 = -1/2.
/// Memoized for the lifetime of the process.
inline const BigRational& bernoulli(unsigned k) {
    auto& table = detail::bernoulli_table();
    std::lock_guard<std::mutex> lock(table.mu);
    while (table.values.size() <= k) {
        // sum_{j<m} C(m+1, j) B_j = 0 for m >= 1
        const unsigned m = static_cast<unsigned>(table.values.size());
        BigRational acc = 0;
        for (unsigned j = 0; j < m; ++j) acc += BigRational(binomial(m + 1, j)) * table.values[j];
        table.values.push_back(-acc / BigRational(m + 1));
    }
    return table.values[k];
}

}  // namespace omq
