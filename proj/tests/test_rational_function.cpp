#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "omq/rational_function.hpp"

using namespace omq;

namespace {

QPolynomial poly(std::vector<long> coeffs) {
    std::vector<BigRational> c;
    for (long v : coeffs) c.emplace_back(v);
    return QPolynomial(std::move(c));
}

RationalFunction random_rf(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    auto rand_poly = [&] {
        std::vector<BigRational> c(deg(rng) + 1);
        for (auto& x : c) x = coeff(rng);
        return QPolynomial(std::move(c));
    };
    QPolynomial num = rand_poly();
    QPolynomial den = rand_poly();
    while (den.is_zero()) den = rand_poly();
    return RationalFunction(num, den);
}

}  // namespace

TEST_CASE("reduction to canonical form") {
    const RationalFunction f(poly({-1, 0, 1}), poly({-2, 2}));  // (q^2-1)/(2q-2)
    CHECK(f.den() == QPolynomial::one());
    CHECK(f.num() == poly({1, 1}) / BigRational(2));
    CHECK(f == RationalFunction(poly({1, 1}), poly({2})));

    const RationalFunction g(poly({0, 2}), poly({0, 0, 4}));  // 2q / 4q^2
    CHECK(g.num() == poly({1}) / BigRational(2));
    CHECK(g.den() == poly({0, 1}));
    CHECK_THROWS_AS(RationalFunction(poly({1}), QPolynomial::zero()), std::domain_error);
}

TEST_CASE("field operations keep canonical form and satisfy field laws") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const RationalFunction f = random_rf(rng), g = random_rf(rng), h = random_rf(rng);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);
        CHECK((f - f).is_zero());
        if (!f.is_zero()) {
            CHECK(f * f.inverse() == RationalFunction::one());
            CHECK(f.inverse().den().is_zero() == false);
            CHECK(f.inverse().den().leading() == 1);
        }
        // canonical invariants
        if (!f.is_zero()) {
            CHECK(f.den().leading() == 1);
            CHECK(poly_gcd(f.num(), f.den()).degree() == 0);
        }
    }
}

TEST_CASE("evaluation") {
    const RationalFunction f(poly({0, 1}), poly({1, 1}));  // q/(q+1)
    CHECK(f.eval_at(1) == BigRational(1, 2));

    const RationalFunction g(poly({-1, 0, 1}), poly({-1, 1}));  // reduces to q+1
    CHECK(g.eval_at(1) == 2);

    const RationalFunction h(QPolynomial::one(), cyclotomic(2));
    CHECK_THROWS_AS(h.eval_at(-1), PoleError);
    try {
        h.eval_at(-1);
    } catch (const PoleError& e) {
        CHECK(e.point() == "-1");
    }
}

TEST_CASE("valuation and limit at infinity") {
    const RationalFunction f(poly({0, 1}), poly({1, 1}));
    CHECK(f.infinity_valuation() == 0);
    CHECK(RationalFunction(QPolynomial::one(), cyclotomic(2)).infinity_valuation() == 1);
    CHECK(RationalFunction::zero().infinity_valuation() == kInfiniteValuation);

    // coefficient of a degree-5 tree in the q-series: q^2(q^3+q^2-1) over
    // 2 Phi2 Phi3 Phi4 Phi5; denominator degree 9, numerator degree 5
    const RationalFunction deep(
        poly({0, 0, -1, 0, 1, 1}),
        cyclotomic(2) * cyclotomic(3) * cyclotomic(4) * cyclotomic(5) * BigRational(2));
    CHECK(deep.infinity_valuation() == 4);
    CHECK(deep.infinity_limit(4) == BigRational(1, 2));

    const RationalFunction one_over_phi2(QPolynomial::one(), cyclotomic(2));
    CHECK(one_over_phi2.infinity_limit(1) == 1);
    CHECK(one_over_phi2.infinity_limit(0) == 0);
    CHECK_THROWS_AS(one_over_phi2.infinity_limit(2), DivergenceError);

    const RationalFunction crl3(QPolynomial::monomial(1),
                                cyclotomic(2) * cyclotomic(3) * BigRational(2));
    CHECK(crl3.infinity_limit(2) == BigRational(1, 2));
    CHECK(RationalFunction(QPolynomial::one(), cyclotomic(2) * cyclotomic(3)).infinity_limit(2) ==
          0);
}

TEST_CASE("canonical text form") {
    CHECK(text_form(RationalFunction(-1, 2)) == "-1/2");
    CHECK(text_form(RationalFunction(QPolynomial::monomial(1),
                                     cyclotomic(2) * cyclotomic(3) * BigRational(2))) ==
          "q/(2*Phi2*Phi3)");
    CHECK(text_form(RationalFunction::zero()) == "0");
    CHECK(text_form(RationalFunction::one()) == "1");
    CHECK(text_form(RationalFunction(QPolynomial::monomial(1))) == "q");
    CHECK(text_form(RationalFunction(poly({1, 1}), poly({2}))) == "(q + 1)/2");
    // q^2(q^3+q^2-1)/(2 Phi2 Phi3 Phi4 Phi5) keeps the split-off q power
    const RationalFunction deep(
        poly({0, 0, -1, 0, 1, 1}),
        cyclotomic(2) * cyclotomic(3) * cyclotomic(4) * cyclotomic(5) * BigRational(2));
    CHECK(text_form(deep) == "q^2*(q^3 + q^2 - 1)/(2*Phi2*Phi3*Phi4*Phi5)");
    // non-cyclotomic denominators fall back to the expanded monic form
    CHECK(text_form(RationalFunction(QPolynomial::one(), poly({-2, 1}))) == "1/(q - 2)");
    CHECK(text_form(RationalFunction(QPolynomial::one(), poly({-6, 3}))) == "1/(3*(q - 2))");
    CHECK(text_form(RationalFunction(QPolynomial::one(), cyclotomic(2) * cyclotomic(2))) ==
          "1/(Phi2^2)");
}

TEST_CASE("cyclotomic factorization helper") {
    auto f = cyclotomic_factorization(cyclotomic(2) * cyclotomic(4) * cyclotomic(4));
    REQUIRE(f.has_value());
    REQUIRE(f->size() == 2);
    CHECK((*f)[0] == std::pair<unsigned, unsigned>{2, 1});
    CHECK((*f)[1] == std::pair<unsigned, unsigned>{4, 2});
    CHECK_FALSE(cyclotomic_factorization(poly({-2, 1})).has_value());
    CHECK(cyclotomic_factorization(QPolynomial::one())->empty());
}
