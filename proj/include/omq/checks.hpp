#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "omq/bundle.hpp"

namespace omq {

struct CheckReport {
    std::string name;
    int order = 0;
    bool passed = true;
    std::vector<std::string> lines;  // details; first entry explains a failure

    void fail(const std::string& why) {
        if (passed) lines.insert(lines.begin(), why);
        passed = false;
    }
};

namespace testing {

using Rng = std::mt19937_64;

inline Tree random_tree(Rng& rng, int n) {
    const auto& all = enumerate_trees(n);
    return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}

inline Pbt random_pbt(Rng& rng, int n) {
    const auto& all = enumerate_pbt(n);
    return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}

inline Forest random_forest(Rng& rng, int degree) {
    std::vector<Tree> comps;
    int left = degree;
    while (left > 0) {
        const int size = std::uniform_int_distribution<int>(1, left)(rng);
        comps.push_back(random_tree(rng, size));
        left -= size;
    }
    return Forest(std::move(comps));
}

inline RationalFunction random_coefficient(Rng& rng, bool with_q) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    int p = num(rng);
    if (p == 0) p = 1;
    RationalFunction c(make_rational(p, den(rng)));
    if (with_q) c = c.shifted(std::uniform_int_distribution<unsigned>(0, 2)(rng));
    return c;
}

/// Sparse series with a few random terms in every degree up to the order.
inline TreeSeries random_tree_series(Rng& rng, int order, bool with_q = false) {
    TreeSeries s(order);
    for (int n = 1; n <= order; ++n) {
        const int picks = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < picks; ++i)
            s.add_term(random_tree(rng, n), random_coefficient(rng, with_q));
    }
    return s;
}

inline DendSeries random_dend_series(Rng& rng, int order, bool with_q = false) {
    DendSeries s(order);
    for (int n = 1; n <= order; ++n) {
        const int picks = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < picks; ++i)
            s.part.add_term(random_pbt(rng, n), random_coefficient(rng, with_q));
    }
    return s;
}

/// Random triples of basis trees with total degree <= order, checked against
/// the three dendriform axioms and associativity of the sum product.
inline bool dendriform_axioms_hold(int order, int trials = 60, unsigned seed = 2028) {
    Rng rng(seed);
    for (int i = 0; i < trials; ++i) {
        const int a = std::uniform_int_distribution<int>(1, order - 2)(rng);
        const int b = std::uniform_int_distribution<int>(1, std::max(1, order - a - 1))(rng);
        const int c = std::uniform_int_distribution<int>(1, std::max(1, order - a - b))(rng);
        if (a + b + c > order) continue;
        const DendSeries x = [&] {
            DendSeries s(order);
            s.part.add_term(random_pbt(rng, a), RationalFunction::one());
            return s;
        }();
        const DendSeries y = [&] {
            DendSeries s(order);
            s.part.add_term(random_pbt(rng, b), RationalFunction::one());
            return s;
        }();
        const DendSeries z = [&] {
            DendSeries s(order);
            s.part.add_term(random_pbt(rng, c), RationalFunction::one());
            return s;
        }();
        if (!(dend_prec(x, dend_mul(y, z)) == dend_prec(dend_prec(x, y), z))) return false;
        if (!(dend_succ(x, dend_prec(y, z)) == dend_prec(dend_succ(x, y), z))) return false;
        if (!(dend_succ(x, dend_succ(y, z)) == dend_succ(dend_mul(x, y), z))) return false;
        if (!(dend_mul(dend_mul(x, y), z) == dend_mul(x, dend_mul(y, z)))) return false;
    }
    return true;
}

/// The pre-Lie axiom for x <- y = y > x - x < y on random basis triples.
inline bool dend_prelie_axiom_holds(int order, int trials = 60, unsigned seed = 2029) {
    Rng rng(seed);
    for (int i = 0; i < trials; ++i) {
        const int a = std::uniform_int_distribution<int>(1, order - 2)(rng);
        const int b = std::uniform_int_distribution<int>(1, std::max(1, order - a - 1))(rng);
        const int c = std::uniform_int_distribution<int>(1, std::max(1, order - a - b))(rng);
        if (a + b + c > order) continue;
        DendSeries x(order), y(order), z(order);
        x.part.add_term(random_pbt(rng, a), RationalFunction::one());
        y.part.add_term(random_pbt(rng, b), RationalFunction::one());
        z.part.add_term(random_pbt(rng, c), RationalFunction::one());
        const DendSeries lhs =
            dend_prelie(dend_prelie(x, y), z) - dend_prelie(x, dend_prelie(y, z));
        const DendSeries rhs =
            dend_prelie(dend_prelie(x, z), y) - dend_prelie(x, dend_prelie(z, y));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace testing

// ---------------------------------------------------------------------------
// Registered checks. Each one exercises a library identity at a given order
// and reports the first counterexample on failure.

inline CheckReport check_prelie_axiom(int order) {
    CheckReport report{"prelie-axiom", order};
    testing::Rng rng(2024);
    const int trials = 60;
    for (int i = 0; i < trials; ++i) {
        std::uniform_int_distribution<int> pick(1, std::max(1, order - 2));
        const int a = pick(rng);
        const int b = std::uniform_int_distribution<int>(1, std::max(1, order - a - 1))(rng);
        const int c = std::uniform_int_distribution<int>(1, std::max(1, order - a - b))(rng);
        if (a + b + c > order) continue;
        const TreeSeries x = tree_series(testing::random_tree(rng, a), order);
        const TreeSeries y = tree_series(testing::random_tree(rng, b), order);
        const TreeSeries z = tree_series(testing::random_tree(rng, c), order);
        const TreeSeries lhs = graft(graft(x, y), z) - graft(x, graft(y, z));
        const TreeSeries rhs = graft(graft(x, z), y) - graft(x, graft(z, y));
        if (!(lhs == rhs)) {
            report.fail("associator asymmetry on trial " + std::to_string(i));
            return report;
        }
    }
    report.lines.push_back(std::to_string(trials) + " random triples, total degree <= " +
                           std::to_string(order));
    return report;
}

inline CheckReport check_pi_exp(int order) {
    CheckReport report{"pi-exp", order};
    testing::Rng rng(2025);
    for (int i = 0; i < 60; ++i) {
        const int fdeg = std::uniform_int_distribution<int>(1, order - 1)(rng);
        const int tdeg = std::uniform_int_distribution<int>(1, order - fdeg)(rng);
        const Forest f = testing::random_forest(rng, fdeg);
        const Tree t = testing::random_tree(rng, tdeg);
        ForestSeries fs(order);
        fs.add_term(f, RationalFunction::one());
        ForestSeries ts(order);
        ts.add_term(Forest(t), RationalFunction::one());
        const TreeSeries lhs = project_pi(star_product(fs, ts));
        const TreeSeries rhs = graft(project_pi(fs), tree_series(t, order));
        if (!(lhs == rhs)) {
            report.fail("pi(F * T) != pi(F) <- T for F = " + f.encode() +
                        ", T = " + canonical_encode(t));
            return report;
        }
    }
    report.lines.push_back("60 random forest/tree pairs");
    return report;
}

inline CheckReport check_exp_star(int order) {
    CheckReport report{"exp-star", order};
    testing::Rng rng(2026);
    for (int i = 0; i < 20; ++i) {
        const TreeSeries s = testing::random_tree_series(rng, order, i % 2 == 1);
        if (!(project_pi(exp_forest(s, order)) == exp_star_action(s, order))) {
            report.fail("pi(exp(s)) != exp*(s) for random series " + std::to_string(i));
            return report;
        }
    }
    const TreeSeries omega = omega_classical(order);
    if (!(exp_star_action(omega, order) == tree_series(single_vertex(), order))) {
        report.fail("exp*(omega) is not the single vertex");
        return report;
    }
    report.lines.push_back("20 random series; exp*(omega) = vertex");
    return report;
}

inline CheckReport check_exp_omega_forest(int order) {
    CheckReport report{"exp-omega-forest", order};
    const ForestSeries lhs = exp_forest(omega_classical(order), order);
    ForestSeries expected(order);
    BigRational inv_factorial(1);
    expected.add_term(Forest{}, RationalFunction::one());
    for (int n = 1; n <= order; ++n) {
        inv_factorial /= n;
        expected.add_term(Forest(std::vector<Tree>(n, single_vertex())),
                          RationalFunction(inv_factorial));
    }
    if (!(lhs == expected)) report.fail("exp(omega) is not the sum of bare forests / n!");
    return report;
}

inline CheckReport check_fork_equivalence(int order) {
    CheckReport report{"fork-equivalence", order};
    const TreeSeries a = omega_q(order);
    const TreeSeries b = omega_q_via_forks(order);
    if (!(a == b)) {
        for (int n = 1; n <= order; ++n)
            if (!(a.degree_slice(n) == b.degree_slice(n))) {
                report.fail("routes differ first at degree " + std::to_string(n));
                return report;
            }
        report.fail("routes differ");
    }
    return report;
}

inline CheckReport check_dend_formula(int order) {
    CheckReport report{"dend-formula", order};
    const DendSeries rec = omega_q_dend_recursive(order);
    const DendSeries exp = omega_q_dend_explicit(order);
    if (!(rec == exp)) {
        for (int n = 1; n <= order; ++n)
            if (!(rec.part.degree_slice(n) == exp.part.degree_slice(n))) {
                report.fail("recursion and closed formula differ first at degree " +
                            std::to_string(n));
                return report;
            }
        report.fail("recursion and closed formula differ");
    }
    return report;
}

inline CheckReport check_q1_specialization(int order) {
    CheckReport report{"q1-specialization", order};
    try {
        if (!(specialize(omega_q(order), SpecialPoint::One) == omega_classical(order)))
            report.fail("value at q=1 differs from the classical series");
    } catch (const PoleError& e) {
        report.fail(std::string("unexpected pole: ") + e.what());
    }
    return report;
}

inline CheckReport check_denominators(int order) {
    CheckReport report{"denominators", order};
    const DenominatorReport inner = denominator_check(omega_q(order));
    if (!inner.ok) report.fail("denominator exceeds the cyclotomic bound: " + *inner.violation);
    report.lines.insert(report.lines.end(), inner.lines.begin(), inner.lines.end());
    return report;
}

inline CheckReport check_infinity(int order) {
    CheckReport report{"infinity", order};
    const TreeSeries base = omega_q(order);
    for (const auto& [t, c] : base.terms()) {
        if (c.infinity_valuation() < t->degree() - 1) {
            report.fail("valuation below degree-1 bound at " + canonical_encode(t));
            return report;
        }
    }
    if (!(omega_infinity(order, InfinityMode::Limit) ==
          omega_infinity(order, InfinityMode::ClosedForm)))
        report.fail("limit and closed form disagree");
    return report;
}

inline CheckReport check_carlitz(int order) {
    CheckReport report{"carlitz", order};
    const auto extracted = extract_carlitz(omega_q(order));
    const auto oracle = carlitz_oracle(order);
    for (size_t n = 0; n < extracted.size(); ++n) {
        if (!(extracted[n] == oracle[n])) {
            report.fail("beta_" + std::to_string(n) + " differs from the umbral recursion");
            return report;
        }
        if (!(extracted[n].eval_at(1) == bernoulli(static_cast<unsigned>(n)))) {
            report.fail("beta_" + std::to_string(n) + "(1) is not the Bernoulli number");
            return report;
        }
    }
    report.lines.push_back("beta_0.." + std::to_string(extracted.size() - 1) +
                           " match the umbral recursion and specialize to Bernoulli numbers");
    return report;
}

inline CheckReport check_qlog(int order) {
    CheckReport report{"qlog", order};
    const auto values = extract_qlog(omega_q(order));
    for (int n = 1; n <= order; ++n) {
        const RationalFunction expected(
            QPolynomial(BigRational(n % 2 == 1 ? 1 : -1)), q_integer(static_cast<unsigned>(n)));
        if (!(values[n - 1] == expected)) {
            report.fail("chain coefficient differs from (-1)^{n-1}/[n]_q at n = " +
                        std::to_string(n));
            return report;
        }
    }
    return report;
}

inline CheckReport check_comb_inverse(int order) {
    CheckReport report{"comb-inverse", order};
    const DendSeries lhs = dend_mul(DendSeries::one(order) - suspension(left_combs(order)),
                                    DendSeries::one(order) + right_combs(order));
    if (!(lhs == DendSeries::one(order))) report.fail("(1 - suL) * (1 + R) is not 1");
    return report;
}

inline CheckReport check_EB(int order) {
    CheckReport report{"EB", order};
    const EBReport inner = verify_EB(order);
    if (!inner.ok)
        report.fail(inner.detail + " at degree " + std::to_string(*inner.first_failing_degree));
    return report;
}

inline CheckReport check_vector_field(int order) {
    CheckReport report{"vector-field", order};
    testing::Rng rng(2027);
    try {
        const auto image = vector_field_image(omega_classical(order));
        if (order >= 3 && !(image[2] == RationalFunction(5, 12)))
            report.fail("degree-3 image of the classical series should be 5/12");
        for (int i = 0; i < 10; ++i)
            vector_field_image(testing::random_tree_series(rng, order, i % 2 == 1));
    } catch (const InternalConsistencyError& e) {
        report.fail(e.what());
    }
    return report;
}

struct RegisteredCheck {
    std::function<CheckReport(int)> run;
    int default_order;
};

inline const std::map<std::string, RegisteredCheck>& check_registry() {
    static const std::map<std::string, RegisteredCheck> registry = {
        {"prelie-axiom", {check_prelie_axiom, 8}},
        {"pi-exp", {check_pi_exp, 8}},
        {"exp-star", {check_exp_star, 6}},
        {"exp-omega-forest", {check_exp_omega_forest, 8}},
        {"fork-equivalence", {check_fork_equivalence, 6}},
        {"dend-formula", {check_dend_formula, 6}},
        {"q1-specialization", {check_q1_specialization, 10}},
        {"denominators", {check_denominators, 10}},
        {"infinity", {check_infinity, 8}},
        {"carlitz", {check_carlitz, 10}},
        {"qlog", {check_qlog, 12}},
        {"comb-inverse", {check_comb_inverse, 10}},
        {"EB", {check_EB, 10}},
        {"vector-field", {check_vector_field, 6}},
    };
    return registry;
}

}  // namespace omq
