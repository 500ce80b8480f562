#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "omq/pbt.hpp"

using namespace omq;

TEST_CASE("planar binary tree counts are Catalan numbers") {
    const std::vector<size_t> expected = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (int n = 0; n <= 10; ++n) {
        CHECK(enumerate_pbt(n).size() == expected[n]);
        CHECK(catalan(n) == BigInt(expected[n]));
    }
}

TEST_CASE("encodings round-trip") {
    CHECK(pbt_encode(pbt_leaf()) == ".");
    CHECK(pbt_encode(pbt_vertex()) == "(..)");
    CHECK(pbt_encode(left_comb(2)) == "((..).)");
    CHECK(pbt_encode(right_comb(2)) == "(.(..))");
    CHECK_THROWS_AS(parse_pbt("(.."), std::invalid_argument);
    CHECK_THROWS_AS(parse_pbt("(..)x"), std::invalid_argument);
    for (int n = 0; n <= 6; ++n)
        for (Pbt t : enumerate_pbt(n)) CHECK(parse_pbt(pbt_encode(t)) == t);
}

TEST_CASE("combs") {
    CHECK(left_comb(1) == pbt_vertex());
    CHECK(right_comb(1) == pbt_vertex());
    CHECK(left_comb(3) == pbt_node(left_comb(2), pbt_leaf()));
    CHECK(right_comb(3) == pbt_node(pbt_leaf(), right_comb(2)));
    CHECK(left_comb(4)->degree() == 4);
}

TEST_CASE("descents and major index") {
    for (int n = 1; n <= 6; ++n) CHECK(descent_set(left_comb(n)).empty());
    CHECK(descent_set(right_comb(2)) == std::set<int>{1});
    CHECK(major_index(right_comb(2)) == 1);
    // the full right comb has every inner leaf as a descent
    CHECK(descent_set(right_comb(4)) == std::set<int>({1, 2, 3}));
    CHECK(major_index(right_comb(4)) == 6);

    SECTION("descent count is between 0 and n-1") {
        for (int n = 1; n <= 8; ++n)
            for (Pbt t : enumerate_pbt(n)) {
                const int d = static_cast<int>(descent_set(t).size());
                CHECK(d >= 0);
                CHECK(d <= n - 1);
            }
    }
    SECTION("descent classes partition the trees") {
        for (int n = 1; n <= 8; ++n) {
            std::map<std::set<int>, size_t> classes;
            for (Pbt t : enumerate_pbt(n)) ++classes[descent_set(t)];
            size_t total = 0;
            for (const auto& [d, count] : classes) {
                for (int x : d) {
                    CHECK(x >= 1);
                    CHECK(x <= n - 1);
                }
                total += count;
            }
            CHECK(total == enumerate_pbt(n).size());
            // every subset of {1..n-1} occurs as a descent set
            CHECK(classes.size() == static_cast<size_t>(1) << (n - 1));
        }
    }
    SECTION("major index dominates the minimal staircase sum") {
        for (int n = 1; n <= 7; ++n)
            for (Pbt t : enumerate_pbt(n)) {
                const int d = static_cast<int>(descent_set(t).size());
                CHECK(major_index(t) >= d * (d + 1) / 2);
            }
    }
}
