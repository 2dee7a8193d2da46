#include <doctest.h>

#include <random>
#include <vector>

#include "graphcohom/exterior.hpp"

using namespace gcoh;

namespace {

// Bubble sort with one sign flip per adjacent swap of two odd items.
int bubble_sign(std::vector<int> keys, std::vector<int> degs)
{
    int sign = 1;
    for (std::size_t pass = 0; pass < keys.size(); ++pass) {
        for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
            if (keys[i] > keys[i + 1]) {
                std::swap(keys[i], keys[i + 1]);
                if (degs[i] % 2 != 0 && degs[i + 1] % 2 != 0)
                    sign = -sign;
                std::swap(degs[i], degs[i + 1]);
            }
        }
    }
    return sign;
}

// The wedge of two monomials as a concatenation of odd generators, then sorted.
int wedge_oracle(EdgeSubset a, EdgeSubset b)
{
    std::vector<int> keys;
    for (std::size_t e : a.indices())
        keys.push_back(static_cast<int>(e));
    for (std::size_t e : b.indices())
        keys.push_back(static_cast<int>(e));
    return bubble_sign(keys, std::vector<int>(keys.size(), 1));
}

}  // namespace

TEST_CASE("wedge signs")
{
    auto w = wedge(EdgeSubset(0b10), EdgeSubset(0b01));
    REQUIRE(w);
    CHECK(w->sign == -1);
    CHECK(w->monomial == EdgeSubset(0b11));
    CHECK_FALSE(wedge(EdgeSubset(0b11), EdgeSubset(0b10)));
    CHECK(wedge(EdgeSubset(0), EdgeSubset(0b101))->sign == 1);

    for (std::uint64_t a = 0; a < 64; ++a) {
        for (std::uint64_t b = 0; b < 64; ++b) {
            auto r = wedge(EdgeSubset(a), EdgeSubset(b));
            if (a & b) {
                CHECK_FALSE(r);
                continue;
            }
            REQUIRE(r);
            CHECK(r->sign == wedge_oracle(EdgeSubset(a), EdgeSubset(b)));
        }
    }
}

TEST_CASE("removal sign counts preceding generators from zero")
{
    CHECK(removal_sign(EdgeSubset(0b111), 0) == 1);
    CHECK(removal_sign(EdgeSubset(0b111), 1) == -1);
    CHECK(removal_sign(EdgeSubset(0b111), 2) == 1);
    CHECK(removal_sign(EdgeSubset(0b100), 2) == 1);
    CHECK_THROWS(removal_sign(EdgeSubset(0b101), 1));
    // e ∧ (S∖e) = removal_sign(S, e) · S
    for (std::uint64_t s = 1; s < 256; ++s) {
        for (std::size_t e : EdgeSubset(s).indices()) {
            auto w = wedge(EdgeSubset::single(e), EdgeSubset(s).without(e));
            CHECK(w->sign == removal_sign(EdgeSubset(s), e));
        }
    }
}

TEST_CASE("koszul_move_sign against explicit transpositions")
{
    std::vector<int> d{1, 2, 1, 1, 3};
    CHECK(koszul_move_sign(d, 0, 1) == 1);   // odd past even
    CHECK(koszul_move_sign(d, 0, 2) == -1);  // odd past even, odd
    CHECK(koszul_move_sign(d, 3, 3) == 1);
    CHECK_THROWS(koszul_move_sign(d, 0, 5));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<int> degs(n);
        for (auto& x : degs)
            x = static_cast<int>(rng() % 4);
        const std::size_t from = rng() % n, to = rng() % n;
        // Moving item `from` to `to` is the stable sort of these keys.
        std::vector<int> keys(n);
        for (std::size_t i = 0; i < n; ++i)
            keys[i] = 2 * static_cast<int>(i);
        keys[from] = from < to ? 2 * static_cast<int>(to) + 1 : 2 * static_cast<int>(to) - 1;
        CHECK(koszul_move_sign(degs, from, to) == bubble_sign(keys, degs));
    }
}

TEST_CASE("koszul_sort_sign against bubble sort")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = rng() % 8;
        std::vector<int> keys(n), degs(n);
        for (std::size_t i = 0; i < n; ++i) {
            keys[i] = static_cast<int>(rng() % 4);
            degs[i] = static_cast<int>(rng() % 3);
        }
        CHECK(koszul_sort_sign(keys, degs) == bubble_sign(keys, degs));
    }
    CHECK_THROWS(koszul_sort_sign(std::vector<int>{1}, std::vector<int>{}));
}
