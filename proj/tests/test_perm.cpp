#include "doctest.h"

#include <algorithm>
#include <random>

#include "dpd/perm.hpp"

using namespace dpd;

TEST_CASE("unshuffle enumeration") {
    auto u03 = enumerate_unshuffles(0, 3);
    REQUIRE(u03.size() == 1);
    CHECK(u03[0] == Perm::identity(3));

    auto u21 = enumerate_unshuffles(2, 1);
    REQUIRE(u21.size() == 3);
    CHECK(u21[0].img == std::vector<int>{1, 2, 3});
    CHECK(u21[1].img == std::vector<int>{1, 3, 2});
    CHECK(u21[2].img == std::vector<int>{2, 3, 1});

    auto u11 = enumerate_unshuffles(1, 1);
    REQUIRE(u11.size() == 2);
    CHECK(u11[0] == Perm::identity(2));
    CHECK(u11[1].img == std::vector<int>{2, 1});
}

TEST_CASE("unshuffle count, distinctness and monotonicity") {
    auto binom = [](int n, int k) {
        long b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return b;
    };
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
            auto us = enumerate_unshuffles(p, q);
            CHECK(static_cast<long>(us.size()) == binom(p + q, p));
            for (size_t i = 0; i < us.size(); ++i) {
                CHECK(us[i].is_valid());
                for (int j = 1; j < p; ++j) CHECK(us[i](j) < us[i](j + 1));
                for (int j = p + 1; j < p + q; ++j) CHECK(us[i](j) < us[i](j + 1));
                for (size_t j = i + 1; j < us.size(); ++j) CHECK(!(us[i] == us[j]));
            }
        }
}

TEST_CASE("permutation sign") {
    CHECK(perm_sign(Perm::identity(4)) == 1);
    CHECK(perm_sign(Perm({2, 1})) == -1);
    CHECK(perm_sign(Perm({2, 3, 1})) == 1);
}

TEST_CASE("sign is a homomorphism") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        auto rand_perm = [&]() {
            std::vector<int> v(n);
            for (int i = 0; i < n; ++i) v[i] = i + 1;
            std::shuffle(v.begin(), v.end(), rng);
            return Perm(v);
        };
        Perm a = rand_perm(), b = rand_perm();
        CHECK(perm_sign(compose(a, b)) == perm_sign(a) * perm_sign(b));
    }
}

TEST_CASE("koszul sign basics") {
    CHECK(koszul_sign({2, 4}, Perm({2, 1})) == 1);
    CHECK(koszul_sign({1, 1}, Perm({2, 1})) == -1);
    CHECK(koszul_sign({1, 1, 1}, Perm({2, 3, 1})) == 1);
}

TEST_CASE("koszul sign: all-even, all-odd, independence of decomposition") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        std::shuffle(v.begin(), v.end(), rng);
        Perm s(v);
        std::vector<long> degs(n);
        for (auto& d : degs) d = static_cast<long>(rng() % 5) - 2;
        CHECK(koszul_sign(degs, s) == koszul_sign_by_inversions(degs, s));

        std::vector<long> evens(n, 2), odds(n, -1);
        CHECK(koszul_sign(evens, s) == 1);
        CHECK(koszul_sign(odds, s) == perm_sign(s));
    }
}
