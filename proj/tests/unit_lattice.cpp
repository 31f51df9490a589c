#include "doctest.h"
#include "qosc/lattice.hpp"

using namespace qosc;

TEST_CASE("parity sequences") {
    Eps e = Eps::parse("0110", 2);
    CHECK(e.n() == 4);
    CHECK(e.at(0) == e.at(4));
    CHECK(is_odd_root(e, 1));
    CHECK(!is_odd_root(e, 2));
    CHECK(is_odd_root(e, 3));
    CHECK(!is_odd_root(e, 0));
    CHECK_THROWS_AS(Eps::parse("0120", 2), Error);
    CHECK_THROWS_AS(Eps::parse("0000", 4), Error);
}

TEST_CASE("bilinear form") {
    Eps e = Eps::parse("0101", 2);
    int n = 4;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            CHECK(bilinear(e, Weight::delta(n, i), Weight::delta(n, j)) == (i == j ? (e.at(i) ? -1 : 1) : 0));
    Weight L = Weight::big_lambda(n);
    CHECK(bilinear(e, L, L) == 0);
    CHECK(bilinear(e, Weight::delta(n, 1), L) == 0);
    CHECK(bilinear(e, Weight::delta(n, 3), L) == 1);
    for (int i = 0; i < n; ++i) {
        Weight a = simple_root(n, i);
        CHECK((bilinear(e, a, a) == 0) == is_odd_root(e, i));
    }
}

TEST_CASE("q-forms") {
    Eps e = Eps::parse("0110", 2);
    int n = 4;
    Weight d2 = Weight::delta(n, 2);
    // q_2 = -q^{-1}
    CHECK(qform(e, d2 * 3, d2) == Scalar(-1) * Scalar::q_pow(-3));
    CHECK(qform(e, Weight::delta(n, 1) * 2, Weight::delta(n, 1)) == Scalar::q_pow(2));
    // the level correction only sees the plus side
    Weight L = Weight::big_lambda(n);
    Weight w = L + Weight::delta(n, 3) * 2;
    CHECK(qhat(e, w, Weight::delta(n, 3)) == Scalar::q_pow(-1));
    CHECK(qhat(e, L + Weight::delta(n, 3), Weight::delta(n, 3)) == Scalar(-1));
    CHECK(qhat(e, w, L) == Scalar::q_pow(2));
    CHECK(qhat(e, Weight::delta(n, 1), L) == Scalar(1));
}

TEST_CASE("pairing with the classical lattice") {
    int n = 5, r = 2;
    Eps e = Eps::standard(n, r);
    // Cartan matrix of affine type A
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Weight a = to_classical_weight(simple_root(n, j, true));
            int expect = i == j ? 2 : (((i - j + n) % n == 1 || (j - i + n) % n == 1) ? -1 : 0);
            CHECK(pairing(a, simple_coroot(n, r, i)) == expect);
        }
    // <Λ_r, c> = 1 and <Λ_r, α_r^∨> = 1
    Weight Lr(1, std::vector<int>(n, 0));
    CHECK(pairing(Lr, simple_coroot(n, r, r)) == 1);
    // the form is the pairing through the identification
    std::vector<Weight> basis{Weight::big_lambda(n)};
    for (int i = 1; i <= n; ++i) basis.push_back(Weight::delta(n, i));
    for (const auto& a : basis)
        for (const auto& b : basis) CHECK(bilinear(e, a, b) == pairing(to_classical_weight(a), to_coweight(e, b)));
    Weight w(3, {1, -2, 0, 4, 1}, 2);
    CHECK(cl(w).k == 0);
    CHECK(cl(iota(cl(w))) == cl(w));
}

TEST_CASE("occupations and weights") {
    Eps e = Eps::parse("0100", 2);
    Occ m{2, 1, 3, 0};
    CHECK(occ_valid(e, m));
    CHECK(!occ_valid(e, Occ{0, 2, 0, 0}));
    CHECK(charge(e, m) == 0);
    Weight w = occ_weight(e, 1, m);
    CHECK(w == Weight(1, {-2, -1, 3, 0}));
    CHECK(*weight_occ(e, w) == m);
    CHECK(!weight_occ(e, Weight(1, {1, 0, 0, 0})));
}

TEST_CASE("filling rule") {
    // standard parity, n = 8, r = 3, λ = (4,2,2,0,0,-1,-3)
    Eps e = Eps::standard(8, 3);
    auto m = filling_occupation(e, {4, 2, 2, 0, 0, -1, -3});
    REQUIRE(m);
    CHECK(*m == Occ{0, 1, 3, 4, 2, 2, 0, 0});
    // standard parity: rows go to consecutive slots
    CHECK(*filling_occupation(e, {2, 1}) == Occ{0, 0, 0, 2, 1, 0, 0, 0});
    // all odd: columns
    Eps odd = Eps::parse("1111", 2);
    CHECK(*filling_occupation(odd, {2}) == Occ{0, 0, 1, 1});
    CHECK(!filling_occupation(odd, {3}));
    CHECK(*filling_occupation(odd, {-2}) == Occ{1, 1, 0, 0});
    // mixed: column at slot r then row at r-1
    Eps mixed = Eps::parse("010101010", 4);
    CHECK(*filling_occupation(mixed, {-3}) == Occ{0, 0, 2, 1, 0, 0, 0, 0, 0});
    CHECK(*filling_occupation(mixed, {1, -1}) == Occ{0, 0, 0, 1, 1, 0, 0, 0, 0});
    CHECK_THROWS_AS(filling_occupation(e, {1, 2}), Error);
}

TEST_CASE("depth") {
    Weight top(2, {0, 0, 1, 0});
    Weight mu = top - simple_root(4, 2) - simple_root(4, 3);
    CHECK(depth_below(top, mu) == 2);
    CHECK(depth_below(top, top) == 0);
    CHECK(depth_below(mu, top) == -1);
    CHECK(depth_below(top, Weight(1, {0, 0, 1, 0})) == -1);
}
