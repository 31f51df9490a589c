#include "doctest.h"
#include "qosc/scalars.hpp"

#include <random>

using namespace qosc;

namespace {

const Scalar q = Scalar::q_pow(1);

// Oracle: a random rational function built from small Laurent pieces.
Scalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 3), sh(-2, 2);
    auto piece = [&]() {
        std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) c.back() = 1;
        return Scalar::from_laurent(IntPoly(c), sh(rng));
    };
    Scalar a = piece(), b = piece();
    if (b.is_zero()) b = Scalar(1);
    return a / b;
}

}  // namespace

TEST_CASE("q-integers") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1) == Scalar(1));
    CHECK(qint(2) == q + q.inverse());
    CHECK(qint(3) == q * q + 1 + Scalar::q_pow(-2));
    CHECK(qint(-2) == -qint(2));
    CHECK(qfact(3) == qint(2) * qint(3));
    // [m] at q = 2 against (q^m - q^-m)/(q - q^-1)
    for (int m = -5; m <= 5; ++m) {
        mpq_class two = 2, half = mpq_class(1, 2), num = 1, den = 1;
        for (int i = 0; i < std::abs(m); ++i) {
            num *= two;
            den *= half;
        }
        mpq_class expect = (num - den) / (two - half);
        if (m < 0) expect = -expect;
        CHECK(qint(m).eval(2) == expect);
    }
}

TEST_CASE("canonical form is unique") {
    Scalar a = (q * q - 1) / (q - 1);
    CHECK(a == q + 1);
    CHECK(a.is_laurent());
    Scalar b = (Scalar(2) * q + 2) / (Scalar(4) * q * q - 4);
    CHECK(b == Scalar(1) / (Scalar(2) * q - 2));
    CHECK(b.den().lead() > 0);
    CHECK((q - q).is_zero());
    CHECK(Scalar(mpq_class(6, 4)) == Scalar(3) / Scalar(2));
    CHECK((q.pow(5) / q.pow(7)) == Scalar::q_pow(-2));
}

TEST_CASE("field operations agree with evaluation") {
    std::mt19937 rng(7);
    const mpq_class pts[] = {mpq_class(3), mpq_class(-5, 7), mpq_class(11, 2)};
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        for (const auto& x : pts) {
            mpq_class va, vb;
            try {
                va = a.eval(x);
                vb = b.eval(x);
            } catch (const Error&) {
                continue;
            }
            CHECK((a + b).eval(x) == va + vb);
            CHECK((a - b).eval(x) == va - vb);
            CHECK((a * b).eval(x) == va * vb);
            if (vb != 0 && !b.is_zero()) CHECK((a / b).eval(x) == va / vb);
        }
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("gcd over Z[q]") {
    IntPoly x({-1, 1});           // q - 1
    IntPoly y({1, 1});            // q + 1
    IntPoly z({1, 0, 1});         // q^2 + 1
    IntPoly a = x * y * y * z, b = y * z * IntPoly::constant(6);
    IntPoly g = gcd(a, b);
    CHECK(g == y * z);
    CHECK(gcd(IntPoly::constant(4), IntPoly::constant(6)) == IntPoly::constant(2));
}

TEST_CASE("substitutions") {
    Scalar s = (q * q + 1) / (q - 2);
    CHECK(substitute_q(s, 3) == mpq_class(10));
    CHECK_THROWS_AS(substitute_q(s, 2), Error);
    CHECK(substitute_q_power(qint(2), 2) == q * q + Scalar::q_pow(-2));
    CHECK(substitute_q_power(s, -1) == (q.inverse() * q.inverse() + 1) / (q.inverse() - 2));
}

TEST_CASE("text round trip") {
    CHECK(qint(3).str() == "q^2 + 1 + q^-2");
    CHECK(parse_scalar("q^2 + 1 + q^-2") == qint(3));
    CHECK(parse_scalar("-q^-1*(q - q^-1)") == Scalar(-1) + Scalar::q_pow(-2));
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        Scalar a = random_scalar(rng);
        CHECK(parse_scalar(a.str()) == a);
    }
    ZScalar f = parse_zscalar("(1 - q^3*z)/(z - q^3)");
    CHECK(f.den().size() == 2);
    CHECK(parse_zscalar(f.str()) == f);
    CHECK_THROWS_AS(parse_scalar("q + z"), Error);
    CHECK_THROWS_AS(parse_scalar("q +"), Error);
}

TEST_CASE("rational functions in z") {
    ZScalar z = ZScalar::z();
    ZScalar a = (ZScalar(1) - ZScalar(q.pow(3)) * z) / (z - ZScalar(q.pow(3)));
    CHECK(a * a.inverse() == ZScalar(1));
    CHECK((a - a).is_zero());
    CHECK(a.at(Scalar(1)) == Scalar(1));
    CHECK(a.at(Scalar(0)) == -q.pow(-3));
    CHECK_THROWS_AS(a.at(q.pow(3)), Error);
    // f(z) f(1/z) = 1 for this family
    CHECK(a * a.at_inverse_z() == ZScalar(1));
    ZScalar b = (z * z - 1) / (z - 1);
    CHECK(b == z + ZScalar(1));
    CHECK(b.den().size() == 1);
}
