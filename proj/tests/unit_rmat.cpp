#include "doctest.h"
#include "qosc/rmat.hpp"

#include <array>
#include <set>

using namespace qosc;

namespace {

const std::vector<std::pair<int, int>> kPairs = {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, -1}, {-1, -2}};

ZScalar zc(const std::string& s) { return parse_zscalar(s); }

// Affine action on a ZVec: the factor `zslot` carries z, its z bookkeeping is folded into the coefficient.
ZVec act_affine(const Eps& e, const GenLabel& g, const ZVec& v, std::size_t zslot) {
    ZVec out;
    for (const auto& [s, c] : v)
        for (const auto& [s2, x] : apply(e, g, vec_single(s), Spectral::affine())) {
            TensorState t = s2;
            ZScalar k = ZScalar(x) * c;
            int p = t.z[zslot];
            for (int i = 0; i < p; ++i) k *= ZScalar::z();
            for (int i = 0; i > p; --i) k = k / ZScalar::z();
            std::fill(t.z.begin(), t.z.end(), 0);
            zvec_add_to(out, ZVec{{t, ZScalar(1)}}, k);
        }
    return out;
}

// States of W_l ⊗ W_m whose weight lies within `depth` of the top.
std::vector<TensorState> near_top(RMatrix& R, int depth) {
    const Eps& e = R.eps();
    Weight top = weight_of(e, TensorState({top_state(e, R.l()), top_state(e, R.m())}));
    std::vector<TensorState> out;
    for (const auto& m : states_up_to(Eps::standard(e.n(), e.r), 2 * depth + 8)) {
        auto w = occ_weight(e, 2, m);
        int d = depth_below(top, w);
        if (d < 0 || d > depth) continue;
        for (auto& s : tensor_states(e, {R.l(), R.m()}, m)) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("normalizing factor") {
    CHECK(c_norm(1, 0) == ZScalar(1));
    CHECK(c_norm(2, -1) == ZScalar(1));
    CHECK(c_norm(2, 1) == zc("(1 - q^3*z)/(z - q^3)"));
    CHECK(c_norm(1, 1) == zc("(1 - q^2*z)/(z - q^2)"));
    CHECK(c_norm(-1, -2) == zc("(1 - q^3*z)/(z - q^3)"));
    CHECK(c_norm(2, 2) == zc("(1 - q^2*z)/(z - q^2)") * zc("(1 - q^4*z)/(z - q^4)"));
}

TEST_CASE("solved coefficients follow the product formula") {
    Eps e = Eps::standard(4, 2);
    for (auto [l, m] : kPairs) {
        INFO("l=", l, " m=", m);
        RMatrix R(e, l, m);
        const auto& c = R.solve_upto(3, 3);
        CHECK(c.rho.at(0) == ZScalar(1));
        CHECK(c.not_proportional.empty());
        for (int t = 1; t <= 3; ++t) {
            ZScalar ratio = c.rho.at(t) / c.rho.at(t - 1) / closed_form_factor(l, m, t);
            CHECK(ratio.is_constant());
            CHECK(!ratio.is_zero());
        }
    }
}

TEST_CASE("equal charges: identity at z = 1") {
    Eps e = Eps::standard(4, 2);
    for (int l : {0, 1, -1}) {
        RMatrix R(e, l, l);
        const auto& c = R.solve(3);
        for (const auto& [t, r] : c.rho) CHECK(r.at(Scalar(1)) == Scalar(1));
        for (const auto& s : near_top(R, 2)) {
            Vec v = vec_single(s);
            CHECK(vec_is_zero(vec_sub(R.apply_at(v, Scalar(1)), v)));
        }
    }
}

TEST_CASE("solution intertwines every generator") {
    Eps e = Eps::standard(4, 2);
    for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, -1}}) {
        INFO("l=", l, " m=", m);
        RMatrix R(e, l, m);
        R.solve(3);
        std::vector<GenLabel> gens{GenLabel::e(0), GenLabel::f(0)};
        for (int i = 1; i < e.n(); ++i) {
            gens.push_back(GenLabel::e(i));
            gens.push_back(GenLabel::f(i));
        }
        for (const auto& s : near_top(R, 1))
            for (const auto& g : gens) {
                ZVec gs = act_affine(e, g, ZVec{{s, ZScalar(1)}}, 0);
                ZVec lhs;
                for (const auto& [s2, c] : gs) zvec_add_to(lhs, R.apply(vec_single(s2)), c);
                ZVec rhs = act_affine(e, g, R.apply(vec_single(s)), 1);
                zvec_add_to(lhs, rhs, ZScalar(-1));
                INFO(g.str(), " on ", s.str());
                CHECK(zvec_is_zero(lhs));
            }
    }
}

TEST_CASE("components are classical intertwiners") {
    Eps e = Eps::standard(4, 2);
    for (auto [l, m] : kPairs) {
        RMatrix R(e, l, m);
        auto f = R.check_classical(3);
        CHECK_MESSAGE(!f, (f ? f->relation + " " + f->input : ""));
    }
}

TEST_CASE("unitarity") {
    Eps e = Eps::standard(4, 2);
    for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 0}, {2, -1}, {0, 0}}) {
        RMatrix fwd(e, l, m), rev(e, m, l);
        fwd.solve(3);
        rev.solve(3);
        auto f = unitarity_check(fwd, rev, 2);
        CHECK_MESSAGE(!f, (f ? f->relation + " " + f->input + " " + f->residue : ""));
    }
}

TEST_CASE("specialization poles") {
    Eps e = Eps::standard(4, 2);
    RMatrix R(e, 0, 0);
    R.solve(2);
    CHECK_THROWS_WITH_AS(R.rho_at(1, Scalar::q_pow(2)), doctest::Contains("t=1, a=1"), Error);
    CHECK(R.rho_at(1, Scalar::q_pow(-2)).is_zero());
    CHECK(R.rho_at(2, Scalar::q_pow(-4)).is_zero());
    RMatrix S(e, 2, 1);
    CHECK_THROWS_WITH_AS(S.rho_at(2, Scalar::q_pow(3)), doctest::Contains("spectral-parameter collision"), Error);
    CHECK_THROWS_WITH_AS(S.rho_at(3, Scalar::q_pow(7)), doctest::Contains("a=3"), Error);
}

TEST_CASE("braid relation") {
    Eps e = Eps::standard(4, 2);
    for (auto k : std::vector<std::array<int, 3>>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}) {
        INFO(k[0], k[1], k[2]);
        auto rep = yang_baxter_check(e, k[0], k[1], k[2], 2);
        CHECK(rep.states > 0);
        CHECK_MESSAGE(!rep.failure, (rep.failure ? rep.failure->relation + " " + rep.failure->input : ""));
    }
}

TEST_CASE("fusion of one and two factors") {
    Eps e = Eps::standard(4, 2);
    auto one = fusion_image(e, {1}, {Scalar(1)}, 4);
    CHECK(one.character == module_census(e, 1, 4));
    auto two = fusion_image(e, {1, 0}, {Scalar(2), Scalar(1)}, 4);
    for (const auto& [M, rd] : two.ranks) CHECK(rd.first == rd.second);
    CHECK(two.character == module_census(e, 1, 4) * module_census(e, 0, 4));
}

TEST_CASE("KR modules") {
    Eps e = Eps::standard(4, 2);
    const int D = 4;
    CHECK(kr_nonzero(e, 1, 2));
    CHECK(!kr_nonzero(e, 1, 3));
    CHECK(kr_nonzero(e, 0, 5));
    CHECK(!kr_nonzero(e, -1, 3));

    auto w12 = kr_module(e, 1, 2, Scalar(1), D);
    CHECK(w12.character == osc_character({1, 1}, 2, 4, D));
    auto w13 = kr_module(e, 1, 3, Scalar(1), 3);
    CHECK(w13.zero());

    // t^2 Σ_{ℓ(μ) ≤ 2} s_μ(x) s_μ(y)
    auto w02 = kr_module(e, 0, 2, Scalar(1), D);
    CharPoly expect(2, 2, D);
    for (int k = 0; 2 * k <= D; ++k)
        for (const auto& mu : partitions_of(k, 2)) expect = expect + CharPoly::from_blocks(2, 2, D, 2, schur(mu, 2, D), schur(mu, 2, D));
    CHECK(w02.character == expect);
}
