#include "doctest.h"
#include "qosc/engine.hpp"

using namespace qosc;

namespace {
const Scalar q = Scalar::q_pow(1);

Vec one(const Occ& m) { return vec_single(TensorState({m})); }
}  // namespace

TEST_CASE("action table, standard parity n=4 r=2") {
    Eps e = Eps::standard(4, 2);
    // e_0 |0> = |e_1 + e_4>, f_0 |0> = 0
    auto r = act(e, GenLabel::e(0), Occ{0, 0, 0, 0});
    REQUIRE(r);
    CHECK(r->m == Occ{1, 0, 0, 1});
    CHECK(r->zpow == 1);
    CHECK(!act(e, GenLabel::f(0), Occ{0, 0, 0, 0}));
    // f_0 |1,0,0,2> = -[1][2] x^{-1} |0,0,0,1>
    r = act(e, GenLabel::f(0), Occ{1, 0, 0, 2});
    CHECK(r->m == Occ{0, 0, 0, 1});
    CHECK(r->coeff == -qint(2));
    CHECK(r->zpow == -1);
    // e_r |0,2,3,0> = -[2][3] |0,1,2,0>
    r = act(e, GenLabel::e(2), Occ{0, 2, 3, 0});
    CHECK(r->m == Occ{0, 1, 2, 0});
    CHECK(r->coeff == -qint(2) * qint(3));
    CHECK(act(e, GenLabel::f(2), Occ{0, 0, 0, 0})->m == Occ{0, 1, 1, 0});
    // minus side moves particles rightwards under e
    r = act(e, GenLabel::e(1), Occ{3, 0, 0, 0});
    CHECK(r->m == Occ{2, 1, 0, 0});
    CHECK(r->coeff == qint(3));
    r = act(e, GenLabel::f(1), Occ{0, 2, 0, 0});
    CHECK(r->m == Occ{1, 1, 0, 0});
    CHECK(r->coeff == qint(2));
    // plus side moves particles leftwards under e
    r = act(e, GenLabel::e(3), Occ{0, 0, 0, 2});
    CHECK(r->m == Occ{0, 0, 1, 1});
    CHECK(r->coeff == qint(2));
    r = act(e, GenLabel::f(3), Occ{0, 0, 2, 0});
    CHECK(r->m == Occ{0, 0, 1, 1});
    // k_Λ |m> = q^{m_3 + m_4}; k_{δ_1} = q^{-m_1}; k_{δ_4} = q^{m_4 + 1}
    CHECK(act(e, GenLabel::k(Weight::big_lambda(4)), Occ{1, 0, 2, 3})->coeff == q.pow(5));
    CHECK(act(e, GenLabel::k(Weight::delta(4, 1)), Occ{2, 0, 0, 0})->coeff == q.pow(-2));
    CHECK(act(e, GenLabel::k(Weight::delta(4, 4)), Occ{0, 0, 0, 3})->coeff == q.pow(4));
}

TEST_CASE("fermionic slots exclude double occupation") {
    Eps e = Eps::parse("0110", 2);
    CHECK(!act(e, GenLabel::e(1), Occ{1, 1, 0, 0}));
    CHECK(!act(e, GenLabel::f(2), Occ{0, 1, 0, 0}));
    CHECK(act(e, GenLabel::f(2), Occ{0, 0, 0, 0})->m == Occ{0, 1, 1, 0});
    // k_{δ_2} = q_2^{-m_2} with q_2 = -q^{-1}
    CHECK(act(e, GenLabel::k(Weight::delta(4, 2)), Occ{0, 1, 0, 0})->coeff == -q);
}

TEST_CASE("coproduct on two factors") {
    Eps e = Eps::standard(4, 2);
    // Δ(f_r) = f_r ⊗ 1 + k_r ⊗ f_r
    Vec v = vec_single(TensorState({Occ{0, 0, 1, 0}, Occ{0, 0, 0, 0}}));
    Vec out = apply(e, GenLabel::f(2), v);
    CHECK(out.size() == 2);
    CHECK(out[TensorState({Occ{0, 1, 2, 0}, Occ{0, 0, 0, 0}})] == Scalar(1));
    // k_{α_2} on |0,0,1,0>: q^{-1} q^{-1}
    CHECK(out[TensorState({Occ{0, 0, 1, 0}, Occ{0, 1, 1, 0}})] == q.pow(-2));
    // symbolic spectral parameters are tracked per factor
    Vec w = apply(e, GenLabel::e(0), v, Spectral::affine());
    for (const auto& [s, c] : w) CHECK((s.z == std::vector<int>{1, 0} || s.z == std::vector<int>{0, 1}));
    // numeric spectral parameters multiply the coefficient
    Vec u = apply(e, GenLabel::e(0), vec_single(TensorState({Occ{0, 0, 0, 0}})), Spectral::values({q.pow(3)}));
    CHECK(u.begin()->second == q.pow(3));
}

TEST_CASE("relation suite") {
    const char* seqs[] = {"0000", "0101", "0110", "1111", "0011", "1000"};
    for (const char* s : seqs) {
        Eps e = Eps::parse(s, 2);
        auto rels = relation_suite(e);
        auto inputs = relation_inputs(e, 3, 2);
        auto fail = check_relations(e, rels, inputs, Spectral::affine());
        INFO(s, " ", fail ? fail->relation + " on " + fail->input + " -> " + fail->residue : "");
        CHECK(!fail);
    }
}

TEST_CASE("relation suite catches a broken relation") {
    Eps e = Eps::standard(4, 2);
    std::vector<Relation> bogus{{"e0e1", op_bracket(op_gen(GenLabel::e(0)), op_gen(GenLabel::e(1)), Scalar(1))}};
    auto fail = check_relations(e, bogus, relation_inputs(e, 2, 0), Spectral::classical());
    REQUIRE(fail);
    CHECK(fail->relation == "e0e1");
}

TEST_CASE("antipode") {
    Eps e = Eps::parse("0110", 2);
    CHECK(!check_antipode(e, 3));
    OpExpr k = op_gen(GenLabel::k(Weight::delta(4, 2)));
    auto s = antipode(k, 4);
    REQUIRE(s.size() == 1);
    CHECK(s[0].word[0].mu == -Weight::delta(4, 2));
}

TEST_CASE("classical limit") {
    CHECK(!check_classical_limit(4, 2, 5));
    CHECK(!check_classical_limit(5, 2, 3));
}

TEST_CASE("enumeration") {
    Eps e = Eps::parse("0100", 2);
    // total occupation M split into two modules of charges 0 and 1
    auto ts = tensor_states(e, {0, 1}, Occ{1, 0, 1, 1});
    for (const auto& t : ts) {
        CHECK(charge(e, t.f[0]) == 0);
        CHECK(charge(e, t.f[1]) == 1);
    }
    CHECK(ts.size() == 3);
    CHECK(states_up_to(Eps::standard(4, 2), 2).size() == 15);
    CHECK(states_up_to(e, 1).size() == 5);
}
