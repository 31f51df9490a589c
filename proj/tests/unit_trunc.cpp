#include "doctest.h"
#include "qosc/trunc.hpp"

using namespace qosc;

namespace {

std::vector<EpsEmbedding> embeddings() {
    return {EpsEmbedding(Eps::parse("01000", 3), {2}), eps_ab_zeros(2, 2), eps_ab_ones(2, 2),
            EpsEmbedding(Eps::parse("010010", 3), {2, 5})};
}

std::string fail_text(const std::optional<RelationFailure>& f) { return f ? f->relation + " | " + f->input + " | " + f->residue : ""; }

}  // namespace

TEST_CASE("slot removal and embeddings") {
    CHECK(remove_slot(Eps::parse("01000", 3), 2) == Eps::parse("0000", 2));
    CHECK(remove_slot(Eps::parse("01000", 3), 5) == Eps::parse("0100", 3));
    CHECK(eps_ab(2, 2) == Eps::parse("010101010", 4));
    CHECK(eps_ab_zeros(2, 2).child() == Eps::parse("00000", 2));
    CHECK(eps_ab_ones(2, 2).child() == Eps::parse("1111", 2));
    CHECK_THROWS_AS(EpsEmbedding(Eps::parse("01000", 2), {2}), Error);  // child split point 1
    CHECK_THROWS_AS(EpsEmbedding(Eps::parse("00000", 2), std::vector<int>({3, 1})), Error);
    EpsEmbedding emb(Eps::parse("010010", 3), {2, 5});
    CHECK(emb.child() == Eps::parse("0000", 2));
    CHECK(emb.parent_slot(1) == 1);
    CHECK(emb.parent_slot(2) == 3);
    CHECK(emb.parent_slot(4) == 6);
    CHECK(emb.embed(Occ{1, 2, 3, 4}) == Occ{1, 0, 2, 3, 0, 4});
    CHECK(emb.restrict(Occ{1, 0, 2, 3, 0, 4}) == Occ{1, 2, 3, 4});
    CHECK(!emb.in_truncation(Occ{0, 1, 0, 0, 0, 0}));
}

TEST_CASE("hatted generators follow the four removal cases") {
    Eps p = Eps::parse("00000", 3);
    auto qa = [&](int a, int b) { return qform(p, simple_root(5, a), simple_root(5, b)); };
    auto word = [](std::initializer_list<GenLabel> g) { return Word(g); };
    auto same = [](const OpExpr& x, const OpExpr& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k].coeff != y[k].coeff || x[k].word.size() != y[k].word.size()) return false;
            for (std::size_t j = 0; j < x[k].word.size(); ++j)
                if (x[k].word[j].str() != y[k].word[j].str()) return false;
        }
        return true;
    };
    using G = GenLabel;
    // case 1: i = 3 ≤ r
    CHECK(same(reduced_generator_single(p, 3, G::e(1)), op_gen(G::e(1))));
    CHECK(same(reduced_generator_single(p, 3, G::e(2)), OpExpr{{Scalar(1), word({G::e(3), G::e(2)})}, {-qa(2, 3).inverse(), word({G::e(2), G::e(3)})}}));
    CHECK(same(reduced_generator_single(p, 3, G::f(2)), OpExpr{{Scalar(1), word({G::f(2), G::f(3)})}, {-qa(2, 3), word({G::f(3), G::f(2)})}}));
    CHECK(same(reduced_generator_single(p, 3, G::e(3)), op_gen(G::e(4))));
    CHECK(same(reduced_generator_single(p, 3, G::e(0)), op_gen(G::e(0))));
    // case 2: r+1 ≤ i ≤ n-1
    CHECK(same(reduced_generator_single(p, 4, G::e(3)), OpExpr{{Scalar(1), word({G::e(3), G::e(4)})}, {-qa(3, 4), word({G::e(4), G::e(3)})}}));
    CHECK(same(reduced_generator_single(p, 4, G::f(3)), OpExpr{{Scalar(1), word({G::f(4), G::f(3)})}, {-qa(3, 4).inverse(), word({G::f(3), G::f(4)})}}));
    // case 3: i = n
    CHECK(same(reduced_generator_single(p, 5, G::e(0)), OpExpr{{Scalar(1), word({G::e(4), G::e(0)})}, {-qa(4, 0), word({G::e(0), G::e(4)})}}));
    CHECK(same(reduced_generator_single(p, 5, G::e(2)), op_gen(G::e(2))));
    // case 4: i = 1
    CHECK(same(reduced_generator_single(p, 1, G::e(0)), OpExpr{{Scalar(1), word({G::e(1), G::e(0)})}, {-qa(0, 1).inverse(), word({G::e(0), G::e(1)})}}));
    CHECK(same(reduced_generator_single(p, 1, G::f(0)), OpExpr{{Scalar(1), word({G::f(0), G::f(1)})}, {-qa(0, 1), word({G::f(1), G::f(0)})}}));
    CHECK(same(reduced_generator_single(p, 1, G::f(2)), op_gen(G::f(3))));
    // k relabeling: δ'_l ↦ δ_l for l < i and δ_{l+1} for l ≥ i
    auto k = reduced_generator_single(p, 2, G::k(Weight(1, {1, 2, 3, 4})));
    REQUIRE(k.size() == 1);
    CHECK(k[0].word[0].mu == Weight(1, {1, 0, 2, 3, 4}));
}

TEST_CASE("hatted actions agree with the child module") {
    for (const auto& emb : embeddings()) {
        INFO(emb.str());
        for (int l = -2; l <= 2; ++l) {
            auto r = compare_actions(emb, {l}, 4);
            CHECK_MESSAGE(!r.failure, fail_text(r.failure));
        }
        for (auto ch : std::vector<std::vector<int>>{{1, 0}, {0, 0}, {-1, 1}}) {
            auto r = compare_actions(emb, ch, 3);
            CHECK_MESSAGE(!r.failure, fail_text(r.failure));
            CHECK(r.states > 0);
        }
    }
}

TEST_CASE("child relations hold for the hatted generators") {
    for (const auto& emb : embeddings()) {
        INFO(emb.str());
        auto f = check_reduced_relations(emb, 3, 2);
        CHECK_MESSAGE(!f, fail_text(f));
    }
}

TEST_CASE("truncation of the fundamental modules") {
    for (const auto& emb : embeddings()) {
        INFO(emb.str());
        for (int l = -3; l <= 3; ++l) {
            int parent_count = 0;
            for (const auto& m : states_with_charge(emb.parent(), l, 5)) parent_count += emb.in_truncation(m) ? 1 : 0;
            int child_count = static_cast<int>(states_with_charge(emb.child(), l, 5).size());
            CHECK(parent_count == child_count);
            CHECK((child_count > 0) == eps_highest_weight({l}, emb.child()).has_value());
        }
        for (int l = -1; l <= 1; ++l)
            for (int m = -1; m <= 1; ++m) {
                auto f = check_monoidal(emb, l, m, 4);
                CHECK_MESSAGE(!f, fail_text(f));
            }
    }
}

TEST_CASE("surviving components match the child highest weights") {
    for (const auto& emb : embeddings()) {
        for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {-1, 0}}) {
            Decomposition d(emb.parent(), l, m);
            for (int t = 0; t <= 2; ++t) {
                INFO(emb.str(), " l=", l, " m=", m, " t=", t);
                bool child_hw = eps_highest_weight(component_label(l, m, t), emb.child()).has_value();
                CHECK(component_survives(d, emb, t, 5) == child_hw);
            }
        }
    }
}

TEST_CASE("spectral coefficients agree across the alternating parity") {
    for (const auto& emb : {eps_ab_zeros(2, 2), eps_ab_ones(2, 2)})
        for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 0}, {0, 0}}) {
            INFO(emb.str(), " l=", l, " m=", m);
            auto rep = compare_spectral(emb, l, m, 2, 3, 3);
            CHECK_MESSAGE(!rep.square, fail_text(rep.square));
            CHECK(rep.ok());
            int compared = 0;
            for (const auto& row : rep.rows) compared += row.compared ? 1 : 0;
            CHECK(compared >= 2);
        }
}
