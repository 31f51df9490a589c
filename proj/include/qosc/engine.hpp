#pragma once

#include "qosc/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qosc {

struct GenLabel {
    enum Kind { E, F, K } kind = K;
    int i = 0;    // node for E/F
    Weight mu;    // for K

    static GenLabel e(int i) { return {E, i, {}}; }
    static GenLabel f(int i) { return {F, i, {}}; }
    static GenLabel k(const Weight& mu) { return {K, 0, mu}; }
    std::string str() const;
};

using Word = std::vector<GenLabel>;  // leftmost letter acts last

struct OpTerm {
    Scalar coeff;
    Word word;
};
using OpExpr = std::vector<OpTerm>;

OpExpr op_gen(const GenLabel& g, const Scalar& c = Scalar(1));
OpExpr op_identity(const Scalar& c = Scalar(1));
OpExpr op_mul(const OpExpr& a, const OpExpr& b);
OpExpr op_add(const OpExpr& a, const OpExpr& b);
OpExpr op_scale(const OpExpr& a, const Scalar& c);
// [a, b]_t = ab - t ba
OpExpr op_bracket(const OpExpr& a, const OpExpr& b, const Scalar& t);

// Basis vector of an iterated tensor product; z holds the power of each
// factor's spectral parameter.
struct TensorState {
    std::vector<Occ> f;
    std::vector<int> z;

    TensorState() = default;
    explicit TensorState(std::vector<Occ> factors) : f(std::move(factors)), z(f.size(), 0) {}
    bool operator<(const TensorState& o) const { return f != o.f ? f < o.f : z < o.z; }
    bool operator==(const TensorState& o) const { return f == o.f && z == o.z; }
    std::string str() const;
};

using Vec = std::map<TensorState, Scalar>;

void vec_add_to(Vec& acc, const Vec& v, const Scalar& c = Scalar(1));
Vec vec_scale(const Vec& v, const Scalar& c);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_single(const TensorState& s, const Scalar& c = Scalar(1));
bool vec_is_zero(const Vec& v);

// How spectral parameters are handled: symbolically via TensorState::z,
// or by substituting the per-factor values x (default 1).
struct Spectral {
    bool symbolic = false;
    std::vector<Scalar> x;
    static Spectral classical() { return {}; }
    static Spectral affine() { return {true, {}}; }
    static Spectral values(std::vector<Scalar> xs) { return {false, std::move(xs)}; }
};

struct ActResult {
    Occ m;
    Scalar coeff;
    int zpow = 0;
};

Weight weight_of(const Eps& e, const Occ& m);
Weight weight_of(const Eps& e, const TensorState& s);
// Single-module action; empty when the image is zero.
std::optional<ActResult> act(const Eps& e, const GenLabel& g, const Occ& m);
// Action on an iterated tensor product through the coproduct.
Vec apply(const Eps& e, const GenLabel& g, const Vec& v, const Spectral& sp = Spectral::classical());
Vec apply(const Eps& e, const Word& w, const Vec& v, const Spectral& sp = Spectral::classical());
Vec apply(const Eps& e, const OpExpr& x, const Vec& v, const Spectral& sp = Spectral::classical());

// Coproduct of a generator as a list of (coeff, left word, right word).
struct CoproductTerm {
    Scalar coeff;
    Word left, right;
};
std::vector<CoproductTerm> coproduct(const GenLabel& g, int n);
OpExpr antipode(const OpExpr& x, int n);
int counit(const GenLabel& g);

// Enumeration of basis states.
std::vector<Occ> states_up_to(const Eps& e, int max_total);
std::vector<Occ> states_with_charge(const Eps& e, int charge_value, int max_total);
// Tensor states of modules with the given charges and total occupation M.
std::vector<TensorState> tensor_states(const Eps& e, const std::vector<int>& charges, const Occ& M);

struct Relation {
    std::string name;
    OpExpr expr;  // must act by zero
};
std::vector<Relation> relation_suite(const Eps& e);

struct RelationFailure {
    std::string relation;
    std::string input;
    std::string residue;
};

// Checks every relation on every input vector; returns the first failure.
std::optional<RelationFailure> check_relations(const Eps& e, const std::vector<Relation>& rels,
                                               const std::vector<Vec>& inputs, const Spectral& sp);
// Standard test inputs: single states with total <= d1, tensor pairs with total <= d2
// and triples with total <= d3 (none when d3 < 0).
std::vector<Vec> relation_inputs(const Eps& e, int d1, int d2, int d3 = -1);

// Antipode axiom m(S ⊗ 1)Δ(x) = ε(x) and m(1 ⊗ S)Δ(x) = ε(x) on states.
std::optional<RelationFailure> check_antipode(const Eps& e, int max_total);

// Standard parity at q = 1: the divided Cartan operators and e_i, f_i (i ≠ 0)
// satisfy the gl_n relations on states of total <= max_total.
std::optional<RelationFailure> check_classical_limit(int n, int r, int max_total);

}  // namespace qosc
