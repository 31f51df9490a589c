#pragma once

#include "qosc/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qosc {

// Number of components above the top one: max(-l1, l2, 0) with l1 = max(l,m), l2 = min(l,m).
int N_of(int l, int m);

// Highest weight state of the charge-l module (standard parity: |l e_{r+1}> or |-l e_r>).
Occ top_state(const Eps& e, int l);

// Ladder basis vectors in W_l ⊗ W_m for the standard parity; empty when out of range.
std::optional<TensorState> v_plus(const Eps& e, int l, int m, int a, int b);
std::optional<TensorState> v_minus(const Eps& e, int l, int m, int a, int b);

// Closed-form singular vector of component t (standard parity).
Vec singular_formula(const Eps& e, int l, int m, int t);
// Vectors of W[M] killed by e_1..e_{n-1}.
std::vector<Vec> singular_kernel(const Eps& e, const std::vector<int>& charges, const Occ& M);

// Generalized partition labelling component t.
std::vector<int> component_label(int l, int m, int t);

// Component decomposition of W_l ⊗ W_m together with the intertwiners
// P_t : W_l ⊗ W_m -> W_m ⊗ W_l sending u_t to u'_t.
class Decomposition {
public:
    struct Slice {
        std::vector<Vec> basis;   // in W_l ⊗ W_m
        std::vector<Vec> images;  // in W_m ⊗ W_l
    };

    Decomposition(Eps e, int l, int m);

    const Eps& eps() const { return e_; }
    int l() const { return l_; }
    int m() const { return m_; }
    int N() const { return N_; }
    Weight top_weight() const { return top_; }

    // Whether component t exists for this parity.
    bool has_component(int t) const;
    Occ component_top(int t) const;  // total occupation of its highest weight
    int component_depth(int t) const;
    const Vec& top_vector(int t);
    const Vec& top_image(int t);

    const Slice& slice(int t, const Occ& M);
    // Components meeting the weight space with total occupation M.
    std::vector<int> components_at(const Occ& M);
    // P_t(v) for every component t meeting the weight of v (v must be weight-homogeneous).
    std::map<int, Vec> project(const Vec& v);
    Vec project(int t, const Vec& v);
    // Component parts of v inside W_l ⊗ W_m.
    std::map<int, Vec> split(const Vec& v);

    // Rescales the image side of component t so that P_t(ref) = ref_image.
    void normalize_by(int t, const Vec& ref, const Vec& ref_image);
    const Scalar& image_scale(int t) const;

    std::vector<TensorState> basis_states(const Occ& M) const;
    std::vector<TensorState> mirror_states(const Occ& M) const;

private:
    struct WeightData {
        std::vector<TensorState> states;
        std::vector<std::pair<int, std::size_t>> columns;  // (t, index in slice)
        Matrix<Scalar> inv;
    };
    const WeightData& weight_data(const Occ& M);
    std::vector<Scalar> coordinates(const Vec& v, const Occ& M);
    Occ occ_of(const Vec& v) const;

    Eps e_;
    int l_, m_, N_;
    Weight top_;
    std::map<int, Vec> tops_, top_images_;
    std::map<int, Scalar> scale_;
    std::map<std::pair<int, Occ>, Slice> slices_;
    std::map<Occ, WeightData> weights_;
};

// Diagonal form (|m>,|m'>) = δ q^{-Σ m_i(m_i-1)/2} Π [m_i]! on one module.
Scalar state_norm(const Occ& m);
// Checks (x v, w) = (v, η(x) w) for generators x of the finite part on states of total <= max_total.
std::optional<RelationFailure> polarization_check(const Eps& e, int max_total);

// Checks the nine ladder formulas for 0 <= a, b <= bound (standard parity).
std::optional<RelationFailure> ladder_check(const Eps& e, int l, int m, int bound);

}  // namespace qosc
