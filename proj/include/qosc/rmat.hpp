#pragma once

#include "qosc/chars.hpp"
#include "qosc/structure.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qosc {

using ZVec = std::map<TensorState, ZScalar>;

// Normalizing factor c(z): Π_{i=1}^{min(|l|,|m|)} (1 - q^{|l-m|+2i} z)/(z - q^{|l-m|+2i}) when lm > 0.
ZScalar c_norm(int l, int m);
// (1 - q^{|l-m|+2t} z)/(z - q^{|l-m|+2t})
ZScalar closed_form_factor(int l, int m, int t);
// Product of the factors for 1..t.
ZScalar spectral_closed_form(int l, int m, int t);

struct SpectralCoeffs {
    int l = 0, m = 0;
    int depth = 0;
    std::map<int, ZScalar> rho;       // determined coefficients; rho[0] = 1
    std::vector<int> undetermined;    // components met but not pinned down
    std::map<int, Scalar> kappa;      // rho_t / closed form, when z-independent
    std::vector<int> not_proportional;  // components whose ratio to the closed form depends on z
    int sources = 0;                  // basis states used as equation sources
    int rank = 0;                     // rank of the collected equations over Q(q)
};

// R(z) = Σ_t ρ_t(z) P_t : W_l(z) ⊗ W_m(1) → W_m(1) ⊗ W_l(z), solved from the
// affine intertwining equations for e_0 and f_0.
class RMatrix {
public:
    RMatrix(Eps e, int l, int m);

    Decomposition& decomposition() { return dec_; }
    const Eps& eps() const { return dec_.eps(); }
    int l() const { return dec_.l(); }
    int m() const { return dec_.m(); }

    // Imposes the equations on every basis state within classical depth `depth` of the top.
    // Throws Error("intertwiner obstruction") when only ρ_0 = 0 solves them.
    const SpectralCoeffs& solve(int depth);
    // solve(depth), then requires components 0..T to be determined ("depth too small").
    const SpectralCoeffs& solve_upto(int T, int depth);
    const SpectralCoeffs& coeffs() const { return coeffs_; }
    // ρ_t, deepening the solve as needed up to max_depth.
    const ZScalar& rho(int t, int max_depth = 16);

    // Component images P_t of one basis state (cached).
    const std::map<int, Vec>& images(const TensorState& s);
    // R applied with symbolic z, or with a substitution of the coefficients.
    ZVec apply(const Vec& v);
    // ρ_t at z = value; throws Error("spectral-parameter collision ...") at a pole.
    Scalar rho_at(int t, const Scalar& value);
    // R with z specialized to value.
    Vec apply_at(const Vec& v, const Scalar& value);

    // Classical intertwining of every P_t with e_i, f_i (i ≠ 0) on states within depth.
    std::optional<RelationFailure> check_classical(int depth);

private:
    std::vector<TensorState> sources(int depth);
    Decomposition dec_;
    SpectralCoeffs coeffs_;
    std::map<TensorState, std::map<int, Vec>> images_;
    std::map<std::pair<int, Scalar>, Scalar> special_;
};

// Sum of the factor occupations.
Occ total_occ(const TensorState& s);
// Total occupations of weights within classical depth `depth` below `top` (a total occupation), shallow first.
std::vector<Occ> weights_within(const Eps& e, const Occ& top, int level, int depth);

ZVec zvec_from(const Vec& v);
void zvec_add_to(ZVec& acc, const ZVec& v, const ZScalar& c = ZScalar(1));
bool zvec_is_zero(const ZVec& v);

// ρ_t(z) ρ'_t(1/z) = 1 for the reverse matrix, and R'(1/z) R(z) = id on the sources.
std::optional<RelationFailure> unitarity_check(RMatrix& fwd, RMatrix& rev, int depth);

// Braid form of the Yang–Baxter equation on W_l(z) ⊗ W_m(c) ⊗ W_k(1) for every
// basis state within classical depth `depth` of the top; c runs over generic constants.
struct YangBaxterReport {
    int states = 0;
    int weights = 0;
    std::optional<RelationFailure> failure;
};
YangBaxterReport yang_baxter_check(const Eps& e, int l, int m, int k, int depth);

// Image of the composed specialized R matrices on W_{l_1}(c_1) ⊗ ... ⊗ W_{l_s}(c_s),
// one weight space at a time, for total occupation ≤ degree.
struct FusionImage {
    std::vector<int> charges;
    std::vector<Scalar> params;
    int degree = 0;
    std::map<Occ, std::pair<int, int>> ranks;  // total occupation -> (rank, dimension)
    CharPoly character;
    bool zero() const;
    FusionImage() : character(0, 0, 0) {}
};
FusionImage fusion_image(const Eps& e, const std::vector<int>& charges, const std::vector<Scalar>& params, int degree);

// KR-type module: charges (l, ..., l) with parameters c q^{2-2s}, ..., c q^{-2}, c.
FusionImage kr_module(const Eps& e, int l, int s, const Scalar& c, int degree);
// Whether (l^s) is a valid oscillator label for the parity (nonzero KR module).
bool kr_nonzero(const Eps& e, int l, int s);

}  // namespace qosc
