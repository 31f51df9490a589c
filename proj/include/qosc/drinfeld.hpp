#pragma once

#include "qosc/engine.hpp"

#include <optional>
#include <vector>

namespace qosc {

// Sign map on nodes 1..n-1 with o(i+1) = -o(i); fixed as o(i) = (-1)^i.
int node_sign(int i);

// Truncated series Σ_k Ψ_{i,k} z^k.
struct LSeries {
    int i = 0;
    std::vector<Scalar> coeffs;
    int o_sign = 1;  // sign entering u = o * (-q^{-1})^n z
};

// Closed-form ℓ-highest weight of W_l on node i (standard parity of size n, split r),
// expanded to order K. The sign in u is o(i).
LSeries psi_closed_form(int n, int r, int l, int i, int K);

// Eigenvalue of k_i on the highest vector (the z^0 coefficient from the algebra).
Scalar psi0_from_algebra(int l, int i, int n, int r);

// Eigenvalue of ψ_{i,1} on the highest vector, using only the leading monomial of the
// root vector E_{δ-α_i}. Throws Error when the result is not a multiple of v_l.
Scalar psi1_from_algebra(int l, int i, int n, int r);

// e_i v_l = 0 for i ≠ 0, and e_{j_last} v_l = 0 for every ordering of the nodes I∖{i}
// ending in a nonzero node (the lower terms of E_{δ-α_i}). Returns the count of orderings checked.
struct AnnihilationReport {
    std::optional<RelationFailure> failure;
    int shapes = 0;
};
AnnihilationReport check_annihilation(int l, int n, int r);

}  // namespace qosc
