#pragma once

#include "qosc/rmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qosc {

// Child parity obtained by deleting some slots of the parent.
class EpsEmbedding {
public:
    // removed: 1-based parent slots, strictly increasing. Throws Error if the
    // child has fewer than 4 slots or a side with fewer than 2.
    EpsEmbedding(Eps parent, std::vector<int> removed);

    const Eps& parent() const { return parent_; }
    const Eps& child() const { return child_; }
    const std::vector<int>& removed() const { return removed_; }
    std::string str() const;

    // Parent slot of child slot l (1-based).
    int parent_slot(int l) const { return slot_map_[static_cast<std::size_t>(l - 1)]; }
    bool in_truncation(const Occ& m) const;
    bool in_truncation(const TensorState& s) const;
    Occ restrict(const Occ& m) const;  // requires in_truncation
    Occ embed(const Occ& m) const;
    TensorState restrict(const TensorState& s) const;
    TensorState embed(const TensorState& s) const;
    // Keeps the truncated part and rewrites it in child states.
    Vec truncate(const Vec& v) const;
    Vec embed(const Vec& v) const;
    Weight embed_weight(const Weight& w) const;

    // Image of a child generator under the composed reduction homomorphism.
    OpExpr reduced_generator(const GenLabel& g) const;
    OpExpr reduce(const OpExpr& x) const;

private:
    Eps parent_, child_;
    std::vector<int> removed_;
    std::vector<int> slot_map_;
};

// Image of a child generator under a single removal of parent slot i.
OpExpr reduced_generator_single(const Eps& parent, int i, const GenLabel& g);
// Parity after deleting slot i (the split point moves left when i ≤ r).
Eps remove_slot(const Eps& e, int i);

// The two homogeneous subsequences of the alternating parity (0,1,...,0,1 | 0,1,...,0,1,0).
Eps eps_ab(int a, int b);
EpsEmbedding eps_ab_zeros(int a, int b);  // keeps the 0 slots
EpsEmbedding eps_ab_ones(int a, int b);   // keeps the 1 slots

// Hatted parent actions on truncated states against the child's native actions, for
// tensor products of the given charges with total occupation ≤ degree.
struct ActionComparison {
    std::optional<RelationFailure> failure;
    int states = 0;
};
ActionComparison compare_actions(const EpsEmbedding& emb, const std::vector<int>& charges, int degree);

// Child relation suite with each generator replaced by its hatted image, on truncated states.
std::optional<RelationFailure> check_reduced_relations(const EpsEmbedding& emb, int d1, int d2);

// Counts: truncated tensor states vs products of truncated factor states, per weight.
std::optional<RelationFailure> check_monoidal(const EpsEmbedding& emb, int l, int m, int degree);

// Whether component t of W_l ⊗ W_m (parent) meets the truncation below total occupation bound.
bool component_survives(Decomposition& parent, const EpsEmbedding& emb, int t, int bound);

// Spectral coefficients compared across the embedding after matching normalizations.
struct CrossEpsRow {
    int t = 0;
    bool survives = false;       // component present for the child
    bool compared = false;
    bool equal = false;
    ZScalar parent_ratio, child_ratio;  // ρ_t / ρ_{t0}, t0 the first surviving component
};
struct CrossEpsReport {
    std::vector<CrossEpsRow> rows;
    std::optional<RelationFailure> square;  // π P_t = tr(P_t) π on truncated states
    bool ok() const;
};
CrossEpsReport compare_spectral(const EpsEmbedding& emb, int l, int m, int T, int parent_depth, int child_depth);

}  // namespace qosc
