#pragma once

#include "qosc/scalars.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qosc {

// 0/1 sequence with a split point r: slots 1..r form the minus side, r+1..n the plus side.
struct Eps {
    std::vector<int> bits;
    int r = 0;

    Eps() = default;
    Eps(std::vector<int> b, int r_);
    static Eps parse(const std::string& bits, int r);
    static Eps standard(int n, int r) { return Eps(std::vector<int>(static_cast<std::size_t>(n), 0), r); }

    int n() const { return static_cast<int>(bits.size()); }
    // slot index taken mod n, so at(0) == at(n)
    int at(int i) const;
    bool plus_side(int i) const { return i > r; }
    std::string str() const;
    bool operator==(const Eps& o) const { return bits == o.bits && r == o.r; }
};

// ℓ Λ + Σ d_i δ_i + k δ ; d is 0-based storage of slots 1..n.
struct Weight {
    int level = 0;
    std::vector<int> d;
    int k = 0;

    Weight() = default;
    Weight(int lvl, std::vector<int> dd, int kk = 0) : level(lvl), d(std::move(dd)), k(kk) {}
    static Weight zero(int n) { return Weight(0, std::vector<int>(static_cast<std::size_t>(n), 0)); }
    static Weight delta(int n, int i);  // δ_i, 1-based
    static Weight big_lambda(int n) { return Weight(1, std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int n() const { return static_cast<int>(d.size()); }
    int operator[](int i) const { return d[static_cast<std::size_t>(i - 1)]; }  // 1-based
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight operator*(int s) const;
    bool operator==(const Weight& o) const { return level == o.level && d == o.d && k == o.k; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const;
    std::string str() const;
};

// Simple root α_i (i = 0..n-1); the affine version carries δ in α_0.
Weight simple_root(int n, int i, bool affine = false);
bool is_odd_root(const Eps& e, int i);

// Invariant form on the weight lattice (the δ component is ignored).
int bilinear(const Eps& e, const Weight& mu, const Weight& nu);

// Signed monomial sign * q^exp.
struct QMono {
    int sign = 1;
    int exp = 0;
    QMono operator*(const QMono& o) const { return {sign * o.sign, exp + o.exp}; }
    QMono inverse() const { return {sign, -exp}; }
    Scalar value() const { return Scalar(sign) * Scalar::q_pow(exp); }
};

QMono qform_mono(const Eps& e, const Weight& mu, const Weight& nu);
QMono qhat_mono(const Eps& e, const Weight& mu, const Weight& nu);
inline Scalar qform(const Eps& e, const Weight& mu, const Weight& nu) { return qform_mono(e, mu, nu).value(); }
inline Scalar qhat(const Eps& e, const Weight& mu, const Weight& nu) { return qhat_mono(e, mu, nu).value(); }
// q_i = q or -q^{-1}
QMono q_slot(const Eps& e, int i);

// Classical affine lattice of the standard parity with coweights c, δ_i^∨, d.
struct Coweight {
    int c = 0;
    std::vector<int> dv;
    int d = 0;
};
// Pairing with μ read as level·Λ_r + Σ d_i δ_i + k δ.
int pairing(const Weight& mu, const Coweight& h);
Coweight simple_coroot(int n, int r, int i);
// Identification of the standard-parity lattice with the classical one.
Coweight to_coweight(const Eps& e, const Weight& mu);
Weight to_classical_weight(const Weight& mu);
Weight cl(const Weight& mu);
Weight iota(const Weight& mu);

// Occupation vectors and their weights.
using Occ = std::vector<int>;
bool occ_valid(const Eps& e, const Occ& m);
int charge(const Eps& e, const Occ& m);  // Σ_{j>r} m_j - Σ_{i≤r} m_i
int total(const Occ& m);
Weight occ_weight(const Eps& e, int level, const Occ& m);
// Inverse of occ_weight; empty when some coordinate has the wrong sign.
std::optional<Occ> weight_occ(const Eps& e, const Weight& w);

// Highest weight attached to a generalized partition under the parity filling rule,
// returned as an occupation vector; empty when the filling runs out of slots.
std::optional<Occ> filling_occupation(const Eps& e, const std::vector<int>& lambda);

// Coefficients c_i with top - mu = Σ_{i=1}^{n-1} c_i α_i; empty if not in that span.
std::optional<std::vector<int>> root_coords(const Weight& top, const Weight& mu);
// Height of top - mu, or -1 if mu is not below top.
int depth_below(const Weight& top, const Weight& mu);

}  // namespace qosc
