#pragma once

#include "qosc/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qosc {

// Weakly decreasing integer vector; parts may be negative for GL_ℓ weights.
using Partition = std::vector<int>;

// Integer polynomial in a block of variables, keyed by exponent vector.
using MPoly = std::map<std::vector<int>, mpz_class>;

MPoly mpoly_mul(const MPoly& a, const MPoly& b, int max_degree);
void mpoly_add_to(MPoly& acc, const MPoly& b, const mpz_class& c = 1);

// Polynomial in t, x_1..x_nx, y_1..y_ny truncated at total (x, y)-degree D.
class CharPoly {
public:
    using Mono = std::vector<int>;  // (t, x..., y...)

    CharPoly(int nx, int ny, int degree) : nx_(nx), ny_(ny), degree_(degree) {}
    // t^tpow * x-part * y-part, truncated.
    static CharPoly from_blocks(int nx, int ny, int degree, int tpow, const MPoly& x, const MPoly& y);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int degree() const { return degree_; }
    const std::map<Mono, mpz_class>& terms() const { return terms_; }

    void add_term(const Mono& m, const mpz_class& c);
    mpz_class coeff(const Mono& m) const;
    CharPoly operator+(const CharPoly& o) const;
    CharPoly operator-(const CharPoly& o) const;
    CharPoly operator*(const CharPoly& o) const;
    CharPoly shifted_t(int k) const;  // multiply by t^k
    bool operator==(const CharPoly& o) const;
    bool operator!=(const CharPoly& o) const { return !(*this == o); }
    bool is_zero() const { return terms_.empty(); }
    // Sorted monomial list such as "t^2 x1 y1 + 2 t^2 x1 x2 y1 y2".
    std::string str() const;

private:
    void check_shape(const CharPoly& o) const;
    int nx_, ny_, degree_;
    std::map<Mono, mpz_class> terms_;
};

// Partitions of size k with at most max_len parts.
std::vector<Partition> partitions_of(int k, int max_len);

// Schur polynomials in `vars` variables through semistandard tableaux; terms of degree > D dropped.
MPoly schur(const Partition& mu, int vars, int D);
MPoly skew_schur(const Partition& lambda, const Partition& eta, int vars, int D);
// The same through the Jacobi–Trudi determinant in complete symmetric polynomials.
MPoly skew_schur_jacobi_trudi(const Partition& lambda, const Partition& eta, int vars, int D);

// Multiplicity of V(λ) in V(η) ⊗ V(ξ)^* for GL_ℓ (all three of length ℓ), via alternants.
int lr_star(const Partition& lambda, const Partition& eta, const Partition& xi);

// λ⁺ has at most n-r nonzero positive parts and λ⁻ at most r negative ones.
bool in_oscillator_range(const Partition& lambda, int r, int n);

// Character of the irreducible oscillator module with label λ, degree ≤ D:
// the LR-coefficient sum and the skew sum at a fixed column offset d.
CharPoly osc_character_lr(const Partition& lambda, int r, int n, int D);
CharPoly osc_character_skew(const Partition& lambda, int r, int n, int D, int d);
// Smallest column offset for which the skew sum is complete at degree D.
int skew_offset(const Partition& lambda, int D);
// Both forms, cross-checked; throws Error when they disagree or λ is out of range.
CharPoly osc_character(const Partition& lambda, int r, int n, int D);

// 1 / Π (1 - x_i y_j), truncated.
CharPoly cauchy_kernel(int nx, int ny, int D);
// t^level x^{M_+} y^{M_-} for a total occupation M.
CharPoly::Mono occupation_mono(int level, const Occ& M, int r);
// Weight census of the charge-l module: one monomial per basis state of degree ≤ D.
CharPoly module_census(const Eps& e, int l, int D);

// λ_{M+1} ≤ N.
bool hook_check(const Partition& lambda, int M, int N);
// Highest weight ℓΛ + ... of the label λ under the filling rule; empty on overflow.
std::optional<Weight> eps_highest_weight(const Partition& lambda, const Eps& e);

}  // namespace qosc
