#include "qosc/drinfeld.hpp"

#include "qosc/structure.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qosc {

int node_sign(int i) { return i % 2 == 0 ? 1 : -1; }

namespace {

void check_node(int n, int i) {
    if (i < 1 || i > n - 1) throw Error("node " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
}

// Power series of (a + b u) / (c + d u) with u = s z, to order K.
std::vector<Scalar> mobius_series(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, const Scalar& s, int K) {
    // 1/(c + d s z) = c^{-1} Σ (-d s / c)^k z^k
    std::vector<Scalar> inv(static_cast<std::size_t>(K + 1));
    Scalar ratio = -(d * s) / c, p = c.inverse();
    for (auto& x : inv) {
        x = p;
        p *= ratio;
    }
    std::vector<Scalar> out(inv.size());
    for (int k = 0; k <= K; ++k) {
        out[static_cast<std::size_t>(k)] = a * inv[static_cast<std::size_t>(k)];
        if (k > 0) out[static_cast<std::size_t>(k)] += b * s * inv[static_cast<std::size_t>(k - 1)];
    }
    return out;
}

Vec highest(int n, int r, int l) { return vec_single(TensorState({top_state(Eps::standard(n, r), l)})); }

}  // namespace

LSeries psi_closed_form(int n, int r, int l, int i, int K) {
    check_node(n, i);
    if (K < 0) throw Error("series order must be nonnegative");
    LSeries out;
    out.i = i;
    out.o_sign = node_sign(i);
    Scalar s = Scalar::q_pow(-n) * Scalar(n % 2 == 0 ? out.o_sign : -out.o_sign);
    Scalar one(1);
    if (i == r - 1 && l < 0) {
        Scalar a = Scalar::q_pow(-l);
        out.coeffs = mobius_series(a, -one, one, -a, s, K);
    } else if (i == r) {
        Scalar a = Scalar::q_pow(-std::abs(l) - 1);
        out.coeffs = mobius_series(a, one, one, a, s, K);
    } else if (i == r + 1 && l >= 0) {
        Scalar a = Scalar::q_pow(l);
        out.coeffs = mobius_series(a, -one, one, -a, s, K);
    } else {
        out.coeffs.assign(static_cast<std::size_t>(K + 1), Scalar(0));
        out.coeffs[0] = one;
    }
    return out;
}

namespace {

// Returns c with v = c * v_l, or throws.
Scalar eigenvalue(const Vec& v, const Vec& vl, const std::string& what) {
    const auto& [s0, c0] = *vl.begin();
    Vec rest = v;
    auto it = rest.find(s0);
    Scalar c = it == rest.end() ? Scalar(0) : it->second;
    if (it != rest.end()) rest.erase(it);
    if (!vec_is_zero(rest)) throw Error(what + " does not act on the highest vector by a scalar");
    return c / c0;
}

}  // namespace

Scalar psi0_from_algebra(int l, int i, int n, int r) {
    check_node(n, i);
    Eps e = Eps::standard(n, r);
    Vec vl = highest(n, r, l);
    return eigenvalue(apply(e, GenLabel::k(simple_root(n, i)), vl), vl, "k_i");
}

Scalar psi1_from_algebra(int l, int i, int n, int r) {
    check_node(n, i);
    Eps e = Eps::standard(n, r);
    Vec vl = highest(n, r, l);
    // (e_{i+1} ... e_{n-1})(e_{i-1} ... e_1) e_0, leftmost acting last
    Word lead;
    for (int j = i + 1; j <= n - 1; ++j) lead.push_back(GenLabel::e(j));
    for (int j = i - 1; j >= 1; --j) lead.push_back(GenLabel::e(j));
    lead.push_back(GenLabel::e(0));
    Scalar pref = Scalar::q_pow(-(n - 2)) * Scalar((n - 2) % 2 == 0 ? 1 : -1);
    OpExpr root{{pref, lead}};
    OpExpr ei = op_gen(GenLabel::e(i));
    OpExpr body = op_bracket(root, ei, Scalar::q_pow(-2));
    Scalar c = Scalar(node_sign(i)) * (Scalar::q_pow(1) - Scalar::q_pow(-1));
    OpExpr psi = op_mul(op_gen(GenLabel::k(simple_root(n, i)), c), body);
    return eigenvalue(apply(e, psi, vl), vl, "psi_{i,1}");
}

AnnihilationReport check_annihilation(int l, int n, int r) {
    Eps e = Eps::standard(n, r);
    Vec vl = highest(n, r, l);
    AnnihilationReport rep;
    for (int j = 1; j < n; ++j)
        if (!vec_is_zero(apply(e, GenLabel::e(j), vl))) {
            rep.failure = RelationFailure{"e_" + std::to_string(j) + " v = 0", vl.begin()->first.str(), "nonzero"};
            return rep;
        }
    for (int i = 1; i < n; ++i) {
        std::vector<int> nodes;
        for (int j = 0; j < n; ++j)
            if (j != i) nodes.push_back(j);
        do {
            if (nodes.back() == 0) continue;
            ++rep.shapes;
            if (!vec_is_zero(apply(e, GenLabel::e(nodes.back()), vl))) {
                rep.failure = RelationFailure{"lower term of E_{delta-alpha_" + std::to_string(i) + "}",
                                              vl.begin()->first.str(), "last letter e_" + std::to_string(nodes.back())};
                return rep;
            }
        } while (std::next_permutation(nodes.begin(), nodes.end()));
    }
    return rep;
}

}  // namespace qosc
