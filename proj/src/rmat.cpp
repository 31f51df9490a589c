#include "qosc/rmat.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace qosc {

// ---------------------------------------------------------- closed forms

ZScalar closed_form_factor(int l, int m, int t) {
    Scalar a = Scalar::q_pow(std::abs(l - m) + 2 * t);
    return ZScalar::from_parts({Scalar(1), -a}, {-a, Scalar(1)});
}

ZScalar spectral_closed_form(int l, int m, int t) {
    ZScalar out(1);
    for (int i = 1; i <= t; ++i) out *= closed_form_factor(l, m, i);
    return out;
}

ZScalar c_norm(int l, int m) {
    if (static_cast<long>(l) * m <= 0) return ZScalar(1);
    return spectral_closed_form(l, m, std::min(std::abs(l), std::abs(m)));
}

// ---------------------------------------------------------- vectors over Q(q)(z)

ZVec zvec_from(const Vec& v) {
    ZVec out;
    for (const auto& [s, c] : v) out.emplace(s, ZScalar(c));
    return out;
}

void zvec_add_to(ZVec& acc, const ZVec& v, const ZScalar& c) {
    for (const auto& [s, x] : v) {
        ZScalar add = x * c;
        if (add.is_zero()) continue;
        auto it = acc.find(s);
        if (it == acc.end()) {
            acc.emplace(s, std::move(add));
        } else {
            it->second += add;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

bool zvec_is_zero(const ZVec& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& p) { return p.second.is_zero(); });
}

namespace {

std::string zvec_str(const ZVec& v, std::size_t limit = 4) {
    std::string s;
    std::size_t k = 0;
    for (const auto& [st, x] : v) {
        if (x.is_zero()) continue;
        if (k++ == limit) return s + "...";
        s += "(" + x.str() + ")" + st.str() + " ";
    }
    return s;
}

std::string vec_str(const Vec& v, std::size_t limit = 4) {
    std::string s;
    std::size_t k = 0;
    for (const auto& [st, x] : v) {
        if (k++ == limit) return s + "...";
        s += "(" + x.str() + ")" + st.str() + " ";
    }
    return s;
}

}  // namespace

Occ total_occ(const TensorState& s) {
    Occ M(s.f.front().size(), 0);
    for (const auto& f : s.f)
        for (std::size_t i = 0; i < M.size(); ++i) M[i] += f[i];
    return M;
}

// Total occupations of weights within classical depth `depth` below `top`, shallow first.
std::vector<Occ> weights_within(const Eps& e, const Occ& top, int level, int depth) {
    std::vector<Occ> out{top};
    std::set<Occ> seen{top};
    std::size_t begin = 0;
    for (int d = 0; d < depth; ++d) {
        std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k) {
            Weight w = occ_weight(e, level, out[k]);
            for (int i = 1; i < e.n(); ++i) {
                auto M = weight_occ(e, w - simple_root(e.n(), i));
                if (M && seen.insert(*M).second) out.push_back(*M);
            }
        }
        begin = end;
    }
    return out;
}

namespace {

// Drops the z bookkeeping, sorting terms by whether factor `j` carried z.
void split_by_z(const Vec& v, std::size_t j, Vec& with_z, Vec& without_z) {
    for (const auto& [s, c] : v) {
        TensorState t = s;
        bool has = t.z[j] != 0;
        std::fill(t.z.begin(), t.z.end(), 0);
        vec_add_to(has ? with_z : without_z, vec_single(t), c);
    }
}

}  // namespace

// ---------------------------------------------------------- RMatrix

RMatrix::RMatrix(Eps e, int l, int m) : dec_(std::move(e), l, m) {
    coeffs_.l = l;
    coeffs_.m = m;
    coeffs_.depth = -1;
}

const std::map<int, Vec>& RMatrix::images(const TensorState& s) {
    auto it = images_.find(s);
    if (it != images_.end()) return it->second;
    return images_.emplace(s, dec_.project(vec_single(s))).first->second;
}

std::vector<TensorState> RMatrix::sources(int depth) {
    const Eps& e = dec_.eps();
    Occ top = total_occ(TensorState({top_state(e, l()), top_state(e, m())}));
    std::vector<TensorState> out;
    for (const auto& M : weights_within(e, top, 2, depth))
        for (auto& s : dec_.basis_states(M)) out.push_back(std::move(s));
    return out;
}

namespace {

using Key = std::pair<int, int>;  // (component, power of z)
using Row = std::map<Key, Scalar>;

// Row echelon form over Q(q) for rows keyed by (component, z power).
struct KeyEchelon {
    std::vector<std::pair<Key, Row>> rows;

    void add(Row r) {
        for (const auto& [p, row] : rows) {
            auto it = r.find(p);
            if (it == r.end()) continue;
            Scalar f = it->second;
            for (const auto& [k, x] : row) {
                Scalar& y = r[k];
                y -= f * x;
                if (y.is_zero()) r.erase(k);
            }
        }
        if (r.empty()) return;
        auto piv = std::min_element(r.begin(), r.end(), [](const auto& a, const auto& b) { return complexity(a.second) < complexity(b.second); });
        Key p = piv->first;
        Scalar inv = piv->second.inverse();
        for (auto& [k, x] : r) x *= inv;
        for (auto& [q, row] : rows) {
            auto it = row.find(p);
            if (it == row.end()) continue;
            Scalar f = it->second;
            for (const auto& [k, x] : r) {
                Scalar& y = row[k];
                y -= f * x;
                if (y.is_zero()) row.erase(k);
            }
        }
        rows.emplace_back(p, std::move(r));
    }
};

}  // namespace

const SpectralCoeffs& RMatrix::solve(int depth) {
    if (depth <= coeffs_.depth) return coeffs_;
    const Eps& e = dec_.eps();
    auto src = sources(depth);

    KeyEchelon ech;
    std::set<int> comps;
    auto project_sum = [&](const Vec& v) {
        std::map<int, Vec> out;
        for (const auto& [s, c] : v)
            for (const auto& [t, img] : images(s)) vec_add_to(out[t], img, c);
        return out;
    };

    for (const auto& s : src) {
        const auto& Pv = images(s);
        for (const auto& [t, img] : Pv) comps.insert(t);
        for (GenLabel g : {GenLabel::e(0), GenLabel::f(0)}) {
            const int zshift = g.kind == GenLabel::E ? 1 : 0;  // f_0 rows are multiplied by z
            Vec a, b;
            split_by_z(qosc::apply(e, g, vec_single(s), Spectral::affine()), 0, a, b);
            auto Pa = project_sum(a), Pb = project_sum(b);
            std::map<TensorState, Row> rows;
            auto put = [&](int t, int zp, const Vec& v, const Scalar& sign) {
                comps.insert(t);
                for (const auto& [st, c] : v) {
                    Scalar& y = rows[st][{t, zp}];
                    y += sign * c;
                }
            };
            // Σ_t ρ_t (z^{±1} P_t(a) + P_t(b) - Δ'(g) P_t(s)) = 0, scaled to powers 0 and 1
            for (const auto& [t, v] : Pa) put(t, zshift, v, Scalar(1));
            for (const auto& [t, v] : Pb) put(t, 1 - zshift, v, Scalar(1));
            for (const auto& [t, img] : Pv) {
                Vec c, d;
                split_by_z(qosc::apply(e, g, img, Spectral::affine()), 1, c, d);
                put(t, zshift, c, Scalar(-1));
                put(t, 1 - zshift, d, Scalar(-1));
            }
            for (auto& [st, row] : rows) {
                for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
                if (!row.empty()) ech.add(std::move(row));
            }
        }
    }

    std::vector<int> cols(comps.begin(), comps.end());
    std::map<int, std::size_t> idx;
    for (std::size_t k = 0; k < cols.size(); ++k) idx[cols[k]] = k;
    Matrix<ZScalar> A;
    for (const auto& [p, row] : ech.rows) {
        std::vector<ZScalar> zr(cols.size());
        for (const auto& [k, x] : row) zr[idx.at(k.first)] += k.second ? ZScalar(x) * ZScalar::z() : ZScalar(x);
        A.push_back(std::move(zr));
    }
    auto ker = kernel_of(A, cols.size());
    const std::size_t i0 = idx.at(0);
    auto base_it = std::find_if(ker.begin(), ker.end(), [&](const auto& k) { return !k[i0].is_zero(); });
    if (base_it == ker.end()) throw Error("intertwiner obstruction: only the zero map solves the equations for (l,m)=(" + std::to_string(l()) + "," + std::to_string(m()) + ")");
    std::vector<ZScalar> base = *base_it;
    ZScalar inv = base[i0].inverse();
    for (auto& x : base) x *= inv;
    std::vector<bool> free(cols.size(), false);
    for (const auto& k : ker) {
        if (&k == &*base_it) continue;
        ZScalar c = k[i0];
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (!(k[j] - c * base[j]).is_zero()) free[j] = true;
    }

    SpectralCoeffs out;
    out.l = l();
    out.m = m();
    out.depth = depth;
    out.sources = static_cast<int>(src.size());
    out.rank = static_cast<int>(ech.rows.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        int t = cols[j];
        if (free[j]) {
            out.undetermined.push_back(t);
            continue;
        }
        out.rho[t] = base[j];
        ZScalar ratio = base[j] / spectral_closed_form(l(), m(), t);
        if (ratio.is_constant())
            out.kappa[t] = ratio.constant_value();
        else
            out.not_proportional.push_back(t);
    }
    coeffs_ = std::move(out);
    return coeffs_;
}

const SpectralCoeffs& RMatrix::solve_upto(int T, int depth) {
    const auto& c = solve(depth);
    for (int t = 0; t <= T; ++t)
        if (dec_.has_component(t) && !c.rho.count(t))
            throw Error("depth too small: component " + std::to_string(t) + " is not determined at depth " + std::to_string(depth));
    return c;
}

const ZScalar& RMatrix::rho(int t, int max_depth) {
    if (!dec_.has_component(t)) throw Error("component " + std::to_string(t) + " is absent");
    for (int d = std::max(coeffs_.depth, 0);; ++d) {
        solve(d);
        auto it = coeffs_.rho.find(t);
        if (it != coeffs_.rho.end()) return it->second;
        if (d >= max_depth) throw Error("depth too small: component " + std::to_string(t) + " is not determined at depth " + std::to_string(max_depth));
    }
}

ZVec RMatrix::apply(const Vec& v) {
    ZVec out;
    for (const auto& [s, c] : v)
        for (const auto& [t, img] : images(s)) zvec_add_to(out, zvec_from(img), rho(t) * ZScalar(c));
    return out;
}

Scalar RMatrix::rho_at(int t, const Scalar& value) {
    auto key = std::make_pair(t, value);
    auto it = special_.find(key);
    if (it != special_.end()) return it->second;
    const int d = std::abs(l() - m());
    for (int a = 1; a <= t; ++a)
        if (value == Scalar::q_pow(d + 2 * a))
            throw Error("spectral-parameter collision at t=" + std::to_string(t) + ", a=" + std::to_string(a) + " (z = q^" + std::to_string(d + 2 * a) + ")");
    Scalar x = rho(t).at(value);
    special_.emplace(key, x);
    return x;
}

Vec RMatrix::apply_at(const Vec& v, const Scalar& value) {
    Vec out;
    for (const auto& [s, c] : v)
        for (const auto& [t, img] : images(s)) vec_add_to(out, img, c * rho_at(t, value));
    return out;
}

std::optional<RelationFailure> RMatrix::check_classical(int depth) {
    const Eps& e = dec_.eps();
    for (const auto& s : sources(depth)) {
        const auto& Ps = images(s);
        for (int i = 1; i < e.n(); ++i)
            for (GenLabel g : {GenLabel::e(i), GenLabel::f(i)}) {
                std::map<int, Vec> lhs;
                for (const auto& [s2, c] : qosc::apply(e, g, vec_single(s)))
                    for (const auto& [t, img] : images(s2)) vec_add_to(lhs[t], img, c);
                std::set<int> ts;
                for (const auto& [t, v] : lhs) ts.insert(t);
                for (const auto& [t, v] : Ps) ts.insert(t);
                for (int t : ts) {
                    Vec rhs = Ps.count(t) ? qosc::apply(e, g, Ps.at(t)) : Vec{};
                    Vec diff = vec_sub(lhs.count(t) ? lhs.at(t) : Vec{}, rhs);
                    if (!vec_is_zero(diff))
                        return RelationFailure{"P_" + std::to_string(t) + " commutes with " + g.str(), s.str(), vec_str(diff)};
                }
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------- unitarity

std::optional<RelationFailure> unitarity_check(RMatrix& fwd, RMatrix& rev, int depth) {
    auto src = [&] {
        const Eps& e = fwd.eps();
        Occ top = total_occ(TensorState({top_state(e, fwd.l()), top_state(e, fwd.m())}));
        std::vector<TensorState> out;
        for (const auto& M : weights_within(e, top, 2, depth))
            for (auto& s : fwd.decomposition().basis_states(M)) out.push_back(std::move(s));
        return out;
    }();
    std::set<int> ts;
    for (const auto& s : src)
        for (const auto& [t, img] : fwd.images(s)) ts.insert(t);
    for (int t : ts) {
        ZScalar prod = fwd.rho(t) * rev.rho(t).at_inverse_z();
        if (prod != ZScalar(1)) return RelationFailure{"rho_t(z) rho'_t(1/z) = 1", "t=" + std::to_string(t), prod.str()};
    }
    for (const auto& s : src) {
        ZVec mid = fwd.apply(vec_single(s));
        ZVec back;
        for (const auto& [s2, c] : mid)
            for (const auto& [t, img] : rev.images(s2)) zvec_add_to(back, zvec_from(img), c * rev.rho(t).at_inverse_z());
        ZVec diff = back;
        zvec_add_to(diff, zvec_from(vec_single(s)), ZScalar(-1));
        if (!zvec_is_zero(diff)) return RelationFailure{"R'(1/z) R(z) = id", s.str(), zvec_str(diff)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------- multi-factor helpers

namespace {

TensorState pair_at(const TensorState& s, std::size_t i) { return TensorState({s.f[i], s.f[i + 1]}); }

TensorState replace_pair(TensorState s, std::size_t i, const TensorState& p) {
    s.f[i] = p.f[0];
    s.f[i + 1] = p.f[1];
    return s;
}

using Poly = ZScalar::Poly;
using PVec = std::map<TensorState, Poly>;

void pvec_add(PVec& acc, const TensorState& s, const Poly& p) {
    if (p.empty()) return;
    auto it = acc.find(s);
    if (it == acc.end()) {
        acc.emplace(s, p);
        return;
    }
    it->second = zpoly::add(it->second, p);
    if (it->second.empty()) acc.erase(it);
}

// Ř with coefficients ρ_t(·) L(·), L a common denominator, so sums stay polynomial in z.
PVec apply_pair_poly(RMatrix& R, const std::function<const Poly&(int)>& coef, const PVec& v, std::size_t i) {
    PVec out;
    for (const auto& [s, c] : v)
        for (const auto& [t, img] : R.images(pair_at(s, i))) {
            Poly k = zpoly::mul(c, coef(t));
            for (const auto& [p, x] : img) pvec_add(out, replace_pair(s, i, p), zpoly::scale(k, x));
        }
    return out;
}

// Scaled coefficients ρ_t(s z) L(z) for a fixed common denominator L.
struct ScaledCoeffs {
    RMatrix& R;
    Scalar scale;
    Poly L;
    std::map<int, Poly> cache;

    ScaledCoeffs(RMatrix& r, const Scalar& s, int depth) : R(r), scale(s), L{Scalar(1)} {
        for (const auto& [t, rho] : R.solve(depth).rho) {
            Poly d = rho.at_scaled_z(scale).den();
            Poly g = zpoly::monic_gcd(L, d), q, rem;
            zpoly::divmod(d, g, q, rem);
            L = zpoly::mul(L, q);
        }
    }
    const Poly& operator()(int t) {
        auto it = cache.find(t);
        if (it != cache.end()) return it->second;
        ZScalar v = R.rho(t).at_scaled_z(scale);
        Poly q, rem;
        zpoly::divmod(L, v.den(), q, rem);
        if (!rem.empty()) throw Error("coefficient " + std::to_string(t) + " has a pole outside the common denominator");
        return cache.emplace(t, zpoly::mul(v.num(), q)).first->second;
    }
};

Vec apply_pair_at(RMatrix& R, const Scalar& value, const Vec& v, std::size_t i) {
    Vec out;
    for (const auto& [s, c] : v)
        for (const auto& [t, img] : R.images(pair_at(s, i))) {
            Scalar k = c * R.rho_at(t, value);
            for (const auto& [p, x] : img) vec_add_to(out, vec_single(replace_pair(s, i, p)), k * x);
        }
    return out;
}

struct RCache {
    Eps e;
    std::map<std::pair<int, int>, std::unique_ptr<RMatrix>> mats;
    RMatrix& get(int l, int m) {
        auto& p = mats[{l, m}];
        if (!p) p = std::make_unique<RMatrix>(e, l, m);
        return *p;
    }
};

}  // namespace

// ---------------------------------------------------------- Yang–Baxter

YangBaxterReport yang_baxter_check(const Eps& e, int l, int m, int k, int depth) {
    YangBaxterReport rep;
    RCache rc{e, {}};
    RMatrix &Rlm = rc.get(l, m), &Rlk = rc.get(l, k), &Rmk = rc.get(m, k);
    Occ top = total_occ(TensorState({top_state(e, l), top_state(e, m), top_state(e, k)}));
    auto weights = weights_within(e, top, 3, depth);
    ScaledCoeffs lk(Rlk, Scalar(1), depth);  // ρ(z)
    for (const Scalar& c : {Scalar(2), parse_scalar("q + 3")}) {
        ScaledCoeffs lm(Rlm, c.inverse(), depth);  // ρ(z / c)
        std::map<int, Poly> mk_cache;               // ρ(c)
        auto mk = [&](int t) -> const Poly& {
            auto it = mk_cache.find(t);
            if (it == mk_cache.end()) {
                Scalar x = Rmk.rho_at(t, c);
                it = mk_cache.emplace(t, x.is_zero() ? Poly{} : Poly{x}).first;
            }
            return it->second;
        };
        std::function<const Poly&(int)> flm = std::ref(lm), flk = std::ref(lk), fmk = mk;
        for (const auto& M : weights) {
            auto states = tensor_states(e, {l, m, k}, M);
            if (states.empty()) continue;
            ++rep.weights;
            for (const auto& s : states) {
                ++rep.states;
                PVec v{{s, Poly{Scalar(1)}}};
                PVec lhs = apply_pair_poly(Rmk, fmk, apply_pair_poly(Rlk, flk, apply_pair_poly(Rlm, flm, v, 0), 1), 0);
                PVec rhs = apply_pair_poly(Rlm, flm, apply_pair_poly(Rlk, flk, apply_pair_poly(Rmk, fmk, v, 1), 0), 1);
                for (const auto& [st, p] : rhs) pvec_add(lhs, st, zpoly::scale(p, Scalar(-1)));
                if (!lhs.empty()) {
                    ZVec diff;
                    for (const auto& [st, p] : lhs) diff.emplace(st, ZScalar::from_poly(p));
                    rep.failure = RelationFailure{"braid relation at z2 = " + c.str(), s.str(), zvec_str(diff)};
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------- fusion

bool FusionImage::zero() const {
    return std::all_of(ranks.begin(), ranks.end(), [](const auto& p) { return p.second.first == 0; });
}

FusionImage fusion_image(const Eps& e, const std::vector<int>& charges, const std::vector<Scalar>& params, int degree) {
    if (charges.empty() || charges.size() != params.size()) throw Error("fusion needs one parameter per factor");
    const std::size_t L = charges.size();
    FusionImage out;
    out.charges = charges;
    out.params = params;
    out.degree = degree;
    out.character = CharPoly(e.n() - e.r, e.r, degree);
    RCache rc{e, {}};
    // Reduced word of the longest permutation: step k moves factor k+1 to the front.
    std::vector<std::size_t> word;
    for (std::size_t k = 1; k < L; ++k)
        for (std::size_t i = k; i >= 1; --i) word.push_back(i - 1);

    for (const Occ& M : states_up_to(Eps::standard(e.n(), e.r), degree)) {
        auto states = tensor_states(e, charges, M);
        if (states.empty()) continue;
        std::map<TensorState, std::size_t> rows;
        std::vector<Vec> cols;
        for (const auto& s : states) {
            Vec v = vec_single(s);
            std::vector<std::size_t> order(L);
            for (std::size_t a = 0; a < L; ++a) order[a] = a;
            for (std::size_t i : word) {
                std::size_t a = order[i], b = order[i + 1];
                RMatrix& R = rc.get(charges[a], charges[b]);
                v = apply_pair_at(R, params[a] / params[b], v, i);
                std::swap(order[i], order[i + 1]);
            }
            for (const auto& [st, x] : v) rows.try_emplace(st, rows.size());
            cols.push_back(std::move(v));
        }
        Matrix<Scalar> A(rows.size(), std::vector<Scalar>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [st, x] : cols[c]) A[rows.at(st)][c] = x;
        int rk = rows.empty() ? 0 : rank(A);
        out.ranks[M] = {rk, static_cast<int>(states.size())};
        if (rk) out.character.add_term(occupation_mono(static_cast<int>(L), M, e.r), rk);
    }
    return out;
}

bool kr_nonzero(const Eps& e, int l, int s) { return filling_occupation(e, std::vector<int>(static_cast<std::size_t>(s), l)).has_value(); }

FusionImage kr_module(const Eps& e, int l, int s, const Scalar& c, int degree) {
    if (s < 1) throw Error("KR module needs s >= 1");
    std::vector<Scalar> params;
    for (int i = 1; i <= s; ++i) params.push_back(c * Scalar::q_pow(2 - 2 * s + 2 * (i - 1)));
    return fusion_image(e, std::vector<int>(static_cast<std::size_t>(s), l), params, degree);
}

}  // namespace qosc
