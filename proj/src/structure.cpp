#include "qosc/structure.hpp"

#include <algorithm>

namespace qosc {

int N_of(int l, int m) {
    int l1 = std::max(l, m), l2 = std::min(l, m);
    return std::max({-l1, l2, 0});
}

std::vector<int> component_label(int l, int m, int t) {
    int l1 = std::max(l, m), l2 = std::min(l, m);
    return {l1 + t, l2 - t};
}

Occ top_state(const Eps& e, int l) {
    auto m = filling_occupation(e, {l});
    if (!m) throw Error("module of charge " + std::to_string(l) + " is zero for parity " + e.str());
    return *m;
}

namespace {

Occ shifted(Occ base, int a, int from, int to) {
    base[static_cast<std::size_t>(from - 1)] -= a;
    base[static_cast<std::size_t>(to - 1)] += a;
    return base;
}

}  // namespace

std::optional<TensorState> v_plus(const Eps& e, int l, int m, int a, int b) {
    if (a < 0 || b < 0) return std::nullopt;
    Occ x = top_state(e, l), y = top_state(e, m);
    x[static_cast<std::size_t>(e.r - 1)] += a;
    x[static_cast<std::size_t>(e.r)] += a;
    y[static_cast<std::size_t>(e.r - 1)] += b;
    y[static_cast<std::size_t>(e.r)] += b;
    if (!occ_valid(e, x) || !occ_valid(e, y)) return std::nullopt;
    return TensorState({x, y});
}

std::optional<TensorState> v_minus(const Eps& e, int l, int m, int a, int b) {
    if (a < 0 || b < 0) return std::nullopt;
    int l1 = std::max(l, m), l2 = std::min(l, m);
    Occ x = top_state(e, l), y = top_state(e, m);
    if (l2 >= 0) {
        x = shifted(x, a, e.r + 1, e.r + 2);
        y = shifted(y, b, e.r + 1, e.r + 2);
    } else if (l1 <= 0) {
        x = shifted(x, a, e.r, e.r - 1);
        y = shifted(y, b, e.r, e.r - 1);
    } else {
        return std::nullopt;
    }
    if (!occ_valid(e, x) || !occ_valid(e, y)) return std::nullopt;
    return TensorState({x, y});
}

Vec singular_formula(const Eps& e, int l, int m, int t) {
    int N = N_of(l, m);
    int i = t - N;
    if (i < -N) throw Error("component index out of range");
    int al = std::abs(l), am = std::abs(m);
    Vec u;
    if (i >= 0) {
        Scalar c(1);
        for (int j = 0; j <= i; ++j) {
            if (j > 0) {
                int k = j;
                c *= -(Scalar::q_pow(-(am + 2 * i - 2 * k + 1)) * qint(am + i + 1 - k) * qint(i + 1 - k) /
                       (qint(al + k) * qint(k)));
            }
            if (auto s = v_plus(e, l, m, j, i - j)) vec_add_to(u, vec_single(*s), c);
        }
    } else {
        int s = -i;
        Scalar c(1);
        for (int j = 0; j <= s; ++j) {
            if (j > 0) {
                int k = j;
                c *= -(Scalar::q_pow(am + 2 * i + 2 * k) * qint(s + 1 - k) / qint(k));
            }
            if (auto st = v_minus(e, l, m, j, s - j)) vec_add_to(u, vec_single(*st), c);
        }
    }
    return u;
}

std::vector<Vec> singular_kernel(const Eps& e, const std::vector<int>& charges, const Occ& M) {
    auto states = tensor_states(e, charges, M);
    std::map<TensorState, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(states.size());
    for (std::size_t c = 0; c < states.size(); ++c) {
        Vec v = vec_single(states[c]);
        for (int i = 1; i < e.n(); ++i)
            for (const auto& [s, x] : apply(e, GenLabel::e(i), v)) {
                auto it = rows.try_emplace(s, rows.size()).first;
                cols[c].emplace_back(it->second, x);
            }
    }
    Matrix<Scalar> a(rows.size(), std::vector<Scalar>(states.size()));
    for (std::size_t c = 0; c < states.size(); ++c)
        for (const auto& [r, x] : cols[c]) a[r][c] += x;
    std::vector<Vec> out;
    for (const auto& k : kernel(a, states.size())) {
        Vec v;
        for (std::size_t c = 0; c < states.size(); ++c)
            if (!k[c].is_zero()) v.emplace(states[c], k[c]);
        out.push_back(std::move(v));
    }
    return out;
}

// ----------------------------------------------------------- Decomposition

Decomposition::Decomposition(Eps e, int l, int m) : e_(std::move(e)), l_(l), m_(m), N_(N_of(l, m)) {
    TensorState t({top_state(e_, l_), top_state(e_, m_)});
    top_ = weight_of(e_, t);
}

bool Decomposition::has_component(int t) const {
    if (t < 0) return false;
    return filling_occupation(e_, component_label(l_, m_, t)).has_value();
}

Occ Decomposition::component_top(int t) const {
    auto occ = filling_occupation(e_, component_label(l_, m_, t));
    if (!occ) throw Error("component " + std::to_string(t) + " is absent for parity " + e_.str());
    return *occ;
}

int Decomposition::component_depth(int t) const { return depth_below(top_, occ_weight(e_, 2, component_top(t))); }

namespace {

bool standard_parity(const Eps& e) {
    return std::all_of(e.bits.begin(), e.bits.end(), [](int b) { return b == 0; });
}

Vec kernel_top(const Eps& e, int a, int b, const Occ& M) {
    auto ker = singular_kernel(e, {a, b}, M);
    if (ker.size() != 1) throw Error("expected a one-dimensional space of singular vectors, found " + std::to_string(ker.size()));
    Vec v = ker[0];
    return vec_scale(v, v.begin()->second.inverse());
}

}  // namespace

const Vec& Decomposition::top_vector(int t) {
    auto it = tops_.find(t);
    if (it != tops_.end()) return it->second;
    Vec v = standard_parity(e_) ? singular_formula(e_, l_, m_, t) : kernel_top(e_, l_, m_, component_top(t));
    return tops_.emplace(t, std::move(v)).first->second;
}

const Vec& Decomposition::top_image(int t) {
    auto it = top_images_.find(t);
    if (it != top_images_.end()) return it->second;
    Vec v = standard_parity(e_) ? singular_formula(e_, m_, l_, t) : kernel_top(e_, m_, l_, component_top(t));
    return top_images_.emplace(t, std::move(v)).first->second;
}

const Scalar& Decomposition::image_scale(int t) const {
    static const Scalar one(1);
    auto it = scale_.find(t);
    return it == scale_.end() ? one : it->second;
}

const Decomposition::Slice& Decomposition::slice(int t, const Occ& M) {
    auto key = std::make_pair(t, M);
    auto it = slices_.find(key);
    if (it != slices_.end()) return it->second;
    Slice s;
    if (has_component(t)) {
        Occ topM = component_top(t);
        Weight top_w = occ_weight(e_, 2, topM);
        Weight mu = occ_weight(e_, 2, M);
        if (M == topM) {
            s.basis.push_back(top_vector(t));
            s.images.push_back(top_image(t));
        } else if (depth_below(top_w, mu) > 0) {
            SparseEchelon ech;
            for (int i = 1; i < e_.n(); ++i) {
                Weight up = mu + simple_root(e_.n(), i);
                if (depth_below(top_w, up) < 0) continue;
                auto upM = weight_occ(e_, up);
                if (!upM) continue;
                const Slice& above = slice(t, *upM);
                for (std::size_t k = 0; k < above.basis.size(); ++k) {
                    Vec b = apply(e_, GenLabel::f(i), above.basis[k]);
                    if (b.empty() || !ech.add(b)) continue;
                    s.basis.push_back(std::move(b));
                    s.images.push_back(apply(e_, GenLabel::f(i), above.images[k]));
                }
            }
        }
    }
    return slices_.emplace(key, std::move(s)).first->second;
}

std::vector<int> Decomposition::components_at(const Occ& M) {
    std::vector<int> out;
    Weight mu = occ_weight(e_, 2, M);
    int d = depth_below(top_, mu);
    if (d < 0) return out;
    for (int t = 0; t <= N_ + d + 1; ++t) {
        if (!has_component(t)) continue;
        if (depth_below(occ_weight(e_, 2, component_top(t)), mu) < 0) continue;
        if (!slice(t, M).basis.empty()) out.push_back(t);
    }
    return out;
}

std::vector<TensorState> Decomposition::basis_states(const Occ& M) const { return tensor_states(e_, {l_, m_}, M); }
std::vector<TensorState> Decomposition::mirror_states(const Occ& M) const { return tensor_states(e_, {m_, l_}, M); }

const Decomposition::WeightData& Decomposition::weight_data(const Occ& M) {
    auto it = weights_.find(M);
    if (it != weights_.end()) return it->second;
    WeightData wd;
    wd.states = basis_states(M);
    std::map<TensorState, std::size_t> idx;
    for (std::size_t i = 0; i < wd.states.size(); ++i) idx[wd.states[i]] = i;
    Matrix<Scalar> a(wd.states.size());
    for (int t : components_at(M)) {
        const Slice& s = slice(t, M);
        for (std::size_t k = 0; k < s.basis.size(); ++k) wd.columns.emplace_back(t, k);
    }
    if (wd.columns.size() != wd.states.size())
        throw Error("component decomposition incomplete at a weight of dimension " + std::to_string(wd.states.size()) +
                    " (found " + std::to_string(wd.columns.size()) + ")");
    for (auto& row : a) row.assign(wd.columns.size(), Scalar());
    for (std::size_t c = 0; c < wd.columns.size(); ++c) {
        const Vec& v = slice(wd.columns[c].first, M).basis[wd.columns[c].second];
        for (const auto& [s, x] : v) a[idx.at(s)][c] = x;
    }
    wd.inv = inverse(std::move(a));
    return weights_.emplace(M, std::move(wd)).first->second;
}

Occ Decomposition::occ_of(const Vec& v) const {
    if (v.empty()) throw Error("occ_of: zero vector");
    Occ M(static_cast<std::size_t>(e_.n()), 0);
    for (const auto& f : v.begin()->first.f)
        for (std::size_t i = 0; i < M.size(); ++i) M[i] += f[i];
    return M;
}

std::vector<Scalar> Decomposition::coordinates(const Vec& v, const Occ& M) {
    const WeightData& wd = weight_data(M);
    std::vector<Scalar> x(wd.states.size());
    std::map<TensorState, std::size_t> idx;
    for (std::size_t i = 0; i < wd.states.size(); ++i) idx[wd.states[i]] = i;
    for (const auto& [s, c] : v) {
        auto it = idx.find(s);
        if (it == idx.end()) throw Error("vector is not weight-homogeneous");
        x[it->second] = c;
    }
    std::vector<Scalar> out(wd.columns.size());
    for (std::size_t r = 0; r < out.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c)
            if (!x[c].is_zero() && !wd.inv[r][c].is_zero()) out[r] += wd.inv[r][c] * x[c];
    return out;
}

std::map<int, Vec> Decomposition::project(const Vec& v) {
    std::map<int, Vec> out;
    if (v.empty()) return out;
    Occ M = occ_of(v);
    auto c = coordinates(v, M);
    const WeightData& wd = weight_data(M);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        auto [t, idx] = wd.columns[k];
        vec_add_to(out[t], slice(t, M).images[idx], c[k] * image_scale(t));
    }
    return out;
}

Vec Decomposition::project(int t, const Vec& v) {
    auto all = project(v);
    auto it = all.find(t);
    return it == all.end() ? Vec{} : it->second;
}

std::map<int, Vec> Decomposition::split(const Vec& v) {
    std::map<int, Vec> out;
    if (v.empty()) return out;
    Occ M = occ_of(v);
    auto c = coordinates(v, M);
    const WeightData& wd = weight_data(M);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        auto [t, idx] = wd.columns[k];
        vec_add_to(out[t], slice(t, M).basis[idx], c[k]);
    }
    return out;
}

void Decomposition::normalize_by(int t, const Vec& ref, const Vec& ref_image) {
    auto parts = split(ref);
    if (parts.size() != 1 || parts.begin()->first != t) throw Error("reference vector does not lie in component " + std::to_string(t));
    Vec img = project(t, ref);
    if (img.empty() || ref_image.empty()) throw Error("reference vector has zero image");
    const auto& [s0, c0] = *ref_image.begin();
    auto it = img.find(s0);
    if (it == img.end()) throw Error("reference image is not proportional");
    Scalar ratio = it->second / c0;
    if (!vec_is_zero(vec_sub(img, vec_scale(ref_image, ratio)))) throw Error("reference image is not proportional");
    scale_[t] = image_scale(t) / ratio;
}

// ------------------------------------------------------------ polarization

Scalar state_norm(const Occ& m) {
    int e = 0;
    Scalar f(1);
    for (int x : m) {
        e -= x * (x - 1) / 2;
        f *= qfact(x);
    }
    return f * Scalar::q_pow(e);
}

std::optional<RelationFailure> polarization_check(const Eps& e, int max_total) {
    const int n = e.n(), r = e.r;
    auto mq = [](int k) {  // (-q^2)^k
        return Scalar(k % 2 ? -1 : 1) * Scalar::q_pow(2 * k);
    };
    struct Pair {
        std::string name;
        GenLabel x;
        OpExpr eta;
    };
    std::vector<Pair> pairs;
    for (int i = 1; i < n; ++i) {
        Weight al = simple_root(n, i);
        Scalar qi = q_slot(e, i).value();
        Scalar ce, cf;
        if (i < r) {
            ce = mq(e.at(i) - e.at(i + 1));
            cf = mq(e.at(i + 1) - e.at(i));
        } else if (i == r) {
            ce = mq(e.at(r) - 1);
            cf = mq(1 - e.at(r));
        } else {
            ce = Scalar(1);
            cf = Scalar(1);
        }
        pairs.push_back({"e" + std::to_string(i), GenLabel::e(i), OpExpr{{ce * qi, {GenLabel::f(i), GenLabel::k(-al)}}}});
        pairs.push_back({"f" + std::to_string(i), GenLabel::f(i), OpExpr{{cf * qi.inverse(), {GenLabel::k(al), GenLabel::e(i)}}}});
    }
    pairs.push_back({"kL", GenLabel::k(Weight::big_lambda(n)), op_gen(GenLabel::k(Weight::big_lambda(n)))});
    for (int a = 1; a <= n; ++a) pairs.push_back({"kd", GenLabel::k(Weight::delta(n, a)), op_gen(GenLabel::k(Weight::delta(n, a)))});

    auto all = states_up_to(e, max_total + 2);
    std::map<Weight, std::vector<Occ>> by_weight;
    for (const auto& m : all) by_weight[weight_of(e, m)].push_back(m);
    for (const auto& p : pairs) {
        Weight shift = p.x.kind == GenLabel::E ? simple_root(n, p.x.i) : p.x.kind == GenLabel::F ? -simple_root(n, p.x.i) : Weight::zero(n);
        for (const auto& v : all) {
            if (total(v) > max_total) continue;
            auto it = by_weight.find(weight_of(e, v) + shift);
            if (it == by_weight.end()) continue;
            Vec xv = apply(e, p.x, vec_single(TensorState({v})));
            for (const auto& w : it->second) {
                TensorState ws({w});
                Scalar lhs;
                if (auto f = xv.find(ws); f != xv.end()) lhs = f->second * state_norm(w);
                Vec ew = apply(e, p.eta, vec_single(ws));
                Scalar rhs;
                if (auto f = ew.find(TensorState({v})); f != ew.end()) rhs = f->second * state_norm(v);
                if (lhs != rhs) return RelationFailure{"polarization " + p.name, TensorState({v}).str() + " , " + ws.str(), lhs.str() + " != " + rhs.str()};
            }
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ ladders

std::optional<RelationFailure> ladder_check(const Eps& e, int l, int m, int bound) {
    const int n = e.n(), r = e.r;
    auto E = [](int i) { return GenLabel::e(i); };
    auto F = [](int i) { return GenLabel::f(i); };
    int al = std::abs(l), am = std::abs(m);
    int l1 = std::max(l, m), l2 = std::min(l, m);
    auto vp = [&](int a, int b) { auto s = v_plus(e, l, m, a, b); return s ? vec_single(*s) : Vec{}; };
    auto vm = [&](int a, int b) { auto s = v_minus(e, l, m, a, b); return s ? vec_single(*s) : Vec{}; };
    auto combo = [](const Vec& x, const Scalar& cx, const Vec& y, const Scalar& cy) {
        Vec out;
        vec_add_to(out, x, cx);
        vec_add_to(out, y, cy);
        return out;
    };
    auto Q = [](int k) { return Scalar::q_pow(k); };

    Word Ep, Fp;
    for (int i = r + 1; i <= n - 1; ++i) Ep.push_back(E(i));
    for (int i = r - 1; i >= 1; --i) Ep.push_back(E(i));
    Ep.push_back(E(0));
    Fp.push_back(F(0));
    for (int i = 1; i <= r - 1; ++i) Fp.push_back(F(i));
    for (int i = n - 1; i >= r + 1; --i) Fp.push_back(F(i));

    struct Check {
        std::string name;
        Vec lhs, rhs;
    };
    std::vector<Check> checks;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b) {
            std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            Vec v = vp(a, b);
            if (!v.empty()) {
                checks.push_back({"E+ v+" + tag, apply(e, Ep, v), combo(vp(a, b + 1), Scalar(1), vp(a + 1, b), Q(-am - 2 * b - 1))});
                checks.push_back({"f_r v+" + tag, apply(e, F(r), v), combo(vp(a, b + 1), Q(-al - 2 * a - 1), vp(a + 1, b), Scalar(1))});
                checks.push_back({"F+ v+" + tag, apply(e, Fp, v),
                                  combo(vp(a - 1, b), -(qint(a + al) * qint(a)), vp(a, b - 1), -(Q(2 * a + al + 1) * qint(b + am) * qint(b)))});
            }
            Vec w = vm(a, b);
            if (w.empty()) continue;
            if (l2 >= 0 && a + b <= N_of(l, m)) {
                Word Em{E(r)}, Fm{F(0)};
                for (int i = r + 2; i <= n - 1; ++i) Em.push_back(E(i));
                for (int i = r - 1; i >= 1; --i) Em.push_back(E(i));
                Em.push_back(E(0));
                for (int i = n - 1; i >= r + 2; --i) Fm.push_back(F(i));
                for (int i = 1; i <= r - 1; ++i) Fm.push_back(F(i));
                Fm.push_back(F(r));
                checks.push_back({"E- v-" + tag, apply(e, Em, w), combo(vm(a, b + 1), -qint(m - b), vm(a + 1, b), -(Q(m - 2 * b) * qint(l - a)))});
                checks.push_back({"f_{r+1} v-" + tag, apply(e, F(r + 1), w), combo(vm(a, b + 1), Q(l - 2 * a) * qint(m - b), vm(a + 1, b), qint(l - a))});
                checks.push_back({"F- v-" + tag, apply(e, Fm, w), combo(vm(a - 1, b), -qint(a), vm(a, b - 1), -(Q(-l + 2 * a) * qint(b)))});
            } else if (l1 <= 0 && a + b <= N_of(l, m)) {
                Word Em{E(r)}, Fm{F(0)};
                for (int i = r + 1; i <= n - 1; ++i) Em.push_back(E(i));
                for (int i = r - 2; i >= 1; --i) Em.push_back(E(i));
                Em.push_back(E(0));
                for (int i = 1; i <= r - 2; ++i) Fm.push_back(F(i));
                for (int i = n - 1; i >= r + 1; --i) Fm.push_back(F(i));
                Fm.push_back(F(r));
                checks.push_back({"E- v-" + tag, apply(e, Em, w), combo(vm(a, b + 1), -qint(-m - b), vm(a + 1, b), -(Q(-m - 2 * b) * qint(-l - a)))});
                checks.push_back({"f_{r-1} v-" + tag, apply(e, F(r - 1), w), combo(vm(a, b + 1), Q(-l - 2 * a) * qint(-m - b), vm(a + 1, b), qint(-l - a))});
                checks.push_back({"F- v-" + tag, apply(e, Fm, w), combo(vm(a - 1, b), -qint(a), vm(a, b - 1), -(Q(l + 2 * a) * qint(b)))});
            }
        }
    for (const auto& c : checks) {
        Vec diff = vec_sub(c.lhs, c.rhs);
        if (!vec_is_zero(diff)) {
            std::string s;
            for (const auto& [st, x] : diff) s += "(" + x.str() + ")" + st.str() + " ";
            return RelationFailure{c.name, "l=" + std::to_string(l) + " m=" + std::to_string(m), s};
        }
    }
    return std::nullopt;
}

}  // namespace qosc
