#include "qosc/trunc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qosc {

Eps remove_slot(const Eps& e, int i) {
    if (i < 1 || i > e.n()) throw Error("slot " + std::to_string(i) + " out of range");
    std::vector<int> bits = e.bits;
    bits.erase(bits.begin() + (i - 1));
    return Eps(bits, i <= e.r ? e.r - 1 : e.r);
}

OpExpr reduced_generator_single(const Eps& parent, int i, const GenLabel& g) {
    const int n = parent.n(), r = parent.r;
    if (g.kind == GenLabel::K) {
        if (g.mu.n() != n - 1) throw Error("weight size does not match the child parity");
        std::vector<int> d(static_cast<std::size_t>(n), 0);
        for (int l = 1; l <= n - 1; ++l) d[static_cast<std::size_t>(l < i ? l - 1 : l)] = g.mu[l];
        return op_gen(GenLabel::k(Weight(g.mu.level, d, g.mu.k)));
    }
    const bool E = g.kind == GenLabel::E;
    const int j = g.i;
    auto gen = [&](int a) { return op_gen(E ? GenLabel::e(a) : GenLabel::f(a)); };
    auto qab = [&](int a, int b) { return qform(parent, simple_root(n, a), simple_root(n, b)); };
    if (i == 1) {
        if (j != 0) return gen(j + 1);
        Scalar c = qab(0, 1);
        return E ? op_bracket(gen(1), gen(0), c.inverse()) : op_bracket(gen(0), gen(1), c);
    }
    if (i == n) {
        if (j != 0) return gen(j);
        Scalar c = qab(n - 1, 0);
        return E ? op_bracket(gen(n - 1), gen(0), c) : op_bracket(gen(0), gen(n - 1), c.inverse());
    }
    if (j <= i - 2) return gen(j);
    if (j >= i) return gen(j + 1);
    Scalar c = qab(i - 1, i);
    if (i <= r) return E ? op_bracket(gen(i), gen(i - 1), c.inverse()) : op_bracket(gen(i - 1), gen(i), c);
    return E ? op_bracket(gen(i - 1), gen(i), c) : op_bracket(gen(i), gen(i - 1), c.inverse());
}

namespace {

OpExpr substitute(const OpExpr& x, const std::function<OpExpr(const GenLabel&)>& hat) {
    OpExpr out;
    for (const auto& term : x) {
        OpExpr acc = op_identity(term.coeff);
        for (const auto& g : term.word) acc = op_mul(acc, hat(g));
        out = op_add(out, acc);
    }
    return out;
}

}  // namespace

EpsEmbedding::EpsEmbedding(Eps parent, std::vector<int> removed) : parent_(std::move(parent)), removed_(std::move(removed)) {
    if (removed_.empty()) throw Error("embedding removes no slot");
    for (std::size_t k = 0; k < removed_.size(); ++k) {
        if (removed_[k] < 1 || removed_[k] > parent_.n()) throw Error("removed slot out of range");
        if (k > 0 && removed_[k] <= removed_[k - 1]) throw Error("removed slots must increase");
    }
    child_ = parent_;
    for (std::size_t k = 0; k < removed_.size(); ++k) child_ = remove_slot(child_, removed_[k] - static_cast<int>(k));
    if (child_.n() < 4 || child_.r < 2 || child_.n() - child_.r < 2)
        throw Error("child parity " + child_.str() + " needs at least 4 slots and 2 on each side");
    for (int s = 1; s <= parent_.n(); ++s)
        if (!std::binary_search(removed_.begin(), removed_.end(), s)) slot_map_.push_back(s);
}

std::string EpsEmbedding::str() const {
    std::string s = parent_.str() + " -> " + child_.str() + " removing {";
    for (std::size_t k = 0; k < removed_.size(); ++k) s += (k ? "," : "") + std::to_string(removed_[k]);
    return s + "}";
}

bool EpsEmbedding::in_truncation(const Occ& m) const {
    return std::all_of(removed_.begin(), removed_.end(), [&](int s) { return m[static_cast<std::size_t>(s - 1)] == 0; });
}

bool EpsEmbedding::in_truncation(const TensorState& s) const {
    return std::all_of(s.f.begin(), s.f.end(), [&](const Occ& m) { return in_truncation(m); });
}

Occ EpsEmbedding::restrict(const Occ& m) const {
    if (!in_truncation(m)) throw Error("state outside the truncation");
    Occ out;
    for (int s : slot_map_) out.push_back(m[static_cast<std::size_t>(s - 1)]);
    return out;
}

Occ EpsEmbedding::embed(const Occ& m) const {
    Occ out(static_cast<std::size_t>(parent_.n()), 0);
    for (std::size_t l = 0; l < slot_map_.size(); ++l) out[static_cast<std::size_t>(slot_map_[l] - 1)] = m[l];
    return out;
}

TensorState EpsEmbedding::restrict(const TensorState& s) const {
    TensorState out = s;
    for (auto& f : out.f) f = restrict(f);
    return out;
}

TensorState EpsEmbedding::embed(const TensorState& s) const {
    TensorState out = s;
    for (auto& f : out.f) f = embed(f);
    return out;
}

Vec EpsEmbedding::truncate(const Vec& v) const {
    Vec out;
    for (const auto& [s, c] : v)
        if (in_truncation(s)) out.emplace(restrict(s), c);
    return out;
}

Vec EpsEmbedding::embed(const Vec& v) const {
    Vec out;
    for (const auto& [s, c] : v) out.emplace(embed(s), c);
    return out;
}

Weight EpsEmbedding::embed_weight(const Weight& w) const {
    std::vector<int> d(static_cast<std::size_t>(parent_.n()), 0);
    for (std::size_t l = 0; l < slot_map_.size(); ++l) d[static_cast<std::size_t>(slot_map_[l] - 1)] = w.d[l];
    return Weight(w.level, d, w.k);
}

OpExpr EpsEmbedding::reduced_generator(const GenLabel& g) const { return reduce(op_gen(g)); }

OpExpr EpsEmbedding::reduce(const OpExpr& x) const {
    // φ = φ_1 ∘ φ_2 ∘ ... ∘ φ_t: the last removal is substituted first.
    std::vector<Eps> chain{parent_};
    for (std::size_t k = 0; k < removed_.size(); ++k) chain.push_back(remove_slot(chain.back(), removed_[k] - static_cast<int>(k)));
    OpExpr out = x;
    for (std::size_t k = removed_.size(); k-- > 0;) {
        const Eps& above = chain[k];
        int slot = removed_[k] - static_cast<int>(k);
        std::map<std::string, OpExpr> cache;
        out = substitute(out, [&](const GenLabel& g) {
            auto key = g.str();
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, reduced_generator_single(above, slot, g)).first;
            return it->second;
        });
    }
    return out;
}

// ---------------------------------------------------------- alternating parity

Eps eps_ab(int a, int b) {
    if (a < 1 || b < 1) throw Error("alternating parity needs a, b >= 1");
    std::vector<int> bits;
    for (int k = 0; k < a + b; ++k) {
        bits.push_back(0);
        bits.push_back(1);
    }
    bits.push_back(0);
    return Eps(bits, 2 * a);
}

EpsEmbedding eps_ab_zeros(int a, int b) {
    std::vector<int> rm;
    for (int s = 2; s <= 2 * a + 2 * b; s += 2) rm.push_back(s);
    return EpsEmbedding(eps_ab(a, b), rm);
}

EpsEmbedding eps_ab_ones(int a, int b) {
    std::vector<int> rm;
    for (int s = 1; s <= 2 * a + 2 * b + 1; s += 2) rm.push_back(s);
    return EpsEmbedding(eps_ab(a, b), rm);
}

// ---------------------------------------------------------- checks

namespace {

std::vector<GenLabel> child_generators(const Eps& c) {
    std::vector<GenLabel> gens;
    for (int j = 0; j < c.n(); ++j) {
        gens.push_back(GenLabel::e(j));
        gens.push_back(GenLabel::f(j));
    }
    gens.push_back(GenLabel::k(Weight::big_lambda(c.n())));
    for (int l = 1; l <= c.n(); ++l) gens.push_back(GenLabel::k(Weight::delta(c.n(), l)));
    return gens;
}

std::string vec_text(const Vec& v) {
    std::string s;
    std::size_t k = 0;
    for (const auto& [st, x] : v) {
        if (k++ == 4) return s + "...";
        s += "(" + x.str() + ")" + st.str() + " ";
    }
    return s;
}

// Child tensor states of the given charges with total occupation ≤ degree.
std::vector<TensorState> child_states(const Eps& c, const std::vector<int>& charges, int degree) {
    std::vector<TensorState> out;
    for (const auto& M : states_up_to(Eps::standard(c.n(), c.r), degree))
        for (auto& s : tensor_states(c, charges, M)) out.push_back(std::move(s));
    return out;
}

}  // namespace

ActionComparison compare_actions(const EpsEmbedding& emb, const std::vector<int>& charges, int degree) {
    ActionComparison out;
    const Eps &P = emb.parent(), &C = emb.child();
    auto gens = child_generators(C);
    std::vector<OpExpr> hats;
    for (const auto& g : gens) hats.push_back(emb.reduced_generator(g));
    for (const auto& s : child_states(C, charges, degree)) {
        ++out.states;
        Vec v = vec_single(s);
        Vec pv = emb.embed(v);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            Vec native = apply(C, gens[k], v, Spectral::affine());
            Vec hatted = apply(P, hats[k], pv, Spectral::affine());
            for (const auto& [st, x] : hatted)
                if (!emb.in_truncation(st)) {
                    out.failure = RelationFailure{"hatted " + gens[k].str() + " leaves the truncation", s.str(), vec_text(hatted)};
                    return out;
                }
            Vec image = emb.truncate(hatted);
            Vec diff = vec_sub(image, native);
            if (!vec_is_zero(diff)) {
                out.failure = RelationFailure{"hatted " + gens[k].str() + " vs native", s.str(), vec_text(diff)};
                return out;
            }
        }
    }
    return out;
}

std::optional<RelationFailure> check_reduced_relations(const EpsEmbedding& emb, int d1, int d2) {
    std::vector<Relation> rels;
    for (const auto& r : relation_suite(emb.child())) rels.push_back({"hatted " + r.name, emb.reduce(r.expr)});
    std::vector<Vec> inputs;
    for (const auto& v : relation_inputs(emb.child(), d1, d2)) inputs.push_back(emb.embed(v));
    return check_relations(emb.parent(), rels, inputs, Spectral::affine());
}

std::optional<RelationFailure> check_monoidal(const EpsEmbedding& emb, int l, int m, int degree) {
    const Eps &P = emb.parent(), &C = emb.child();
    std::map<Occ, int> left, right;
    for (const auto& a : states_with_charge(C, l, degree)) ++left[a];
    for (const auto& b : states_with_charge(C, m, degree)) ++right[b];
    for (const auto& M : states_up_to(Eps::standard(C.n(), C.r), degree)) {
        int truncated = 0;
        for (const auto& s : tensor_states(P, {l, m}, emb.embed(M))) truncated += emb.in_truncation(s) ? 1 : 0;
        int product = 0;
        for (const auto& [a, ca] : left) {
            Occ b(M.size());
            bool ok = true;
            for (std::size_t i = 0; i < M.size() && ok; ++i) {
                b[i] = M[i] - a[i];
                ok = b[i] >= 0;
            }
            if (!ok) continue;
            auto it = right.find(b);
            if (it != right.end()) product += ca * it->second;
        }
        if (truncated != product) {
            std::string w;
            for (int x : M) w += std::to_string(x);
            return RelationFailure{"dim tr(V (x) W) = sum dim tr(V) dim tr(W)", w, std::to_string(truncated) + " != " + std::to_string(product)};
        }
    }
    return std::nullopt;
}

bool component_survives(Decomposition& parent, const EpsEmbedding& emb, int t, int bound) {
    if (!parent.has_component(t)) return false;
    const Eps& C = emb.child();
    Weight top = occ_weight(parent.eps(), 2, parent.component_top(t));
    for (const auto& M : states_up_to(Eps::standard(C.n(), C.r), bound)) {
        Occ PM = emb.embed(M);
        if (depth_below(top, occ_weight(parent.eps(), 2, PM)) < 0) continue;
        if (parent.basis_states(PM).empty()) continue;
        if (!parent.slice(t, PM).basis.empty()) return true;
    }
    return false;
}

bool CrossEpsReport::ok() const {
    if (square) return false;
    return std::all_of(rows.begin(), rows.end(), [](const CrossEpsRow& r) { return !r.survives || (r.compared && r.equal); });
}

CrossEpsReport compare_spectral(const EpsEmbedding& emb, int l, int m, int T, int parent_depth, int child_depth) {
    CrossEpsReport rep;
    RMatrix child(emb.child(), l, m), parent(emb.parent(), l, m);
    child.solve(child_depth);
    for (int t = 0; t <= T; ++t) {
        if (!child.decomposition().has_component(t)) continue;
        if (!parent.decomposition().has_component(t)) throw Error("component " + std::to_string(t) + " survives truncation but is absent in the parent");
        parent.decomposition().normalize_by(t, emb.embed(child.decomposition().top_vector(t)), emb.embed(child.decomposition().top_image(t)));
    }
    parent.solve(parent_depth);
    const auto &pc = parent.coeffs(), &cc = child.coeffs();
    std::optional<int> t0;
    for (int t = 0; t <= T; ++t) {
        CrossEpsRow row;
        row.t = t;
        row.survives = child.decomposition().has_component(t);
        if (row.survives && pc.rho.count(t) && cc.rho.count(t)) {
            if (!t0) t0 = t;
            row.compared = true;
            row.parent_ratio = pc.rho.at(t) / pc.rho.at(*t0);
            row.child_ratio = cc.rho.at(t) / cc.rho.at(*t0);
            row.equal = row.parent_ratio == row.child_ratio;
        }
        rep.rows.push_back(row);
    }
    // π ∘ P_t = tr(P_t) ∘ π on child states near the child top
    const Eps& C = emb.child();
    Occ top = total_occ(TensorState({top_state(C, l), top_state(C, m)}));
    for (const auto& M : weights_within(C, top, 2, child_depth)) {
        for (const auto& s : child.decomposition().basis_states(M)) {
            const auto& cimg = child.images(s);
            const auto& pimg = parent.images(emb.embed(s));
            std::set<int> ts;
            for (const auto& [t, v] : cimg) ts.insert(t);
            for (const auto& [t, v] : pimg) ts.insert(t);
            for (int t : ts) {
                if (t > T) continue;
                Vec pv = pimg.count(t) ? pimg.at(t) : Vec{};
                for (const auto& [st, x] : pv)
                    if (!emb.in_truncation(st)) {
                        rep.square = RelationFailure{"P_" + std::to_string(t) + " leaves the truncation", s.str(), vec_text(pv)};
                        return rep;
                    }
                Vec diff = vec_sub(emb.truncate(pv), cimg.count(t) ? cimg.at(t) : Vec{});
                if (!vec_is_zero(diff)) {
                    rep.square = RelationFailure{"truncated P_" + std::to_string(t) + " vs child P_" + std::to_string(t), s.str(), vec_text(diff)};
                    return rep;
                }
            }
        }
    }
    return rep;
}

}  // namespace qosc
