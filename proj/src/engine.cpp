#include "qosc/engine.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace qosc {

namespace {

const Scalar& qint_cached(int m) {
    static std::deque<Scalar> pos, neg;  // references stay valid on growth
    auto& tab = m >= 0 ? pos : neg;
    std::size_t idx = static_cast<std::size_t>(std::abs(m));
    while (tab.size() <= idx) tab.push_back(qint(m >= 0 ? static_cast<int>(tab.size()) : -static_cast<int>(tab.size())));
    return tab[idx];
}

int& slot(Occ& m, int i) { return m[static_cast<std::size_t>(i - 1)]; }
int slot(const Occ& m, int i) { return m[static_cast<std::size_t>(i - 1)]; }

}  // namespace

std::string GenLabel::str() const {
    switch (kind) {
        case E: return "e" + std::to_string(i);
        case F: return "f" + std::to_string(i);
        default: return "k[" + mu.str() + "]";
    }
}

OpExpr op_gen(const GenLabel& g, const Scalar& c) { return {OpTerm{c, {g}}}; }
OpExpr op_identity(const Scalar& c) { return {OpTerm{c, {}}}; }

OpExpr op_mul(const OpExpr& a, const OpExpr& b) {
    OpExpr r;
    for (const auto& x : a)
        for (const auto& y : b) {
            Word w = x.word;
            w.insert(w.end(), y.word.begin(), y.word.end());
            r.push_back({x.coeff * y.coeff, std::move(w)});
        }
    return r;
}

OpExpr op_add(const OpExpr& a, const OpExpr& b) {
    OpExpr r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

OpExpr op_scale(const OpExpr& a, const Scalar& c) {
    OpExpr r = a;
    for (auto& t : r) t.coeff *= c;
    return r;
}

OpExpr op_bracket(const OpExpr& a, const OpExpr& b, const Scalar& t) {
    return op_add(op_mul(a, b), op_scale(op_mul(b, a), -t));
}

std::string TensorState::str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j) os << "(x)";
        os << "|";
        for (std::size_t i = 0; i < f[j].size(); ++i) os << (i ? "," : "") << f[j][i];
        os << ">";
        if (z[j]) os << "z" << j + 1 << "^" << z[j];
    }
    return os.str();
}

void vec_add_to(Vec& acc, const Vec& v, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [s, x] : v) {
        auto it = acc.find(s);
        Scalar add = c.is_one() ? x : x * c;
        if (it == acc.end()) {
            acc.emplace(s, add);
        } else {
            it->second += add;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

Vec vec_scale(const Vec& v, const Scalar& c) {
    Vec r;
    if (c.is_zero()) return r;
    for (const auto& [s, x] : v) r.emplace(s, x * c);
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    vec_add_to(r, b, Scalar(-1));
    return r;
}

Vec vec_single(const TensorState& s, const Scalar& c) {
    Vec r;
    if (!c.is_zero()) r.emplace(s, c);
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (const auto& kv : v)
        if (!kv.second.is_zero()) return false;
    return true;
}

Weight weight_of(const Eps& e, const Occ& m) { return occ_weight(e, 1, m); }

Weight weight_of(const Eps& e, const TensorState& s) {
    Weight w = Weight::zero(e.n());
    for (std::size_t j = 0; j < s.f.size(); ++j) {
        w = w + weight_of(e, s.f[j]);
        w.k += s.z[j];
    }
    return w;
}

std::optional<ActResult> act(const Eps& e, const GenLabel& g, const Occ& m) {
    const int n = e.n(), r = e.r;
    if (g.kind == GenLabel::K) return ActResult{m, qhat(e, weight_of(e, m), g.mu), 0};
    const int i = ((g.i % n) + n) % n;
    const bool is_e = g.kind == GenLabel::E;
    ActResult res{m, Scalar(1), 0};
    Occ& t = res.m;
    if (i == 0) {
        if (is_e) {
            slot(t, 1) += 1;
            slot(t, n) += 1;
            res.zpow = 1;
        } else {
            res.coeff = -(qint_cached(slot(m, 1)) * qint_cached(slot(m, n)));
            slot(t, 1) -= 1;
            slot(t, n) -= 1;
            res.zpow = -1;
        }
    } else if (i == r) {
        if (is_e) {
            res.coeff = -(qint_cached(slot(m, r)) * qint_cached(slot(m, r + 1)));
            slot(t, r) -= 1;
            slot(t, r + 1) -= 1;
        } else {
            slot(t, r) += 1;
            slot(t, r + 1) += 1;
        }
    } else if (i < r) {
        if (is_e) {
            res.coeff = qint_cached(slot(m, i));
            slot(t, i) -= 1;
            slot(t, i + 1) += 1;
        } else {
            res.coeff = qint_cached(slot(m, i + 1));
            slot(t, i) += 1;
            slot(t, i + 1) -= 1;
        }
    } else {
        if (is_e) {
            res.coeff = qint_cached(slot(m, i + 1));
            slot(t, i) += 1;
            slot(t, i + 1) -= 1;
        } else {
            res.coeff = qint_cached(slot(m, i));
            slot(t, i) -= 1;
            slot(t, i + 1) += 1;
        }
    }
    if (res.coeff.is_zero() || !occ_valid(e, t)) return std::nullopt;
    return res;
}

namespace {

Scalar spectral_factor(const Spectral& sp, std::size_t j, int zpow) {
    if (zpow == 0 || sp.symbolic || j >= sp.x.size()) return Scalar(1);
    return sp.x[j].pow(zpow);
}

}  // namespace

Vec apply(const Eps& e, const GenLabel& g, const Vec& v, const Spectral& sp) {
    Vec out;
    auto add = [&out](TensorState s, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = out.find(s);
        if (it == out.end()) {
            out.emplace(std::move(s), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    if (g.kind == GenLabel::K) {
        for (const auto& [s, c] : v) {
            QMono mono;
            for (const auto& f : s.f) mono = mono * qhat_mono(e, weight_of(e, f), g.mu);
            add(s, c * mono.value());
        }
        return out;
    }
    const int n = e.n();
    Weight alpha = simple_root(n, ((g.i % n) + n) % n);
    const bool is_e = g.kind == GenLabel::E;
    for (const auto& [s, c] : v) {
        const std::size_t k = s.f.size();
        std::vector<QMono> kfac(k);
        for (std::size_t j = 0; j < k; ++j) kfac[j] = qhat_mono(e, weight_of(e, s.f[j]), is_e ? -alpha : alpha);
        for (std::size_t j = 0; j < k; ++j) {
            auto res = act(e, g, s.f[j]);
            if (!res) continue;
            QMono mono;
            if (is_e) {
                for (std::size_t jj = j + 1; jj < k; ++jj) mono = mono * kfac[jj];
            } else {
                for (std::size_t jj = 0; jj < j; ++jj) mono = mono * kfac[jj];
            }
            TensorState t = s;
            t.f[j] = std::move(res->m);
            if (sp.symbolic) t.z[j] += res->zpow;
            Scalar coeff = c * res->coeff * mono.value() * spectral_factor(sp, j, res->zpow);
            add(std::move(t), coeff);
        }
    }
    return out;
}

Vec apply(const Eps& e, const Word& w, const Vec& v, const Spectral& sp) {
    Vec cur = v;
    for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) cur = apply(e, *it, cur, sp);
    return cur;
}

Vec apply(const Eps& e, const OpExpr& x, const Vec& v, const Spectral& sp) {
    Vec out;
    for (const auto& t : x) vec_add_to(out, apply(e, t.word, v, sp), t.coeff);
    return out;
}

std::vector<CoproductTerm> coproduct(const GenLabel& g, int n) {
    if (g.kind == GenLabel::K) return {{Scalar(1), {g}, {g}}};
    Weight alpha = simple_root(n, ((g.i % n) + n) % n);
    if (g.kind == GenLabel::E) return {{Scalar(1), {}, {g}}, {Scalar(1), {g}, {GenLabel::k(-alpha)}}};
    return {{Scalar(1), {g}, {}}, {Scalar(1), {GenLabel::k(alpha)}, {g}}};
}

int counit(const GenLabel& g) { return g.kind == GenLabel::K ? 1 : 0; }

OpExpr antipode(const OpExpr& x, int n) {
    OpExpr out;
    for (const auto& t : x) {
        OpExpr acc = op_identity(t.coeff);
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
            const GenLabel& g = *it;
            OpExpr s;
            if (g.kind == GenLabel::K) {
                s = op_gen(GenLabel::k(-g.mu));
            } else {
                Weight alpha = simple_root(n, ((g.i % n) + n) % n);
                if (g.kind == GenLabel::E) s = OpExpr{{Scalar(-1), {g, GenLabel::k(alpha)}}};
                else s = OpExpr{{Scalar(-1), {GenLabel::k(-alpha), g}}};
            }
            acc = op_mul(acc, s);
        }
        out = op_add(out, acc);
    }
    return out;
}

// ------------------------------------------------------------ enumeration

namespace {

void enum_states(const Eps& e, int pos, int budget, Occ& cur, std::vector<Occ>& out) {
    if (pos == e.n()) {
        out.push_back(cur);
        return;
    }
    int cap = e.bits[static_cast<std::size_t>(pos)] ? std::min(1, budget) : budget;
    for (int v = 0; v <= cap; ++v) {
        cur[static_cast<std::size_t>(pos)] = v;
        enum_states(e, pos + 1, budget - v, cur, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

void enum_below(const Eps& e, const Occ& M, int pos, Occ& cur, std::vector<Occ>& out) {
    if (pos == e.n()) {
        out.push_back(cur);
        return;
    }
    int cap = M[static_cast<std::size_t>(pos)];
    if (e.bits[static_cast<std::size_t>(pos)]) cap = std::min(cap, 1);
    for (int v = 0; v <= cap; ++v) {
        cur[static_cast<std::size_t>(pos)] = v;
        enum_below(e, M, pos + 1, cur, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

std::vector<Occ> states_up_to(const Eps& e, int max_total) {
    std::vector<Occ> out;
    Occ cur(static_cast<std::size_t>(e.n()), 0);
    enum_states(e, 0, max_total, cur, out);
    return out;
}

std::vector<Occ> states_with_charge(const Eps& e, int charge_value, int max_total) {
    std::vector<Occ> out;
    for (auto& m : states_up_to(e, max_total))
        if (charge(e, m) == charge_value) out.push_back(std::move(m));
    return out;
}

std::vector<TensorState> tensor_states(const Eps& e, const std::vector<int>& charges, const Occ& M) {
    std::vector<TensorState> out;
    if (!occ_valid(Eps(std::vector<int>(M.size(), 0), e.r), M)) return out;
    const std::size_t k = charges.size();
    std::vector<Occ> chosen(k);
    std::function<void(std::size_t, const Occ&)> rec = [&](std::size_t j, const Occ& rem) {
        if (j + 1 == k) {
            if (occ_valid(e, rem) && charge(e, rem) == charges[j]) {
                chosen[j] = rem;
                out.emplace_back(chosen);
            }
            return;
        }
        std::vector<Occ> subs;
        Occ cur(rem.size(), 0);
        enum_below(e, rem, 0, cur, subs);
        for (const auto& s : subs) {
            if (charge(e, s) != charges[j]) continue;
            Occ next = rem;
            for (std::size_t i = 0; i < rem.size(); ++i) next[i] -= s[i];
            chosen[j] = s;
            rec(j + 1, next);
        }
    };
    if (k > 0) rec(0, M);
    return out;
}

// -------------------------------------------------------------- relations

std::vector<Relation> relation_suite(const Eps& e) {
    const int n = e.n();
    std::vector<Relation> rels;
    auto E = [](int i) { return op_gen(GenLabel::e(i)); };
    auto F = [](int i) { return op_gen(GenLabel::f(i)); };
    auto K = [](const Weight& mu) { return op_gen(GenLabel::k(mu)); };
    auto name2 = [](const char* s, int a, int b) { return std::string(s) + "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
    auto name1 = [](const char* s, int a) { return std::string(s) + "(" + std::to_string(a) + ")"; };
    Scalar qmq = Scalar::q_pow(1) - Scalar::q_pow(-1);

    std::vector<Weight> basis{Weight::big_lambda(n)};
    for (int i = 1; i <= n; ++i) basis.push_back(Weight::delta(n, i));

    rels.push_back({"k_zero", op_add(K(Weight::zero(n)), op_identity(Scalar(-1)))});
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b)
            rels.push_back({name2("k_group", static_cast<int>(a), static_cast<int>(b)),
                            op_add(op_mul(K(basis[a]), K(basis[b])), op_scale(K(basis[a] + basis[b]), Scalar(-1)))});
    for (int i = 0; i < n; ++i) {
        Weight al = simple_root(n, i);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            const Weight& mu = basis[a];
            Scalar c = qhat(e, al, mu);
            rels.push_back({name2("k_e", static_cast<int>(a), i),
                            op_add(op_mul(op_mul(K(mu), E(i)), K(-mu)), op_scale(E(i), -c))});
            rels.push_back({name2("k_f", static_cast<int>(a), i),
                            op_add(op_mul(op_mul(K(mu), F(i)), K(-mu)), op_scale(F(i), -c.inverse()))});
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            OpExpr x = op_bracket(E(i), F(j), Scalar(1));
            if (i == j) {
                Weight al = simple_root(n, i);
                x = op_add(x, op_scale(op_add(K(al), op_scale(K(-al), Scalar(-1))), -qmq.inverse()));
            }
            rels.push_back({name2("e_f", i, j), x});
        }
    for (int i = 0; i < n; ++i) {
        if (!is_odd_root(e, i)) continue;
        rels.push_back({name1("odd_square_e", i), op_mul(E(i), E(i))});
        rels.push_back({name1("odd_square_f", i), op_mul(F(i), F(i))});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int d = (j - i + n) % n;
            if (d == 1 || d == n - 1) continue;
            rels.push_back({name2("commute_e", i, j), op_bracket(E(i), E(j), Scalar(1))});
            rels.push_back({name2("commute_f", i, j), op_bracket(F(i), F(j), Scalar(1))});
        }
    for (int i = 0; i < n; ++i) {
        int ip = (i + 1) % n, im = (i + n - 1) % n;
        int slot_i = i == 0 ? n : i;
        Scalar sgn2 = e.at(slot_i) ? -qint(2) : qint(2);
        if (!is_odd_root(e, i)) {
            for (int j : {ip, im}) {
                for (bool up : {true, false}) {
                    auto G = up ? E : F;
                    OpExpr x = op_mul(op_mul(G(i), G(i)), G(j));
                    x = op_add(x, op_scale(op_mul(op_mul(G(i), G(j)), G(i)), -sgn2));
                    x = op_add(x, op_mul(op_mul(G(j), G(i)), G(i)));
                    rels.push_back({name2(up ? "serre_e" : "serre_f", i, j), x});
                }
            }
        } else {
            for (bool up : {true, false}) {
                auto G = up ? E : F;
                auto w4 = [&](int a, int b, int c, int d) { return op_mul(op_mul(G(a), G(b)), op_mul(G(c), G(d))); };
                OpExpr x = w4(i, im, i, ip);
                x = op_add(x, op_scale(w4(i, ip, i, im), Scalar(-1)));
                x = op_add(x, w4(ip, i, im, i));
                x = op_add(x, op_scale(w4(im, i, ip, i), Scalar(-1)));
                x = op_add(x, op_scale(w4(i, im, ip, i), sgn2));
                rels.push_back({name1(up ? "odd_serre_e" : "odd_serre_f", i), x});
            }
        }
    }
    return rels;
}

std::vector<Vec> relation_inputs(const Eps& e, int d1, int d2, int d3) {
    std::vector<Vec> out;
    for (const auto& m : states_up_to(e, d1)) out.push_back(vec_single(TensorState({m})));
    auto pool = states_up_to(e, std::max(d2, d3));
    for (const auto& a : pool)
        for (const auto& b : pool)
            if (total(a) + total(b) <= d2) out.push_back(vec_single(TensorState({a, b})));
    for (const auto& a : pool)
        for (const auto& b : pool) {
            if (total(a) + total(b) > d3) continue;
            for (const auto& c : pool)
                if (total(a) + total(b) + total(c) <= d3) out.push_back(vec_single(TensorState({a, b, c})));
        }
    return out;
}

namespace {

std::string vec_str(const Vec& v, std::size_t limit = 4) {
    std::ostringstream os;
    std::size_t cnt = 0;
    for (const auto& [s, c] : v) {
        if (cnt++ == limit) {
            os << " + ...";
            break;
        }
        if (cnt > 1) os << " + ";
        os << "(" << c.str() << ")" << s.str();
    }
    return cnt ? os.str() : "0";
}

}  // namespace

std::optional<RelationFailure> check_relations(const Eps& e, const std::vector<Relation>& rels,
                                               const std::vector<Vec>& inputs, const Spectral& sp) {
    for (const auto& rel : rels)
        for (const auto& v : inputs) {
            Vec out = apply(e, rel.expr, v, sp);
            if (!vec_is_zero(out)) return RelationFailure{rel.name, vec_str(v), vec_str(out)};
        }
    return std::nullopt;
}

std::optional<RelationFailure> check_antipode(const Eps& e, int max_total) {
    const int n = e.n();
    std::vector<GenLabel> gens;
    for (int i = 0; i < n; ++i) {
        gens.push_back(GenLabel::e(i));
        gens.push_back(GenLabel::f(i));
    }
    gens.push_back(GenLabel::k(Weight::big_lambda(n)));
    gens.push_back(GenLabel::k(Weight::delta(n, 1)));
    std::vector<Word> words;
    for (const auto& g : gens) words.push_back({g});
    for (const auto& g : gens)
        for (const auto& h : gens) words.push_back({g, h});
    auto states = states_up_to(e, max_total);
    for (const auto& w : words) {
        // Δ(w) as a sum of (coeff, left, right)
        std::vector<CoproductTerm> delta{{Scalar(1), {}, {}}};
        int eps_val = 1;
        for (const auto& g : w) {
            std::vector<CoproductTerm> next;
            for (const auto& a : delta)
                for (const auto& b : coproduct(g, n)) {
                    CoproductTerm t{a.coeff * b.coeff, a.left, a.right};
                    t.left.insert(t.left.end(), b.left.begin(), b.left.end());
                    t.right.insert(t.right.end(), b.right.begin(), b.right.end());
                    next.push_back(std::move(t));
                }
            delta = std::move(next);
            eps_val *= counit(g);
        }
        for (int side = 0; side < 2; ++side) {
            OpExpr total_op;
            for (const auto& t : delta) {
                OpExpr l{{Scalar(1), t.left}}, r{{Scalar(1), t.right}};
                OpExpr prod = side == 0 ? op_mul(antipode(l, n), r) : op_mul(l, antipode(r, n));
                total_op = op_add(total_op, op_scale(prod, t.coeff));
            }
            total_op = op_add(total_op, op_identity(Scalar(-eps_val)));
            for (const auto& m : states) {
                Vec v = vec_single(TensorState({m}));
                Vec out = apply(e, total_op, v, Spectral::classical());
                if (!vec_is_zero(out)) {
                    std::string name = side == 0 ? "m(S x 1)D" : "m(1 x S)D";
                    for (const auto& g : w) name += " " + g.str();
                    return RelationFailure{name, vec_str(v), vec_str(out)};
                }
            }
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ q -> 1

namespace {

using ClVec = std::map<Occ, mpq_class>;

struct ClOp {
    int kind;  // 0 = e, 1 = f, 2 = divided Cartan
    int i;
};

ClVec cl_apply(const Eps& e, const ClOp& op, const ClVec& v) {
    ClVec out;
    for (const auto& [m, c] : v) {
        if (op.kind == 2) {
            QMono k = qhat_mono(e, weight_of(e, m), Weight::delta(e.n(), op.i));
            if (k.sign != 1) throw Error("classical limit needs standard parity");
            out[m] += c * k.exp;
        } else {
            auto res = act(e, op.kind == 0 ? GenLabel::e(op.i) : GenLabel::f(op.i), m);
            if (!res) continue;
            out[res->m] += c * res->coeff.eval(1);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

ClVec cl_word(const Eps& e, const std::vector<ClOp>& w, const ClVec& v) {
    ClVec cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = cl_apply(e, *it, cur);
    return cur;
}

}  // namespace

std::optional<RelationFailure> check_classical_limit(int n, int r, int max_total) {
    Eps e = Eps::standard(n, r);
    using Combo = std::vector<std::pair<mpq_class, std::vector<ClOp>>>;
    std::vector<std::pair<std::string, Combo>> rels;
    auto comm = [](ClOp a, ClOp b) { return Combo{{1, {a, b}}, {-1, {b, a}}}; };
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            Combo c = comm({0, i}, {1, j});
            if (i == j) {
                c.push_back({-1, {{2, i}}});
                c.push_back({1, {{2, i + 1}}});
            }
            rels.push_back({"[E" + std::to_string(i) + ",F" + std::to_string(j) + "]", c});
        }
    for (int a = 1; a <= n; ++a)
        for (int i = 1; i < n; ++i) {
            int s = (a == i) - (a == i + 1);
            Combo ce = comm({2, a}, {0, i});
            ce.push_back({-s, {{0, i}}});
            Combo cf = comm({2, a}, {1, i});
            cf.push_back({s, {{1, i}}});
            rels.push_back({"[D" + std::to_string(a) + ",E" + std::to_string(i) + "]", ce});
            rels.push_back({"[D" + std::to_string(a) + ",F" + std::to_string(i) + "]", cf});
        }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) rels.push_back({"[D,D]", comm({2, a}, {2, b})});
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            if (i == j) continue;
            for (int kind = 0; kind < 2; ++kind) {
                ClOp x{kind, i}, y{kind, j};
                std::string tag = kind == 0 ? "E" : "F";
                if (std::abs(i - j) > 1) {
                    rels.push_back({"[" + tag + std::to_string(i) + "," + tag + std::to_string(j) + "]", comm(x, y)});
                } else {
                    Combo s{{1, {x, x, y}}, {-2, {x, y, x}}, {1, {y, x, x}}};
                    rels.push_back({"serre " + tag + std::to_string(i) + tag + std::to_string(j), s});
                }
            }
        }
    for (const auto& m : states_up_to(e, max_total)) {
        ClVec v{{m, 1}};
        for (const auto& [name, combo] : rels) {
            ClVec acc;
            for (const auto& [c, w] : combo)
                for (const auto& [s, x] : cl_word(e, w, v)) acc[s] += c * x;
            for (const auto& [s, x] : acc)
                if (x != 0) {
                    std::ostringstream in;
                    for (int y : m) in << y << ",";
                    return RelationFailure{name, in.str(), "nonzero at q=1"};
                }
        }
    }
    return std::nullopt;
}

}  // namespace qosc
