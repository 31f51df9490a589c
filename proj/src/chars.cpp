#include "qosc/chars.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace qosc {

namespace {

int mono_degree(const std::vector<int>& e, std::size_t from = 0) {
    int s = 0;
    for (std::size_t i = from; i < e.size(); ++i) s += e[i];
    return s;
}

int psize(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition padded(Partition p, std::size_t len) {
    p.resize(std::max(len, p.size()), 0);
    return p;
}

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) return false;
        if (i && p[i] > p[i - 1]) return false;
    }
    return true;
}

// Complete homogeneous symmetric polynomial h_k.
MPoly complete_h(int k, int vars) {
    MPoly out;
    if (k < 0) return out;
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == vars - 1) {
            e[static_cast<std::size_t>(i)] = left;
            out[e] += 1;
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[static_cast<std::size_t>(i)] = a;
            rec(i + 1, left - a);
        }
    };
    if (vars == 0) {
        if (k == 0) out[e] = 1;
        return out;
    }
    rec(0, k);
    return out;
}

}  // namespace

MPoly mpoly_mul(const MPoly& a, const MPoly& b, int max_degree) {
    MPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (mono_degree(e) > max_degree) continue;
            mpz_class& slot = out[e];
            slot += ca * cb;
            if (slot == 0) out.erase(e);
        }
    return out;
}

void mpoly_add_to(MPoly& acc, const MPoly& b, const mpz_class& c) {
    for (const auto& [e, x] : b) {
        mpz_class& slot = acc[e];
        slot += c * x;
        if (slot == 0) acc.erase(e);
    }
}

// ---------------------------------------------------------------- CharPoly

CharPoly CharPoly::from_blocks(int nx, int ny, int degree, int tpow, const MPoly& x, const MPoly& y) {
    CharPoly out(nx, ny, degree);
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) {
            Mono m;
            m.reserve(static_cast<std::size_t>(1 + nx + ny));
            m.push_back(tpow);
            m.insert(m.end(), ex.begin(), ex.end());
            m.insert(m.end(), ey.begin(), ey.end());
            out.add_term(m, cx * cy);
        }
    return out;
}

void CharPoly::add_term(const Mono& m, const mpz_class& c) {
    if (static_cast<int>(m.size()) != 1 + nx_ + ny_) throw Error("CharPoly: monomial of wrong shape");
    if (mono_degree(m, 1) > degree_ || c == 0) return;
    mpz_class& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
}

mpz_class CharPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void CharPoly::check_shape(const CharPoly& o) const {
    if (nx_ != o.nx_ || ny_ != o.ny_) throw Error("CharPoly: variable blocks differ");
}

CharPoly CharPoly::operator+(const CharPoly& o) const {
    check_shape(o);
    CharPoly r(nx_, ny_, std::min(degree_, o.degree_));
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

CharPoly CharPoly::operator-(const CharPoly& o) const {
    check_shape(o);
    CharPoly r(nx_, ny_, std::min(degree_, o.degree_));
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

CharPoly CharPoly::operator*(const CharPoly& o) const {
    check_shape(o);
    CharPoly r(nx_, ny_, std::min(degree_, o.degree_));
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            Mono m(a.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = a[i] + b[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

CharPoly CharPoly::shifted_t(int k) const {
    CharPoly r(nx_, ny_, degree_);
    for (const auto& [m, c] : terms_) {
        Mono s = m;
        s[0] += k;
        r.add_term(s, c);
    }
    return r;
}

bool CharPoly::operator==(const CharPoly& o) const {
    if (nx_ != o.nx_ || ny_ != o.ny_) return false;
    int d = std::min(degree_, o.degree_);
    auto trimmed = [d](const std::map<Mono, mpz_class>& t) {
        std::map<Mono, mpz_class> out;
        for (const auto& [m, c] : t)
            if (mono_degree(m, 1) <= d) out.emplace(m, c);
        return out;
    };
    return trimmed(terms_) == trimmed(o.terms_);
}

std::string CharPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class a = abs(c);
        std::vector<std::string> parts;
        auto var = [&parts](const std::string& name, int e) {
            if (e == 0) return;
            parts.push_back(e == 1 ? name : name + "^" + std::to_string(e));
        };
        var("t", m[0]);
        for (int i = 0; i < nx_; ++i) var("x" + std::to_string(i + 1), m[static_cast<std::size_t>(1 + i)]);
        for (int j = 0; j < ny_; ++j) var("y" + std::to_string(j + 1), m[static_cast<std::size_t>(1 + nx_ + j)]);
        if (a != 1 || parts.empty()) parts.insert(parts.begin(), a.get_str());
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " " : "") << parts[i];
    }
    return os.str();
}

// ---------------------------------------------------------- combinatorics

std::vector<Partition> partitions_of(int k, int max_len) {
    std::vector<Partition> out;
    if (k < 0) return out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_len) return;
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(k, k);
    return out;
}

MPoly skew_schur(const Partition& lambda_in, const Partition& eta_in, int vars, int D) {
    std::size_t L = std::max(lambda_in.size(), eta_in.size());
    Partition lambda = padded(lambda_in, L), eta = padded(eta_in, L);
    if (!is_partition(lambda) || !is_partition(eta)) throw Error("skew_schur: shape is not a pair of partitions");
    for (std::size_t i = 0; i < L; ++i)
        if (eta[i] > lambda[i]) return {};
    if (psize(lambda) - psize(eta) > D) return {};
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < L; ++i)
        for (int j = eta[i]; j < lambda[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
    std::map<std::pair<int, int>, int> val;
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    MPoly out;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            out[e] += 1;
            return;
        }
        auto [i, j] = cells[c];
        int lo = 0;
        if (auto it = val.find({i, j - 1}); it != val.end()) lo = std::max(lo, it->second);
        if (auto it = val.find({i - 1, j}); it != val.end()) lo = std::max(lo, it->second + 1);
        for (int v = lo; v < vars; ++v) {
            val[{i, j}] = v;
            ++e[static_cast<std::size_t>(v)];
            rec(c + 1);
            --e[static_cast<std::size_t>(v)];
        }
        val.erase({i, j});
    };
    rec(0);
    return out;
}

MPoly schur(const Partition& mu, int vars, int D) { return skew_schur(mu, {}, vars, D); }

MPoly skew_schur_jacobi_trudi(const Partition& lambda_in, const Partition& eta_in, int vars, int D) {
    std::size_t L = std::max(lambda_in.size(), eta_in.size());
    Partition lambda = padded(lambda_in, L), eta = padded(eta_in, L);
    while (L > 0 && lambda[L - 1] == 0 && eta[L - 1] == 0) --L;
    if (psize(lambda) - psize(eta) > D) return {};
    std::map<int, MPoly> h;
    auto hk = [&](int k) -> const MPoly& {
        auto it = h.find(k);
        if (it == h.end()) it = h.emplace(k, complete_h(k, vars)).first;
        return it->second;
    };
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    MPoly out;
    if (L == 0) {
        out[std::vector<int>(static_cast<std::size_t>(vars), 0)] = 1;
        return out;
    }
    do {
        int sign = 1;
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = a + 1; b < L; ++b)
                if (perm[a] > perm[b]) sign = -sign;
        MPoly term;
        term[std::vector<int>(static_cast<std::size_t>(vars), 0)] = 1;
        for (std::size_t i = 0; i < L && !term.empty(); ++i) {
            std::size_t j = static_cast<std::size_t>(perm[i]);
            int k = lambda[i] - eta[j] - static_cast<int>(i) + static_cast<int>(j);
            term = mpoly_mul(term, hk(k), D);
        }
        mpoly_add_to(out, term, sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

int lr_star(const Partition& lambda, const Partition& eta, const Partition& xi) {
    const std::size_t L = lambda.size();
    if (eta.size() != L || xi.size() != L) throw Error("lr_star: labels must have the same length");
    const int ell = static_cast<int>(L);
    // Laurent Schur polynomial of η: shift by its last part
    int shift = L ? eta.back() : 0;
    Partition base(eta);
    for (auto& p : base) p -= shift;
    MPoly s = schur(base, ell, psize(base));
    Partition star(L), target(L);
    for (std::size_t i = 0; i < L; ++i) {
        star[i] = -xi[L - 1 - i] + (ell - 1 - static_cast<int>(i));
        target[i] = lambda[i] + (ell - 1 - static_cast<int>(i)) - shift;
    }
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    long total = 0;
    do {
        int sign = 1;
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = a + 1; b < L; ++b)
                if (perm[a] > perm[b]) sign = -sign;
        std::vector<int> e(L);
        bool ok = true;
        for (std::size_t i = 0; i < L; ++i) {
            e[i] = target[i] - star[static_cast<std::size_t>(perm[i])];
            if (e[i] < 0) ok = false;
        }
        if (!ok) continue;
        auto it = s.find(e);
        if (it != s.end()) total += sign * it->second.get_si();
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (total < 0) throw Error("lr_star: negative multiplicity");
    return static_cast<int>(total);
}

bool in_oscillator_range(const Partition& lambda, int r, int n) {
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) return false;
    int pos = 0, neg = 0;
    for (int p : lambda) {
        if (p > 0) ++pos;
        if (p < 0) ++neg;
    }
    return pos <= n - r && neg <= r;
}

CharPoly osc_character_lr(const Partition& lambda, int r, int n, int D) {
    const int nx = n - r, ny = r, ell = static_cast<int>(lambda.size());
    const int size = psize(lambda);
    CharPoly out(nx, ny, D);
    for (int a = std::max(0, size); a <= D; ++a) {
        int b = a - size;
        if (a + b > D) break;
        for (const auto& mu : partitions_of(a, std::min(nx, ell)))
            for (const auto& nu : partitions_of(b, std::min(ny, ell))) {
                int c = lr_star(lambda, padded(mu, lambda.size()), padded(nu, lambda.size()));
                if (!c) continue;
                CharPoly term = CharPoly::from_blocks(nx, ny, D, ell, schur(mu, nx, D), schur(nu, ny, D));
                for (const auto& [m, x] : term.terms()) out.add_term(m, x * c);
            }
    }
    return out;
}

CharPoly osc_character_skew(const Partition& lambda, int r, int n, int D, int d) {
    const int nx = n - r, ny = r, ell = static_cast<int>(lambda.size());
    Partition outer(lambda), box(lambda.size(), d);
    for (auto& p : outer) p += d;
    if (!is_partition(outer)) throw Error("osc_character_skew: column offset too small");
    CharPoly out(nx, ny, D);
    const int size = psize(lambda);
    for (int k = std::max(0, -size); size + 2 * k <= D; ++k) {
        for (const auto& beta : partitions_of(k, ell)) {
            if (!beta.empty() && beta[0] > d) continue;
            Partition eta(lambda.size());
            Partition bp = padded(beta, lambda.size());
            bool inside = true;
            for (std::size_t i = 0; i < eta.size(); ++i) {
                eta[i] = d - bp[eta.size() - 1 - i];
                if (eta[i] > outer[i]) inside = false;
            }
            if (!inside) continue;
            MPoly x = skew_schur(outer, eta, nx, D), y = skew_schur(box, eta, ny, D);
            CharPoly term = CharPoly::from_blocks(nx, ny, D, ell, x, y);
            for (const auto& [m, c] : term.terms()) out.add_term(m, c);
        }
    }
    return out;
}

int skew_offset(const Partition& lambda, int D) {
    int s = 0;
    for (int p : lambda) s += std::abs(p);
    return D + s + 1;
}

CharPoly osc_character(const Partition& lambda, int r, int n, int D) {
    if (!in_oscillator_range(lambda, r, n)) throw Error("label is outside the oscillator range");
    CharPoly a = osc_character_lr(lambda, r, n, D);
    int d = skew_offset(lambda, D);
    CharPoly b = osc_character_skew(lambda, r, n, D, d);
    if (b != osc_character_skew(lambda, r, n, D, d + 1)) throw Error("skew character sum has not stabilized");
    if (a != b) throw Error("character formulas disagree");
    return a;
}

CharPoly cauchy_kernel(int nx, int ny, int D) {
    CharPoly out(nx, ny, D);
    out.add_term(CharPoly::Mono(static_cast<std::size_t>(1 + nx + ny), 0), 1);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            CharPoly geo(nx, ny, D);
            for (int k = 0; 2 * k <= D; ++k) {
                CharPoly::Mono m(static_cast<std::size_t>(1 + nx + ny), 0);
                m[static_cast<std::size_t>(1 + i)] = k;
                m[static_cast<std::size_t>(1 + nx + j)] = k;
                geo.add_term(m, 1);
            }
            out = out * geo;
        }
    return out;
}

CharPoly::Mono occupation_mono(int level, const Occ& M, int r) {
    CharPoly::Mono m;
    m.reserve(M.size() + 1);
    m.push_back(level);
    m.insert(m.end(), M.begin() + r, M.end());
    m.insert(m.end(), M.begin(), M.begin() + r);
    return m;
}

CharPoly module_census(const Eps& e, int l, int D) {
    CharPoly out(e.n() - e.r, e.r, D);
    for (const auto& m : states_with_charge(e, l, D)) out.add_term(occupation_mono(1, m, e.r), 1);
    return out;
}

bool hook_check(const Partition& lambda, int M, int N) {
    if (static_cast<int>(lambda.size()) <= M) return true;
    return lambda[static_cast<std::size_t>(M)] <= N;
}

std::optional<Weight> eps_highest_weight(const Partition& lambda, const Eps& e) {
    auto occ = filling_occupation(e, lambda);
    if (!occ) return std::nullopt;
    return occ_weight(e, static_cast<int>(lambda.size()), *occ);
}

}  // namespace qosc
