#include "qosc/lattice.hpp"

#include <sstream>

namespace qosc {

Eps::Eps(std::vector<int> b, int r_) : bits(std::move(b)), r(r_) {
    if (bits.size() < 2) throw Error("parity sequence needs at least two slots");
    for (int x : bits)
        if (x != 0 && x != 1) throw Error("parity entries must be 0 or 1");
    if (r < 1 || r >= n()) throw Error("split point r must satisfy 1 <= r <= n-1");
}

Eps Eps::parse(const std::string& s, int r) {
    std::vector<int> b;
    for (char c : s) {
        if (c == '0' || c == '1') b.push_back(c - '0');
        else if (c != ',' && c != ' ') throw Error("bad parity string: " + s);
    }
    return Eps(std::move(b), r);
}

int Eps::at(int i) const {
    int m = ((i - 1) % n() + n()) % n();
    return bits[static_cast<std::size_t>(m)];
}

std::string Eps::str() const {
    std::string s;
    for (int x : bits) s += static_cast<char>('0' + x);
    return s;
}

Weight Weight::delta(int n, int i) {
    Weight w = zero(n);
    w.d[static_cast<std::size_t>(i - 1)] = 1;
    return w;
}

Weight Weight::operator+(const Weight& o) const {
    Weight r = *this;
    r.level += o.level;
    r.k += o.k;
    for (std::size_t i = 0; i < d.size(); ++i) r.d[i] += o.d[i];
    return r;
}

Weight Weight::operator-() const {
    Weight r = *this;
    r.level = -r.level;
    r.k = -r.k;
    for (auto& x : r.d) x = -x;
    return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator*(int s) const {
    Weight r = *this;
    r.level *= s;
    r.k *= s;
    for (auto& x : r.d) x *= s;
    return r;
}

bool Weight::operator<(const Weight& o) const {
    if (level != o.level) return level < o.level;
    if (d != o.d) return d < o.d;
    return k < o.k;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << level << "L";
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) os << (d[i] > 0 ? "+" : "") << d[i] << "d" << i + 1;
    if (k) os << (k > 0 ? "+" : "") << k << "D";
    return os.str();
}

Weight simple_root(int n, int i, bool affine) {
    Weight w = Weight::zero(n);
    if (i == 0) {
        w.d[static_cast<std::size_t>(n - 1)] = 1;
        w.d[0] -= 1;
        if (affine) w.k = 1;
    } else {
        w.d[static_cast<std::size_t>(i - 1)] = 1;
        w.d[static_cast<std::size_t>(i)] -= 1;
    }
    return w;
}

bool is_odd_root(const Eps& e, int i) {
    int a = i == 0 ? e.n() : i;
    return e.at(a) != e.at(a + 1);
}

int bilinear(const Eps& e, const Weight& mu, const Weight& nu) {
    int s = 0;
    for (int i = 1; i <= e.n(); ++i) {
        int t = mu[i] * nu[i];
        s += e.at(i) ? -t : t;
        if (i > e.r) s += mu.level * nu[i] + nu.level * mu[i];
    }
    return s;
}

QMono q_slot(const Eps& e, int i) { return e.at(i) ? QMono{-1, -1} : QMono{1, 1}; }

QMono qform_mono(const Eps& e, const Weight& mu, const Weight& nu) {
    QMono r;
    for (int i = 1; i <= e.n(); ++i) {
        int t = mu[i] * nu[i];
        if (!t) continue;
        if (e.at(i)) {
            r.exp -= t;
            if (t & 1) r.sign = -r.sign;
        } else {
            r.exp += t;
        }
    }
    return r;
}

QMono qhat_mono(const Eps& e, const Weight& mu, const Weight& nu) {
    QMono r = qform_mono(e, mu, nu);
    for (int j = e.r + 1; j <= e.n(); ++j) r.exp += nu.level * mu[j] + mu.level * nu[j];
    return r;
}

int pairing(const Weight& mu, const Coweight& h) {
    int s = mu.level * h.c + mu.k * h.d;
    for (int i = 0; i < mu.n(); ++i) s += mu.d[static_cast<std::size_t>(i)] * h.dv[static_cast<std::size_t>(i)];
    return s;
}

Coweight simple_coroot(int n, int r, int i) {
    Coweight h{0, std::vector<int>(static_cast<std::size_t>(n), 0), 0};
    int a = i == 0 ? n : i;
    int b = a % n + 1;
    h.dv[static_cast<std::size_t>(a - 1)] += 1;
    h.dv[static_cast<std::size_t>(b - 1)] -= 1;
    if (i == r) h.c += 1;
    if (i == 0) h.c -= 1;
    return h;
}

Coweight to_coweight(const Eps& e, const Weight& mu) {
    Coweight h{0, std::vector<int>(static_cast<std::size_t>(e.n()), 0), 0};
    for (int j = e.r + 1; j <= e.n(); ++j) h.dv[static_cast<std::size_t>(j - 1)] += mu.level;
    for (int i = 1; i <= e.n(); ++i) {
        h.dv[static_cast<std::size_t>(i - 1)] += mu[i];
        if (i > e.r) h.c -= mu[i];
    }
    return h;
}

Weight to_classical_weight(const Weight& mu) { return Weight(-mu.level, mu.d, mu.k); }

Weight cl(const Weight& mu) { return Weight(mu.level, mu.d, 0); }

Weight iota(const Weight& mu) { return Weight(mu.level, mu.d, 0); }

bool occ_valid(const Eps& e, const Occ& m) {
    for (int i = 0; i < e.n(); ++i) {
        int v = m[static_cast<std::size_t>(i)];
        if (v < 0) return false;
        if (e.bits[static_cast<std::size_t>(i)] && v > 1) return false;
    }
    return true;
}

int charge(const Eps& e, const Occ& m) {
    int s = 0;
    for (int i = 0; i < e.n(); ++i) s += (i + 1 > e.r) ? m[static_cast<std::size_t>(i)] : -m[static_cast<std::size_t>(i)];
    return s;
}

int total(const Occ& m) {
    int s = 0;
    for (int x : m) s += x;
    return s;
}

Weight occ_weight(const Eps& e, int level, const Occ& m) {
    Weight w = Weight::zero(e.n());
    w.level = level;
    for (int i = 0; i < e.n(); ++i)
        w.d[static_cast<std::size_t>(i)] = (i + 1 > e.r) ? m[static_cast<std::size_t>(i)] : -m[static_cast<std::size_t>(i)];
    return w;
}

std::optional<Occ> weight_occ(const Eps& e, const Weight& w) {
    Occ m(static_cast<std::size_t>(e.n()));
    for (int i = 0; i < e.n(); ++i) {
        int v = (i + 1 > e.r) ? w.d[static_cast<std::size_t>(i)] : -w.d[static_cast<std::size_t>(i)];
        if (v < 0) return std::nullopt;
        m[static_cast<std::size_t>(i)] = v;
    }
    return m;
}

namespace {

// Fills partition p using slots in the given order; adds counts to m.
bool fill_partition(const Eps& e, std::vector<int> p, const std::vector<int>& slots, Occ& m) {
    std::vector<int> filled(p.size(), 0);
    auto remaining = [&]() {
        for (std::size_t a = 0; a < p.size(); ++a)
            if (filled[a] < p[a]) return true;
        return false;
    };
    for (int slot : slots) {
        if (!remaining()) break;
        int count = 0;
        if (e.at(slot) == 0) {
            for (std::size_t a = 0; a < p.size(); ++a)
                if (filled[a] < p[a]) {
                    count = p[a] - filled[a];
                    filled[a] = p[a];
                    break;
                }
        } else {
            int col = 1 << 30;
            for (std::size_t a = 0; a < p.size(); ++a)
                if (filled[a] < p[a]) col = std::min(col, filled[a] + 1);
            for (std::size_t a = 0; a < p.size(); ++a)
                if (filled[a] == col - 1 && p[a] >= col) {
                    filled[a] = col;
                    ++count;
                }
        }
        m[static_cast<std::size_t>(slot - 1)] += count;
    }
    return !remaining();
}

}  // namespace

std::optional<Occ> filling_occupation(const Eps& e, const std::vector<int>& lambda) {
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) throw Error("generalized partition must be weakly decreasing");
    std::vector<int> plus, minus;
    for (int x : lambda)
        if (x > 0) plus.push_back(x);
    for (auto it = lambda.rbegin(); it != lambda.rend(); ++it)
        if (*it < 0) minus.push_back(-*it);
    std::vector<int> up, down;
    for (int j = e.r + 1; j <= e.n(); ++j) up.push_back(j);
    for (int i = e.r; i >= 1; --i) down.push_back(i);
    Occ m(static_cast<std::size_t>(e.n()), 0);
    if (!fill_partition(e, plus, up, m)) return std::nullopt;
    if (!fill_partition(e, minus, down, m)) return std::nullopt;
    return m;
}

std::optional<std::vector<int>> root_coords(const Weight& top, const Weight& mu) {
    if (top.level != mu.level) return std::nullopt;
    int n = top.n();
    std::vector<int> c(static_cast<std::size_t>(n - 1));
    int acc = 0;
    for (int a = 1; a <= n; ++a) {
        acc += top[a] - mu[a];
        if (a < n) c[static_cast<std::size_t>(a - 1)] = acc;
    }
    if (acc != 0) return std::nullopt;
    return c;
}

int depth_below(const Weight& top, const Weight& mu) {
    auto c = root_coords(top, mu);
    if (!c) return -1;
    int h = 0;
    for (int x : *c) {
        if (x < 0) return -1;
        h += x;
    }
    return h;
}

}  // namespace qosc
