#include "qosc/scalars.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qosc {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, int deg) {
    std::vector<mpz_class> v(static_cast<std::size_t>(deg) + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPoly::low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::scaled(const mpz_class& s) const {
    if (s == 0) return {};
    IntPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

IntPoly IntPoly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k > 0) {
        std::vector<mpz_class> r(static_cast<std::size_t>(k));
        r.insert(r.end(), c_.begin(), c_.end());
        return IntPoly(std::move(r));
    }
    if (low_order() < -k) throw Error("IntPoly::shifted: not divisible by q power");
    return IntPoly(std::vector<mpz_class>(c_.begin() + (-k), c_.end()));
}

IntPoly IntPoly::divexact_int(const mpz_class& s) const {
    IntPoly r = *this;
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    return r;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lead() < 0) g = -g;
    if (g == 1) return *this;
    return divexact_int(g);
}

bool IntPoly::operator<(const IntPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::size_t IntPoly::hash() const {
    std::size_t h = c_.size();
    for (const auto& x : c_) h = h * 1000003u ^ static_cast<std::size_t>(mpz_get_si(x.get_mpz_t()));
    return h;
}

bool try_divexact(const IntPoly& a, const IntPoly& b, IntPoly& quo) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (a.is_zero()) {
        quo = {};
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const mpz_class& lb = b.lead();
    int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        mpz_class& top = rem[i];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) mpz_submul(rem[i - db + j].get_mpz_t(), f.get_mpz_t(), b[j].get_mpz_t());
    }
    for (int i = 0; i < db; ++i)
        if (rem[i] != 0) return false;
    quo = IntPoly(std::move(q));
    return true;
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
    IntPoly q;
    if (!try_divexact(a, b, q)) throw Error("divexact: inexact polynomial division");
    return q;
}

namespace {

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    const mpz_class& lb = b.lead();
    int da = a.degree();
    while (da >= db) {
        mpz_class top = r[da];
        for (auto& x : r) x *= lb;
        for (int j = 0; j <= db; ++j) mpz_submul(r[da - db + j].get_mpz_t(), top.get_mpz_t(), b[j].get_mpz_t());
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        da = static_cast<int>(r.size()) - 1;
    }
    return IntPoly(std::move(r));
}

mpz_class max_norm(const IntPoly& p) {
    mpz_class m = 0;
    for (const auto& x : p.coeffs())
        if (abs(x) > m) m = abs(x);
    return m;
}

mpz_class eval_int(const IntPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Heuristic gcd of primitive polynomials; false when it gives up.
bool heuristic_gcd(const IntPoly& a, const IntPoly& b, IntPoly& g) {
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        mpz_class ga = eval_int(a, xi), gb = eval_int(b, xi), gam;
        mpz_gcd(gam.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
        std::vector<mpz_class> coeffs;
        mpz_class half = xi / 2;
        while (gam != 0) {
            mpz_class c;
            mpz_fdiv_r(c.get_mpz_t(), gam.get_mpz_t(), xi.get_mpz_t());
            if (c > half) c -= xi;
            coeffs.push_back(c);
            gam = (gam - c);
            mpz_divexact(gam.get_mpz_t(), gam.get_mpz_t(), xi.get_mpz_t());
        }
        IntPoly cand = IntPoly(std::move(coeffs)).primitive();
        IntPoly tmp;
        if (!cand.is_zero() && try_divexact(a, cand, tmp) && try_divexact(b, cand, tmp)) {
            g = cand;
            return true;
        }
        xi = xi * 73794 / 27011;
    }
    return false;
}

IntPoly prs_gcd(IntPoly a, IntPoly b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.primitive();
    }
    return a.primitive();
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive().scaled(b.is_zero() ? mpz_class(1) : b.content());
    if (b.is_zero()) return a.primitive().scaled(a.content());
    mpz_class c;
    mpz_class ca = a.content(), cb = b.content();
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    IntPoly pa = a.primitive(), pb = b.primitive();
    if (pa.is_constant() || pb.is_constant()) return IntPoly::constant(c);
    if (pa == pb) return pa.scaled(c);
    int lo = std::min(pa.low_order(), pb.low_order());
    if (lo > 0) {
        pa = pa.shifted(-lo);
        pb = pb.shifted(-lo);
    }
    IntPoly g;
    if (!heuristic_gcd(pa, pb, g)) g = prs_gcd(pa, pb);
    return g.shifted(lo).scaled(c);
}

// ----------------------------------------------------------------- Scalar

Scalar::Scalar(long v) : num_(IntPoly::constant(v)), den_(IntPoly::constant(1)) {}
Scalar::Scalar(const mpz_class& v) : num_(IntPoly::constant(v)), den_(IntPoly::constant(1)) {}
Scalar::Scalar(const mpq_class& v)
    : num_(IntPoly::constant(v.get_num())), den_(IntPoly::constant(v.get_den())) {
    normalize();
}

Scalar Scalar::q_pow(int k) {
    Scalar s(1);
    s.shift_ = k;
    return s;
}

Scalar Scalar::from_laurent(const IntPoly& p, int shift) {
    Scalar s;
    s.num_ = p;
    s.shift_ = shift;
    s.normalize();
    return s;
}

Scalar Scalar::from_parts(const IntPoly& num, const IntPoly& den, int shift) {
    if (den.is_zero()) throw Error("Scalar: zero denominator");
    Scalar s;
    s.num_ = num;
    s.den_ = den;
    s.shift_ = shift;
    if (!den.is_constant()) {
        IntPoly g = gcd(num, den).primitive();
        if (!g.is_constant()) {
            s.num_ = divexact(num, g);
            s.den_ = divexact(den, g);
        }
    }
    s.normalize();
    return s;
}

// Strips q powers, joint content and sign; assumes num/den coprime up to units.
void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = IntPoly::constant(1);
        shift_ = 0;
        return;
    }
    int lo = num_.low_order();
    if (lo) {
        num_ = num_.shifted(-lo);
        shift_ += lo;
    }
    int lod = den_.low_order();
    if (lod) {
        den_ = den_.shifted(-lod);
        shift_ -= lod;
    }
    mpz_class cn = num_.content(), cd = den_.content(), g;
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.lead() < 0) g = -g;
    if (g != 1) {
        num_ = num_.divexact_int(g);
        den_ = den_.divexact_int(g);
    }
}

bool Scalar::is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }

bool Scalar::is_rational() const { return is_zero() || (shift_ == 0 && num_.is_constant() && den_.is_constant()); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return {};
    Scalar r;
    r.shift_ = shift_ + o.shift_;
    if (den_.is_constant() && o.den_.is_constant()) {
        r.num_ = num_ * o.num_;
        r.den_ = den_ * o.den_;
    } else {
        IntPoly n1 = num_, n2 = o.num_, d1 = den_, d2 = o.den_;
        if (!d2.is_constant() && !n1.is_constant()) {
            IntPoly g = gcd(n1, d2).primitive();
            if (!g.is_constant()) {
                n1 = divexact(n1, g);
                d2 = divexact(d2, g);
            }
        }
        if (!d1.is_constant() && !n2.is_constant()) {
            IntPoly g = gcd(n2, d1).primitive();
            if (!g.is_constant()) {
                n2 = divexact(n2, g);
                d1 = divexact(d1, g);
            }
        }
        r.num_ = n1 * n2;
        r.den_ = d1 * d2;
    }
    r.normalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("Scalar: division by zero");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.shift_ = -shift_;
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int e = std::min(shift_, o.shift_);
    IntPoly n1 = num_.shifted(shift_ - e), n2 = o.num_.shifted(o.shift_ - e);
    Scalar r;
    r.shift_ = e;
    if (den_ == o.den_) {
        r.num_ = n1 + n2;
        r.den_ = den_;
        if (!r.den_.is_constant() && !r.num_.is_zero()) {
            IntPoly g = gcd(r.num_, r.den_).primitive();
            if (!g.is_constant()) {
                r.num_ = divexact(r.num_, g);
                r.den_ = divexact(r.den_, g);
            }
        }
    } else {
        IntPoly g = (den_.is_constant() || o.den_.is_constant()) ? IntPoly::constant(1) : gcd(den_, o.den_).primitive();
        IntPoly d1g = g.is_constant() ? den_ : divexact(den_, g);
        IntPoly d2g = g.is_constant() ? o.den_ : divexact(o.den_, g);
        r.num_ = n1 * d2g + n2 * d1g;
        r.den_ = den_ * d2g;
        if (!g.is_constant() && !r.num_.is_zero()) {
            IntPoly g2 = gcd(r.num_, g).primitive();
            if (!g2.is_constant()) {
                r.num_ = divexact(r.num_, g2);
                r.den_ = divexact(r.den_, g2);
            }
        }
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar result(1), base = *this;
    while (k) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

bool Scalar::operator==(const Scalar& o) const {
    return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

bool Scalar::operator<(const Scalar& o) const {
    if (shift_ != o.shift_) return shift_ < o.shift_;
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
}

mpq_class Scalar::eval(const mpq_class& x) const {
    if (is_zero()) return 0;
    mpq_class d = den_.eval(x);
    if (d == 0) throw Error("evaluation at pole");
    if (x == 0) {
        if (shift_ < 0) throw Error("evaluation at pole");
        if (shift_ > 0) return 0;
    }
    mpq_class v = num_.eval(x) / d;
    mpq_class p = 1;
    mpq_class base = shift_ >= 0 ? x : mpq_class(1) / x;
    for (int i = 0; i < std::abs(shift_); ++i) p *= base;
    return v * p;
}

std::size_t Scalar::hash() const {
    return num_.hash() * 31 + den_.hash() * 7 + static_cast<std::size_t>(shift_);
}

namespace {

void render_laurent(std::ostringstream& os, const IntPoly& p, int shift, const char* var) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        mpz_class c = p[i];
        if (c == 0) continue;
        int e = i + shift;
        bool neg = c < 0;
        mpz_class a = abs(c);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
}

}  // namespace

std::string Scalar::str() const {
    std::ostringstream os;
    if (den_.is_one()) {
        render_laurent(os, num_, shift_, "q");
        return os.str();
    }
    os << "(";
    render_laurent(os, num_, shift_, "q");
    os << ")/(";
    render_laurent(os, den_, 0, "q");
    os << ")";
    return os.str();
}

Scalar qint(int m) {
    if (m == 0) return {};
    int a = std::abs(m);
    // q^{a-1} + q^{a-3} + ... + q^{1-a}
    std::vector<mpz_class> c(static_cast<std::size_t>(2 * a - 1));
    for (int i = 0; i < a; ++i) c[2 * i] = 1;
    Scalar s = Scalar::from_laurent(IntPoly(std::move(c)), 1 - a);
    return m < 0 ? -s : s;
}

Scalar qfact(int m) {
    if (m < 0) throw Error("qfact: negative argument");
    Scalar r(1);
    for (int i = 2; i <= m; ++i) r *= qint(i);
    return r;
}

mpq_class substitute_q(const Scalar& s, const mpq_class& x) { return s.eval(x); }

Scalar substitute_q_power(const Scalar& s, int k) {
    if (k == 0) throw Error("substitute_q_power: zero power");
    auto spread = [k](const IntPoly& p, int& shift) {
        std::vector<mpz_class> c(static_cast<std::size_t>(std::abs(k)) * p.coeffs().size());
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i * std::abs(k)] = p[i];
        IntPoly r(std::move(c));
        if (k < 0) {
            // reverse: q^{k i} = q^{-|k| i}
            std::vector<mpz_class> rc(r.coeffs().rbegin(), r.coeffs().rend());
            shift = -r.degree();
            return IntPoly(std::move(rc));
        }
        shift = 0;
        return r;
    };
    int sn = 0, sd = 0;
    IntPoly n = spread(s.num(), sn), d = spread(s.den(), sd);
    return Scalar::from_parts(n, d, s.shift() * k + sn - sd);
}

// ---------------------------------------------------------------- ZScalar

namespace zpoly {

using Poly = ZScalar::Poly;

static void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, const Scalar& s) {
    if (s.is_zero()) return {};
    Poly r = a;
    for (auto& x : r) x *= s;
    return r;
}

void divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
    if (b.empty()) throw Error("zpoly::divmod: division by zero");
    rem = a;
    quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar());
    Scalar inv = b.back().inverse();
    while (!rem.empty() && rem.size() >= b.size()) {
        std::size_t k = rem.size() - b.size();
        Scalar f = rem.back() * inv;
        quo[k] = f;
        for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= f * b[j];
        rem.pop_back();
        trim(rem);
    }
    trim(quo);
}

Poly monic_gcd(Poly a, Poly b) {
    while (!b.empty()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return scale(a, a.back().inverse());
}

Scalar eval(const Poly& a, const Scalar& x) {
    Scalar acc;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

}  // namespace zpoly

ZScalar::ZScalar(const Scalar& s) : den_{Scalar(1)} {
    if (!s.is_zero()) num_.push_back(s);
}

ZScalar ZScalar::z() {
    ZScalar r;
    r.num_ = {Scalar(), Scalar(1)};
    return r;
}

ZScalar ZScalar::from_poly(Poly p) {
    ZScalar r;
    r.num_ = std::move(p);
    zpoly::trim(r.num_);
    return r;
}

ZScalar ZScalar::from_parts(Poly num, Poly den) {
    zpoly::trim(den);
    if (den.empty()) throw Error("ZScalar: zero denominator");
    ZScalar r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize();
    return r;
}

void ZScalar::normalize() {
    zpoly::trim(num_);
    if (num_.empty()) {
        den_ = {Scalar(1)};
        return;
    }
    if (den_.size() > 1 && num_.size() > 1) {
        Poly g = zpoly::monic_gcd(num_, den_);
        if (g.size() > 1) {
            Poly q, r;
            zpoly::divmod(num_, g, q, r);
            num_ = q;
            zpoly::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    if (!den_.back().is_one()) {
        Scalar inv = den_.back().inverse();
        num_ = zpoly::scale(num_, inv);
        den_ = zpoly::scale(den_, inv);
    }
}

Scalar ZScalar::constant_value() const {
    if (!is_constant()) throw Error("ZScalar: value depends on z");
    return num_.empty() ? Scalar() : num_[0];
}

ZScalar ZScalar::operator-() const {
    ZScalar r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
}

ZScalar ZScalar::operator+(const ZScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    ZScalar r;
    if (den_ == o.den_) {
        r.num_ = zpoly::add(num_, o.num_);
        r.den_ = den_;
    } else {
        r.num_ = zpoly::add(zpoly::mul(num_, o.den_), zpoly::mul(o.num_, den_));
        r.den_ = zpoly::mul(den_, o.den_);
    }
    r.normalize();
    return r;
}

ZScalar ZScalar::operator-(const ZScalar& o) const { return *this + (-o); }

ZScalar ZScalar::operator*(const ZScalar& o) const {
    if (is_zero() || o.is_zero()) return {};
    ZScalar r;
    r.num_ = zpoly::mul(num_, o.num_);
    r.den_ = zpoly::mul(den_, o.den_);
    if (den_.size() == 1 && o.den_.size() == 1) {
        // both polynomial: only the leading normalization is needed
        r.den_ = {Scalar(1)};
        r.num_ = zpoly::scale(r.num_, (den_[0] * o.den_[0]).inverse());
        return r;
    }
    r.normalize();
    return r;
}

ZScalar ZScalar::inverse() const {
    if (is_zero()) throw Error("ZScalar: division by zero");
    ZScalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
}

ZScalar ZScalar::operator/(const ZScalar& o) const { return *this * o.inverse(); }

Scalar ZScalar::at(const Scalar& value) const {
    Scalar d = zpoly::eval(den_, value);
    if (d.is_zero()) throw Error("spectral-parameter collision");
    return zpoly::eval(num_, value) / d;
}

ZScalar ZScalar::at_inverse_z() const {
    if (is_zero()) return *this;
    Poly n(num_.rbegin(), num_.rend()), d(den_.rbegin(), den_.rend());
    int k = static_cast<int>(den_.size()) - static_cast<int>(num_.size());
    if (k > 0) n.insert(n.begin(), static_cast<std::size_t>(k), Scalar());
    if (k < 0) d.insert(d.begin(), static_cast<std::size_t>(-k), Scalar());
    return from_parts(n, d);
}

ZScalar ZScalar::at_scaled_z(const Scalar& s) const {
    if (is_zero()) return *this;
    Poly n = num_, d = den_;
    Scalar p(1);
    for (std::size_t i = 0; i < std::max(n.size(), d.size()); ++i, p *= s) {
        if (i < n.size()) n[i] *= p;
        if (i < d.size()) d[i] *= p;
    }
    return from_parts(n, d);
}

namespace {

std::string render_zpoly(const ZScalar::Poly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Scalar& c = p[i];
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool simple = c.is_laurent() && c.num().coeffs().size() - std::count(c.num().coeffs().begin(), c.num().coeffs().end(), 0) == 1;
        bool neg = simple && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (i == 0) {
            os << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (cs != "1") os << (simple ? cs : "(" + cs + ")") << "*";
        os << "z";
        if (i != 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace

std::string ZScalar::str() const {
    if (den_.size() == 1 && den_[0].is_one()) return render_zpoly(num_);
    return "(" + render_zpoly(num_) + ")/(" + render_zpoly(den_) + ")";
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(const std::string& s, bool allow_z) : s_(s), allow_z_(allow_z) {}

    ZScalar run() {
        ZScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error("parse error at " + std::to_string(pos_) + ": " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    ZScalar expr() {
        ZScalar v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    ZScalar term() {
        ZScalar v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) v = v / unary();
            else return v;
        }
    }
    ZScalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    ZScalar power() {
        ZScalar base = atom();
        if (!eat('^')) return base;
        int e = exponent();
        if (e < 0) {
            base = base.inverse();
            e = -e;
        }
        ZScalar r(1);
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    }
    int exponent() {
        if (eat('(')) {
            int e = exponent();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        int e = std::stoi(s_.substr(start, pos_ - start));
        return neg ? -e : e;
    }
    ZScalar atom() {
        skip();
        if (eat('(')) {
            ZScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos_ < s_.size() && s_[pos_] == 'q') {
            ++pos_;
            return Scalar::q_pow(1);
        }
        if (pos_ < s_.size() && s_[pos_] == 'z') {
            if (!allow_z_) fail("unexpected z");
            ++pos_;
            return ZScalar::z();
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected number, q or z");
        return Scalar(mpz_class(s_.substr(start, pos_ - start)));
    }

    const std::string& s_;
    bool allow_z_;
    std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text) { return Parser(text, false).run().constant_value(); }

ZScalar parse_zscalar(const std::string& text) { return Parser(text, true).run(); }

}  // namespace qosc
