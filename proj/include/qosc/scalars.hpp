#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qosc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense polynomial in Z[q]; c[i] is the coefficient of q^i, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const mpz_class& c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& lead() const { return c_.back(); }
    const mpz_class& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int low_order() const;  // smallest i with c[i] != 0

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly scaled(const mpz_class& s) const;
    IntPoly shifted(int k) const;  // multiply by q^k (k may be negative if divisible)
    IntPoly divexact_int(const mpz_class& s) const;

    mpz_class content() const;
    IntPoly primitive() const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }
    bool operator<(const IntPoly& o) const;

    mpq_class eval(const mpq_class& x) const;
    std::size_t hash() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Exact quotient a / b over Z[q]; throws if b does not divide a.
IntPoly divexact(const IntPoly& a, const IntPoly& b);
// Returns true and sets quo if b divides a exactly over Z[q].
bool try_divexact(const IntPoly& a, const IntPoly& b, IntPoly& quo);
// gcd over Z[q], positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Element of Q(q) kept as q^shift * num / den with num, den in Z[q] having
// nonzero constant terms, coprime over Q[q], jointly primitive, lead(den) > 0.
class Scalar {
public:
    Scalar() : den_(IntPoly::constant(1)) {}
    Scalar(long v);  // NOLINT implicit from integers
    explicit Scalar(const mpz_class& v);
    explicit Scalar(const mpq_class& v);

    static Scalar q_pow(int k);
    static Scalar from_laurent(const IntPoly& p, int shift);
    static Scalar from_parts(const IntPoly& num, const IntPoly& den, int shift);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_laurent() const { return den_.is_one(); }
    bool is_rational() const;  // constant in q

    int shift() const { return shift_; }
    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inverse() const;
    Scalar pow(int k) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // arbitrary total order

    // Value at q = x; throws Error("evaluation at pole") when undefined.
    mpq_class eval(const mpq_class& x) const;
    std::string str() const;
    std::size_t hash() const;

private:
    void normalize();
    int shift_ = 0;
    IntPoly num_;
    IntPoly den_;
};

// Quantum integer [m] = (q^m - q^-m)/(q - q^-1), Laurent.
Scalar qint(int m);
Scalar qfact(int m);
// Substitute q -> x (rational); throws on pole.
mpq_class substitute_q(const Scalar& s, const mpq_class& x);
// Substitute q -> q^k.
Scalar substitute_q_power(const Scalar& s, int k);

// Element of Q(q)(z): num/den in Q(q)[z], den monic in z, coprime.
class ZScalar {
public:
    using Poly = std::vector<Scalar>;  // coefficient of z^i, no trailing zeros

    ZScalar() : den_{Scalar(1)} {}
    ZScalar(const Scalar& s);  // NOLINT
    ZScalar(long v) : ZScalar(Scalar(v)) {}  // NOLINT
    static ZScalar z();
    static ZScalar from_poly(Poly p);
    static ZScalar from_parts(Poly num, Poly den);

    bool is_zero() const { return num_.empty(); }
    bool is_constant() const { return num_.size() <= 1 && den_.size() == 1; }
    Scalar constant_value() const;  // throws unless is_constant()
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    ZScalar operator+(const ZScalar& o) const;
    ZScalar operator-(const ZScalar& o) const;
    ZScalar operator-() const;
    ZScalar operator*(const ZScalar& o) const;
    ZScalar operator/(const ZScalar& o) const;
    ZScalar& operator+=(const ZScalar& o) { return *this = *this + o; }
    ZScalar& operator-=(const ZScalar& o) { return *this = *this - o; }
    ZScalar& operator*=(const ZScalar& o) { return *this = *this * o; }
    ZScalar inverse() const;

    bool operator==(const ZScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ZScalar& o) const { return !(*this == o); }

    // z -> value; throws Error("spectral-parameter collision") at a pole.
    Scalar at(const Scalar& value) const;
    ZScalar at_inverse_z() const;  // z -> 1/z
    ZScalar at_scaled_z(const Scalar& s) const;  // z -> s z
    std::string str() const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

namespace zpoly {
ZScalar::Poly add(const ZScalar::Poly& a, const ZScalar::Poly& b);
ZScalar::Poly sub(const ZScalar::Poly& a, const ZScalar::Poly& b);
ZScalar::Poly mul(const ZScalar::Poly& a, const ZScalar::Poly& b);
ZScalar::Poly scale(const ZScalar::Poly& a, const Scalar& s);
// Division with remainder over Q(q)[z].
void divmod(const ZScalar::Poly& a, const ZScalar::Poly& b, ZScalar::Poly& quo, ZScalar::Poly& rem);
ZScalar::Poly monic_gcd(ZScalar::Poly a, ZScalar::Poly b);
Scalar eval(const ZScalar::Poly& a, const Scalar& x);
}  // namespace zpoly

// Text forms such as "q^2 + 1 + q^-2" and "(1 - q^3*z)/(z - q^3)".
Scalar parse_scalar(const std::string& text);
ZScalar parse_zscalar(const std::string& text);

}  // namespace qosc
