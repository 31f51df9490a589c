#include "qosc/linalg.hpp"

namespace qosc {

int complexity(const Scalar& s) {
    if (s.is_zero()) return 1 << 28;
    int c = s.num().degree() + s.den().degree() + static_cast<int>(s.num().coeffs().size());
    for (const auto& x : s.num().coeffs()) c += static_cast<int>(mpz_sizeinbase(x.get_mpz_t(), 2) / 16);
    return c;
}

int complexity(const ZScalar& s) {
    if (s.is_zero()) return 1 << 28;
    int c = 0;
    for (const auto& x : s.num()) c += complexity(x) + 4;
    for (const auto& x : s.den()) c += complexity(x) + 4;
    return c;
}

Matrix<Scalar> inverse(Matrix<Scalar> a) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error("inverse: matrix not square");
        a[i].resize(2 * n);
        a[i][n + i] = Scalar(1);
    }
    auto piv = rref(a, n);
    if (piv.size() != n) throw Error("inverse: singular matrix");
    Matrix<Scalar> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(a[i].begin() + static_cast<std::ptrdiff_t>(n), a[i].end());
    return out;
}

int rank(Matrix<Scalar> a) {
    if (a.empty()) return 0;
    return static_cast<int>(rref(a, a[0].size()).size());
}

std::vector<std::vector<Scalar>> kernel(Matrix<Scalar> a, std::size_t cols) { return kernel_of(std::move(a), cols); }

Vec SparseEchelon::reduce(Vec v) const {
    for (const auto& [p, row] : rows_) {
        auto it = v.find(p);
        if (it == v.end()) continue;
        Scalar f = it->second;
        vec_add_to(v, row, -f);
    }
    return v;
}

bool SparseEchelon::add(const Vec& v) {
    Vec r = reduce(v);
    if (r.empty()) return false;
    // cheapest pivot entry
    auto best = r.begin();
    int bc = complexity(best->second);
    for (auto it = r.begin(); it != r.end(); ++it) {
        int c = complexity(it->second);
        if (c < bc) {
            bc = c;
            best = it;
        }
    }
    TensorState p = best->first;
    r = vec_scale(r, best->second.inverse());
    rows_.emplace_back(p, std::move(r));
    return true;
}

}  // namespace qosc
