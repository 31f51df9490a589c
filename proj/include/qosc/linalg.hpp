#pragma once

#include "qosc/engine.hpp"

#include <vector>

namespace qosc {

template <class F>
using Matrix = std::vector<std::vector<F>>;

// Rough size of an entry, used to pick cheap pivots.
int complexity(const Scalar& s);
int complexity(const ZScalar& s);

// Reduces a in place to reduced row echelon form over its first cols columns
// (row operations act on the full width); returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t best = a.size();
        int best_c = 1 << 29;
        for (std::size_t i = row; i < a.size(); ++i) {
            if (a[i][col].is_zero()) continue;
            int c = complexity(a[i][col]);
            if (c < best_c) {
                best_c = c;
                best = i;
            }
        }
        if (best == a.size()) continue;
        std::swap(a[row], a[best]);
        F inv = a[row][col].inverse();
        const std::size_t width = a[row].size();
        for (std::size_t j = col; j < width; ++j)
            if (!a[row][j].is_zero()) a[row][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            F f = a[i][col];
            for (std::size_t j = col; j < width; ++j)
                if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Null space basis; each vector has a 1 at its free column.
template <class F>
std::vector<std::vector<F>> kernel_of(Matrix<F> a, std::size_t cols) {
    auto piv = rref(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<F>> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<F> v(cols);
        v[free] = F(1);
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a[k][free];
        out.push_back(std::move(v));
    }
    return out;
}

// Gauss-Jordan inverse; throws Error if singular.
Matrix<Scalar> inverse(Matrix<Scalar> a);
int rank(Matrix<Scalar> a);
// Null space basis of a (rows x cols); each vector has a 1 at its free column.
std::vector<std::vector<Scalar>> kernel(Matrix<Scalar> a, std::size_t cols);

// Incremental row echelon form for sparse vectors.
class SparseEchelon {
public:
    // Reduces v against the stored rows.
    Vec reduce(Vec v) const;
    // Adds v if independent; returns whether it was added.
    bool add(const Vec& v);
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::pair<TensorState, Vec>> rows_;  // pivot, row scaled so pivot entry is 1
};

}  // namespace qosc
