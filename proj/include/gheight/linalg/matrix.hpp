#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gheight/arith/number_field.hpp"
#include "gheight/errors.hpp"

namespace gheight {

// Dense matrix over a coefficient field, row-major.
template <CoefficientField F>
class Matrix {
public:
    using E = typename F::element_type;

    Matrix() = default;
    Matrix(F field, size_t rows, size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

    static Matrix identity(const F& field, size_t n) {
        Matrix m(field, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    const F& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    E& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const E& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("Matrix: dimension mismatch in product");
        Matrix r(a.field_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const E& x = a(i, k);
                if (is_zero(x)) continue;
                for (size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::vector<E> apply(const std::vector<E>& v) const {
        std::vector<E> r(rows_, field_.zero());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix pow(unsigned long e) const {
        Matrix r = identity(field_, rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t p = r;
            while (p < rows_ && is_zero((*this)(p, c))) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            E inv = inverse((*this)(r, c));
            for (size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || is_zero((*this)(i, c))) continue;
                E f = (*this)(i, c);
                for (size_t j = c; j < cols_; ++j)
                    if (!is_zero((*this)(r, j))) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Basis of the right null space, one vector per free column; each basis
    // vector has a 1 in its free column.
    std::vector<std::vector<E>> nullspace() const {
        Matrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(cols_, false);
        for (size_t c : piv) is_piv[c] = true;
        std::vector<std::vector<E>> basis;
        for (size_t f = 0; f < cols_; ++f) {
            if (is_piv[f]) continue;
            std::vector<E> v(cols_, field_.zero());
            v[f] = field_.one();
            for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Some solution of A x = b, or nullopt if inconsistent.
    std::optional<std::vector<E>> solve(const std::vector<E>& b) const {
        Matrix aug(field_, rows_, cols_ + 1);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto piv = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        std::vector<E> x(cols_, field_.zero());
        for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
        return x;
    }

    E det() const {
        if (rows_ != cols_) throw InputError("Matrix: determinant of non-square matrix");
        Matrix m = *this;
        E d = field_.one();
        for (size_t c = 0; c < cols_; ++c) {
            size_t p = c;
            while (p < rows_ && is_zero(m(p, c))) ++p;
            if (p == rows_) return field_.zero();
            if (p != c) {
                m.swap_rows(p, c);
                d = -d;
            }
            d *= m(c, c);
            E inv = inverse(m(c, c));
            for (size_t i = c + 1; i < rows_; ++i) {
                if (is_zero(m(i, c))) continue;
                E f = m(i, c) * inv;
                for (size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return d;
    }

    Matrix inverse_matrix() const {
        if (rows_ != cols_) throw InputError("Matrix: inverse of non-square matrix");
        size_t n = rows_;
        Matrix aug(field_, n, 2 * n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = field_.one();
        }
        auto piv = aug.rref();
        if (piv.size() < n || piv[n - 1] != n - 1) throw InputError("Matrix: singular matrix");
        Matrix r(field_, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
        return r;
    }

    // Characteristic polynomial det(xI - A), coefficients low to high
    // (Hessenberg reduction, then the standard recurrence).
    std::vector<E> charpoly() const {
        if (rows_ != cols_) throw InputError("Matrix: charpoly of non-square matrix");
        size_t n = rows_;
        Matrix h = *this;
        for (size_t m = 1; m + 1 <= n; ++m) {
            size_t i = m;
            while (i < n && is_zero(h(i, m - 1))) ++i;
            if (i == n) continue;
            if (i != m) {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            E inv = inverse(h(m, m - 1));
            for (size_t k = m + 1; k < n; ++k) {
                if (is_zero(h(k, m - 1))) continue;
                E u = h(k, m - 1) * inv;
                for (size_t j = 0; j < n; ++j) h(k, j) -= u * h(m, j);
                for (size_t j = 0; j < n; ++j) h(j, m) += u * h(j, k);
            }
        }
        // p_k = charpoly of leading k x k block
        std::vector<std::vector<E>> p(n + 1);
        p[0] = {field_.one()};
        for (size_t k = 1; k <= n; ++k) {
            // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{i,k} (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
            std::vector<E> r(k + 1, field_.zero());
            for (size_t d = 0; d < p[k - 1].size(); ++d) {
                r[d + 1] += p[k - 1][d];
                r[d] -= h(k - 1, k - 1) * p[k - 1][d];
            }
            E prod = field_.one();
            for (size_t i = k - 1; i-- > 0;) {
                prod *= h(i + 1, i);
                E c = h(i, k - 1) * prod;
                if (is_zero(c)) continue;
                for (size_t d = 0; d < p[i].size(); ++d) r[d] -= c * p[i][d];
            }
            p[k] = std::move(r);
        }
        return p[n];
    }

    // Minimal polynomial (monic, low to high) via Krylov dependencies of
    // the standard basis vectors.
    std::vector<E> minpoly() const {
        if (rows_ != cols_) throw InputError("Matrix: minpoly of non-square matrix");
        size_t n = rows_;
        std::vector<E> result = {field_.one()};
        for (size_t s = 0; s < n; ++s) {
            std::vector<E> e(n, field_.zero());
            e[s] = field_.one();
            // least k with e, Ae, ..., A^k e dependent
            std::vector<std::vector<E>> krylov = {e};
            std::vector<E> rel;
            for (;;) {
                std::vector<E> next = apply(krylov.back());
                Matrix k(field_, n, krylov.size());
                for (size_t j = 0; j < krylov.size(); ++j)
                    for (size_t i = 0; i < n; ++i) k(i, j) = krylov[j][i];
                auto sol = k.solve(next);
                if (sol) {
                    rel.resize(krylov.size() + 1, field_.zero());
                    for (size_t j = 0; j < krylov.size(); ++j) rel[j] = -(*sol)[j];
                    rel.back() = field_.one();
                    break;
                }
                krylov.push_back(std::move(next));
            }
            result = poly_lcm(result, rel);
        }
        return result;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

private:
    // Polynomial helpers over the field, coefficients low to high.
    void trim(std::vector<E>& p) const {
        while (p.size() > 1 && is_zero(p.back())) p.pop_back();
    }
    std::vector<E> poly_mul(const std::vector<E>& a, const std::vector<E>& b) const {
        std::vector<E> r(a.size() + b.size() - 1, field_.zero());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    std::pair<std::vector<E>, std::vector<E>> poly_divmod(std::vector<E> a, const std::vector<E>& b) const {
        trim(a);
        if (a.size() < b.size()) return {{field_.zero()}, a};
        std::vector<E> q(a.size() - b.size() + 1, field_.zero());
        E inv = inverse(b.back());
        size_t db = b.size() - 1;
        for (size_t k = a.size(); k-- > db;) {
            E c = a[k] * inv;
            q[k - db] = c;
            for (size_t j = 0; j < b.size(); ++j) a[k - db + j] -= c * b[j];
        }
        a.resize(db > 0 ? db : 1, field_.zero());
        trim(a);
        return {q, a};
    }
    bool poly_is_zero(const std::vector<E>& p) const {
        for (const auto& c : p)
            if (!is_zero(c)) return false;
        return true;
    }
    std::vector<E> poly_lcm(const std::vector<E>& a, const std::vector<E>& b) const {
        std::vector<E> x = a, y = b;
        while (!poly_is_zero(y)) {
            auto r = poly_divmod(x, y).second;
            x = y;
            y = r;
        }
        trim(x);
        E inv = inverse(x.back());
        for (auto& c : x) c *= inv;
        auto q = poly_divmod(poly_mul(a, b), x).first;
        trim(q);
        E li = inverse(q.back());
        for (auto& c : q) c *= li;
        return q;
    }

    F field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<E> a_;
};

// Row-reduces A once and then solves A x = b for many right-hand sides.
template <CoefficientField F>
class FactoredSystem {
public:
    using E = typename F::element_type;

    explicit FactoredSystem(const Matrix<F>& a) : field_(a.field()), rows_(a.rows()), cols_(a.cols()) {
        Matrix<F> aug(field_, rows_, cols_ + rows_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug(i, j) = a(i, j);
            aug(i, cols_ + i) = field_.one();
        }
        // Pivot only within the A block.
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t p = r;
            while (p < rows_ && is_zero(aug(p, c))) ++p;
            if (p == rows_) continue;
            aug.swap_rows(p, r);
            E inv = inverse(aug(r, c));
            for (size_t j = 0; j < aug.cols(); ++j) aug(r, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || is_zero(aug(i, c))) continue;
                E f = aug(i, c);
                for (size_t j = c; j < aug.cols(); ++j)
                    if (!is_zero(aug(r, j))) aug(i, j) -= f * aug(r, j);
            }
            pivots_.push_back(c);
            ++r;
        }
        reduced_ = Matrix<F>(field_, rows_, cols_);
        transform_ = Matrix<F>(field_, rows_, rows_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) reduced_(i, j) = aug(i, j);
            for (size_t j = 0; j < rows_; ++j) transform_(i, j) = aug(i, cols_ + j);
        }
    }

    size_t rank() const { return pivots_.size(); }
    const std::vector<size_t>& pivots() const { return pivots_; }
    const Matrix<F>& reduced() const { return reduced_; }

    std::optional<std::vector<E>> solve(const std::vector<E>& b) const {
        std::vector<E> c = transform_.apply(b);
        for (size_t i = pivots_.size(); i < rows_; ++i)
            if (!is_zero(c[i])) return std::nullopt;
        std::vector<E> x(cols_, field_.zero());
        for (size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = c[i];
        return x;
    }

private:
    F field_;
    size_t rows_, cols_;
    std::vector<size_t> pivots_;
    Matrix<F> reduced_;
    Matrix<F> transform_;
};

template <CoefficientField F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& A) {
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) os << (j ? " " : "") << coeff_to_string(A(i, j));
        os << "\n";
    }
    return os;
}

} // namespace gheight
