#ifndef ORETEL_MATRIX_HPP
#define ORETEL_MATRIX_HPP

#include "poly.hpp"

namespace oretel {

template<class T>
class Mat {
public:
    size_t nr = 0, nc = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(size_t r, size_t c) : nr(r), nc(c), a(r * c, T(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(size_t i, size_t j) { return a[i * nc + j]; }
    const T& operator()(size_t i, size_t j) const { return a[i * nc + j]; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        check(x.nc == y.nr, "matrix dimension mismatch");
        Mat r(x.nr, y.nc);
        for (size_t i = 0; i < x.nr; ++i)
            for (size_t k = 0; k < x.nc; ++k) {
                if (oretel::is_zero(x(i, k))) continue;
                for (size_t j = 0; j < y.nc; ++j)
                    r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        check(x.nr == y.nr && x.nc == y.nc, "matrix dimension mismatch");
        Mat r(x.nr, x.nc);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        check(x.nr == y.nr && x.nc == y.nc, "matrix dimension mismatch");
        Mat r(x.nr, x.nc);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const T& s) {
        Mat r = x;
        for (auto& v : r.a) v = v * s;
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return x.nr == y.nr && x.nc == y.nc && x.a == y.a; }

    Mat transpose() const {
        Mat r(nc, nr);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(a.begin() + i * nc, a.begin() + (i + 1) * nc);
    }

    template<class F>
    Mat<std::invoke_result_t<F, T>> map(F f) const {
        Mat<std::invoke_result_t<F, T>> r(nr, nc);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = f(a[i]);
        return r;
    }
};

// row vector * matrix
template<class T>
std::vector<T> vec_mat(const std::vector<T>& v, const Mat<T>& m) {
    check(v.size() == m.nr, "vector/matrix dimension mismatch");
    std::vector<T> r(m.nc, T(0));
    for (size_t i = 0; i < m.nr; ++i) {
        if (oretel::is_zero(v[i])) continue;
        for (size_t j = 0; j < m.nc; ++j) r[j] = r[j] + v[i] * m(i, j);
    }
    return r;
}

// Gaussian elimination over a field: reduced row echelon form in place.
// Returns pivot columns.
template<class T>
std::vector<size_t> rref(Mat<T>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.nc && row < m.nr; ++col) {
        size_t piv = row;
        while (piv < m.nr && oretel::is_zero(m(piv, col))) ++piv;
        if (piv == m.nr) continue;
        if (piv != row)
            for (size_t j = 0; j < m.nc; ++j) std::swap(m(piv, j), m(row, j));
        const T inv = T(1) / m(row, col);
        for (size_t j = col; j < m.nc; ++j) m(row, j) = m(row, j) * inv;
        for (size_t i = 0; i < m.nr; ++i) {
            if (i == row || oretel::is_zero(m(i, col))) continue;
            const T f = m(i, col);
            for (size_t j = col; j < m.nc; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template<class T>
size_t rank(Mat<T> m) { return rref(m).size(); }

// basis of the right nullspace {x : m x = 0}, columns as vectors
template<class T>
std::vector<std::vector<T>> nullspace(Mat<T> m) {
    auto pivots = rref(m);
    std::vector<bool> is_piv(m.nc, false);
    for (size_t c : pivots) is_piv[c] = true;
    std::vector<std::vector<T>> basis;
    for (size_t free_col = 0; free_col < m.nc; ++free_col) {
        if (is_piv[free_col]) continue;
        std::vector<T> v(m.nc, T(0));
        v[free_col] = T(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m(i, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve m x = b; returns false if inconsistent.  Free variables are set to 0.
template<class T>
bool solve_linear(const Mat<T>& m, const std::vector<T>& b, std::vector<T>& x) {
    check(b.size() == m.nr, "rhs size mismatch");
    Mat<T> aug(m.nr, m.nc + 1);
    for (size_t i = 0; i < m.nr; ++i) {
        for (size_t j = 0; j < m.nc; ++j) aug(i, j) = m(i, j);
        aug(i, m.nc) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.nc) return false;
    x.assign(m.nc, T(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.nc);
    return true;
}

template<class T>
T det(Mat<T> m) {
    check(m.nr == m.nc, "determinant of non-square matrix");
    T d(1);
    for (size_t col = 0; col < m.nc; ++col) {
        size_t piv = col;
        while (piv < m.nr && oretel::is_zero(m(piv, col))) ++piv;
        if (piv == m.nr) return T(0);
        if (piv != col) {
            for (size_t j = 0; j < m.nc; ++j) std::swap(m(piv, j), m(col, j));
            d = -d;
        }
        d = d * m(col, col);
        const T inv = T(1) / m(col, col);
        for (size_t i = col + 1; i < m.nr; ++i) {
            if (oretel::is_zero(m(i, col))) continue;
            const T f = m(i, col) * inv;
            for (size_t j = col; j < m.nc; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return d;
}

template<class T>
Mat<T> inverse(const Mat<T>& m) {
    check(m.nr == m.nc, "inverse of non-square matrix");
    Mat<T> aug(m.nr, 2 * m.nc);
    for (size_t i = 0; i < m.nr; ++i) {
        for (size_t j = 0; j < m.nc; ++j) aug(i, j) = m(i, j);
        aug(i, m.nc + i) = T(1);
    }
    auto pivots = rref(aug);
    check(pivots.size() == m.nr && pivots.back() == m.nr - 1, "singular matrix");
    Mat<T> r(m.nr, m.nc);
    for (size_t i = 0; i < m.nr; ++i)
        for (size_t j = 0; j < m.nc; ++j) r(i, j) = aug(i, m.nc + j);
    return r;
}

// Row Hermite form over K[x] by unimodular row operations: row echelon with
// monic pivots, entries above each pivot reduced.  Rows of the result span the
// same K[x]-module as the input rows.
template<class K>
void hermite_rows(Mat<Poly<K>>& m) {
    size_t row = 0;
    for (size_t col = 0; col < m.nc && row < m.nr; ++col) {
        while (true) {
            size_t best = m.nr;
            long bestdeg = -1;
            for (size_t i = row; i < m.nr; ++i) {
                if (m(i, col).is_zero()) continue;
                if (best == m.nr || m(i, col).degree() < bestdeg) { best = i; bestdeg = m(i, col).degree(); }
            }
            if (best == m.nr) break;
            if (best != row)
                for (size_t j = 0; j < m.nc; ++j) std::swap(m(best, j), m(row, j));
            bool again = false;
            for (size_t i = row + 1; i < m.nr; ++i) {
                if (m(i, col).is_zero()) continue;
                Poly<K> q = divrem(m(i, col), m(row, col)).first;
                for (size_t j = 0; j < m.nc; ++j) m(i, j) = m(i, j) - q * m(row, j);
                if (!m(i, col).is_zero()) again = true;
            }
            if (!again) break;
        }
        if (m(row, col).is_zero()) continue;
        const K inv = K(1) / m(row, col).lc();
        for (size_t j = 0; j < m.nc; ++j) m(row, j) = m(row, j) * inv;
        for (size_t i = 0; i < row; ++i) {
            if (m(i, col).is_zero()) continue;
            Poly<K> q = divrem(m(i, col), m(row, col)).first;
            if (q.is_zero()) continue;
            for (size_t j = 0; j < m.nc; ++j) m(i, j) = m(i, j) - q * m(row, j);
        }
        ++row;
    }
}

} // namespace oretel

#endif
