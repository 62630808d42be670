#include "twistlog/linalg.hpp"

namespace twistlog {

namespace {

// Row-reduces m in place; returns the rank and the sign/product bookkeeping
// needed by the determinant.
int row_reduce(Mat<Rational>& m, Rational* det) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    if (det) *det = Rational(1);
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) {
            if (det) *det = Rational(0);
            continue;
        }
        if (piv != r) {
            m.row(piv).swap(m.row(r));
            if (det) *det = -*det;
        }
        Rational p = m(r, c);
        if (det) *det *= p;
        Rational pinv = inverse(p);
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (m(i, c).is_zero()) continue;
            Rational f = m(i, c) * pinv;
            for (Eigen::Index j = c; j < cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace

int exact_rank(Mat<Rational> m) { return row_reduce(m, nullptr); }

Rational exact_determinant(Mat<Rational> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    Rational det;
    int r = row_reduce(m, &det);
    return r == m.rows() ? det : Rational(0);
}

Mat<Rational> exact_inverse(const Mat<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const Eigen::Index n = m.rows();
    Mat<Rational> a(n, 2 * n);
    a.leftCols(n) = m;
    a.rightCols(n) = identity<Rational>(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (!a(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::domain_error("matrix is singular");
        if (piv != c) a.row(piv).swap(a.row(c));
        Rational pinv = inverse(a(c, c));
        for (Eigen::Index j = 0; j < 2 * n; ++j) a(c, j) *= pinv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            Rational f = a(i, c);
            for (Eigen::Index j = 0; j < 2 * n; ++j)
                if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
        }
    }
    return a.rightCols(n);
}

}  // namespace twistlog
