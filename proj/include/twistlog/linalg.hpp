#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "twistlog/rational.hpp"
#include "twistlog/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<twistlog::Rational> : GenericNumTraits<twistlog::Rational> {
    typedef twistlog::Rational Real;
    typedef twistlog::Rational NonInteger;
    typedef twistlog::Rational Nested;
    typedef twistlog::Rational Literal;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 16
    };
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<twistlog::Scalar> : GenericNumTraits<twistlog::Scalar> {
    typedef twistlog::Scalar Real;
    typedef twistlog::Scalar NonInteger;
    typedef twistlog::Scalar Nested;
    typedef twistlog::Scalar Literal;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 64,
        MulCost = 256
    };
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace twistlog {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
Mat<T> identity(Eigen::Index n) {
    Mat<T> m = Mat<T>::Constant(n, n, T(0));
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
}

template <class T>
Mat<T> zeros(Eigen::Index r, Eigen::Index c) {
    return Mat<T>::Constant(r, c, T(0));
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class T>
bool equal(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

// Plain triple loop; avoids Eigen's blocked kernels for non-POD scalars.
template <class T>
Mat<T> mul(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Mat<T> r = zeros<T>(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                if (!is_zero(b(k, j))) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

template <class T>
Vec<T> mul(const Mat<T>& a, const Vec<T>& v) {
    if (a.cols() != v.rows()) throw std::invalid_argument("matrix shape mismatch");
    Vec<T> r = Vec<T>::Constant(a.rows(), T(0));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            if (!is_zero(a(i, k)) && !is_zero(v(k))) r(i) += a(i, k) * v(k);
    return r;
}

template <class U, class T>
Mat<U> mat_cast(const Mat<T>& m) {
    Mat<U> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = U(m(i, j));
    return r;
}

template <class T>
Mat<T> mat_pow(const Mat<T>& m, int e) {
    Mat<T> r = identity<T>(m.rows());
    for (int i = 0; i < e; ++i) r = mul(r, m);
    return r;
}

// Smallest k with m^k = 0, or -1 if m^n != 0.
template <class T>
int nilpotency_index(const Mat<T>& m) {
    Mat<T> p = identity<T>(m.rows());
    for (int k = 0; k <= m.rows(); ++k) {
        if (is_zero_matrix(p)) return k;
        p = mul(p, m);
    }
    return -1;
}

// Gaussian elimination over Q.
int exact_rank(Mat<Rational> m);
Mat<Rational> exact_inverse(const Mat<Rational>& m);
Rational exact_determinant(Mat<Rational> m);

// exp of a nilpotent matrix, sum X^k/k!
template <class T>
Mat<T> exp_nilpotent(const Mat<T>& x) {
    if (nilpotency_index(x) < 0) throw std::domain_error("exp_nilpotent: matrix is not nilpotent");
    Mat<T> r = identity<T>(x.rows());
    Mat<T> p = identity<T>(x.rows());
    for (int k = 1; k <= x.rows(); ++k) {
        p = mul(p, x);
        if (is_zero_matrix(p)) break;
        Mat<T> t = p;
        T inv = T(inverse(factorial(k)));
        for (Eigen::Index i = 0; i < t.rows(); ++i)
            for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) *= inv;
        r += t;
    }
    return r;
}

// Mercator series sum (-1)^{k+1} (U-I)^k / k for unipotent U.
template <class T>
Mat<T> log_unipotent(const Mat<T>& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("log_unipotent: non-square matrix");
    Mat<T> x = u - identity<T>(u.rows());
    if (nilpotency_index(x) < 0) throw std::domain_error("log_unipotent: U - I is not nilpotent");
    Mat<T> r = zeros<T>(u.rows(), u.cols());
    Mat<T> p = identity<T>(u.rows());
    for (int k = 1; k <= u.rows(); ++k) {
        p = mul(p, x);
        if (is_zero_matrix(p)) break;
        T c = T(Rational((k % 2 == 1) ? 1 : -1, k));
        for (Eigen::Index i = 0; i < p.rows(); ++i)
            for (Eigen::Index j = 0; j < p.cols(); ++j) r(i, j) += c * p(i, j);
    }
    return r;
}

}  // namespace twistlog
