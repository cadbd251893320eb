#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace minsurf {

using Complex = std::complex<double>;

template <typename Scalar>
using Vec6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

using RealVec6 = Vec6<double>;
using ComplexVec6 = Vec6<Complex>;
using RealVec4 = Vec4<double>;
using ComplexVec4 = Vec4<Complex>;

/// Coordinates of a 2-form on R^4 (or C^4) in the ordered basis
/// e0^e1, e0^e2, e0^e3, e1^e2, e1^e3, e2^e3.
template <typename Scalar>
using Wedge2T = Vec6<Scalar>;
using Wedge2 = Wedge2T<double>;

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix6c = Eigen::Matrix<Complex, 6, 6>;

/// Complex-bilinear extension of the Euclidean inner product (no conjugation).
template <typename DerivedA, typename DerivedB>
auto cbilinear(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v)
{
    return (u.transpose() * v).value();
}

/// Hermitian squared norm, cbilinear(u, conj(u)).
template <typename Derived>
double hermitian_norm2(const Eigen::MatrixBase<Derived>& u)
{
    return u.squaredNorm();
}

template <typename Derived>
bool is_real(const Eigen::MatrixBase<Derived>& u, double tol = 0.0)
{
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
        return u.imag().cwiseAbs().maxCoeff() <= tol;
    } else {
        return true;
    }
}

/// Determinant of the 6x6 matrix with columns v1..v6.
template <typename Scalar>
Scalar volume6(const Vec6<Scalar>& v1, const Vec6<Scalar>& v2, const Vec6<Scalar>& v3,
               const Vec6<Scalar>& v4, const Vec6<Scalar>& v5, const Vec6<Scalar>& v6)
{
    Eigen::Matrix<Scalar, 6, 6> m;
    m << v1, v2, v3, v4, v5, v6;
    return m.determinant();
}

template <typename Scalar>
Scalar volume6(const Eigen::Matrix<Scalar, 6, 6>& columns)
{
    return columns.determinant();
}

/// Generalized cross product of five vectors in R^6: the cofactor vector w of
/// the last column, so that <w, vi> = 0 and volume6(v1..v5, w) = |w|^2.
template <typename Scalar>
Vec6<Scalar> cross5(const Vec6<Scalar>& v1, const Vec6<Scalar>& v2, const Vec6<Scalar>& v3,
                    const Vec6<Scalar>& v4, const Vec6<Scalar>& v5)
{
    Eigen::Matrix<Scalar, 6, 5> m;
    m << v1, v2, v3, v4, v5;
    Vec6<Scalar> w;
    for (int row = 0; row < 6; ++row) {
        Eigen::Matrix<Scalar, 5, 5> minor;
        for (int r = 0, k = 0; r < 6; ++r) {
            if (r == row) continue;
            minor.row(k++) = m.row(r);
        }
        // cofactor sign (-1)^(row + 5) for the entry (row, 5)
        const Scalar sign = ((row + 5) % 2 == 0) ? Scalar(1) : Scalar(-1);
        w(row) = sign * minor.determinant();
    }
    return w;
}

template <typename Scalar>
Wedge2T<Scalar> wedge(const Vec4<Scalar>& p, const Vec4<Scalar>& q)
{
    Wedge2T<Scalar> w;
    w << p(0) * q(1) - p(1) * q(0), p(0) * q(2) - p(2) * q(0), p(0) * q(3) - p(3) * q(0),
        p(1) * q(2) - p(2) * q(1), p(1) * q(3) - p(3) * q(1), p(2) * q(3) - p(3) * q(2);
    return w;
}

/// Hodge star on 2-forms of R^4 with e0^e1^e2^e3 positive.
template <typename Scalar>
Wedge2T<Scalar> hodge_star(const Wedge2T<Scalar>& w)
{
    Wedge2T<Scalar> s;
    s << w(5), -w(4), w(3), w(2), -w(1), w(0);
    return s;
}

/// Inclusion of real 2-forms into complex ones, v -> (v - i*(star v)) / sqrt 2.
/// `orientation` = -1 uses the opposite Hodge convention.
inline ComplexVec6 include_complex(const Wedge2& w, int orientation = 1)
{
    const Complex i(0.0, 1.0);
    const Wedge2 star = double(orientation) * hodge_star(w);
    return (w.cast<Complex>() - i * star.cast<Complex>()) / std::sqrt(2.0);
}

} // namespace minsurf
