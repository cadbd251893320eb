#include "minsurf/algebra6.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

const Complex I(0.0, 1.0);

RealVec6 e6(int k) { return RealVec6::Unit(k); }
RealVec4 e4(int k) { return RealVec4::Unit(k); }

} // namespace

TEST_CASE("cbilinear is unconjugated and symmetric")
{
    ComplexVec6 u = ComplexVec6::Zero();
    u << 1.0, I, 0.0, 0.0, 0.0, 0.0;
    CHECK(std::abs(cbilinear(u, u)) == 0.0);
    CHECK(cbilinear(e6(0), e6(0)) == 1.0);
    CHECK(cbilinear(u, u.conjugate()) == Complex(2.0, 0.0));

    const ComplexVec6 a = ComplexVec6::Random(), b = ComplexVec6::Random();
    CHECK(std::abs(cbilinear(a, b) - cbilinear(b, a)) < 1e-15);
    CHECK(std::abs(hermitian_norm2(a) - cbilinear(a, a.conjugate()).real()) < 1e-14);
}

TEST_CASE("volume6 is the determinant of the columns")
{
    CHECK(volume6<double>(e6(0), e6(1), e6(2), e6(3), e6(4), e6(5)) == doctest::Approx(1.0));
    CHECK(volume6<double>(e6(1), e6(0), e6(2), e6(3), e6(4), e6(5)) == doctest::Approx(-1.0));
    CHECK(volume6<double>(e6(0), e6(0), e6(2), e6(3), e6(4), e6(5)) == doctest::Approx(0.0));

    const Matrix6d m = Matrix6d::Random();
    Matrix6d swapped = m;
    swapped.col(2).swap(swapped.col(4));
    CHECK(volume6(swapped) == doctest::Approx(-volume6(m)));
}

TEST_CASE("cross5 is the cofactor of the last column")
{
    CHECK((cross5<double>(e6(0), e6(1), e6(2), e6(3), e6(4)) - e6(5)).norm() == 0.0);
    CHECK(cross5<double>(e6(0), e6(1), e6(2), e6(3), e6(3)).norm() == 0.0);
    CHECK((cross5<double>(e6(1), e6(0), e6(2), e6(3), e6(4)) + e6(5)).norm() == 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Matrix<double, 6, 5> v = Eigen::Matrix<double, 6, 5>::Random();
        const RealVec6 w = cross5<double>(v.col(0), v.col(1), v.col(2), v.col(3), v.col(4));
        for (int i = 0; i < 5; ++i) CHECK(std::abs(w.dot(v.col(i))) < 10 * 1e-15 * w.norm());
        CHECK(volume6<double>(v.col(0), v.col(1), v.col(2), v.col(3), v.col(4), w) ==
              doctest::Approx(w.squaredNorm()));
    }
}

TEST_CASE("wedge in the lexicographic basis")
{
    CHECK((wedge<double>(e4(0), e4(1)) - e6(0)).norm() == 0.0);
    const RealVec4 p = RealVec4::Random();
    CHECK(wedge<double>(p, p).norm() == 0.0);
    const RealVec4 q = RealVec4::Random();
    CHECK((wedge<double>(p, q) + wedge<double>(q, p)).norm() == 0.0);

    const Eigen::Matrix4d Q = Eigen::HouseholderQR<Eigen::Matrix4d>(Eigen::Matrix4d::Random()).householderQ();
    CHECK(wedge<double>(Q.col(0), Q.col(1)).norm() == doctest::Approx(1.0));
}

TEST_CASE("hodge star with e0^e1^e2^e3 positive")
{
    CHECK((hodge_star(e6(0)) - e6(5)).norm() == 0.0);
    CHECK((hodge_star(e6(1)) + e6(4)).norm() == 0.0);
    CHECK((hodge_star(e6(2)) - e6(3)).norm() == 0.0);
    Wedge2 w;
    w << 1, 2, 3, 4, 5, 6;
    CHECK((hodge_star(hodge_star(w)) - w).norm() == 0.0);

    // w ^ star w = |w|^2 vol, with w ^ v = w01 v23 - w02 v13 + w03 v12 + w12 v03 - w13 v02 + w23 v01
    const Wedge2 s = hodge_star(w);
    const double top = w(0) * s(5) - w(1) * s(4) + w(2) * s(3) + w(3) * s(2) - w(4) * s(1) + w(5) * s(0);
    CHECK(top == doctest::Approx(w.squaredNorm()));
}

TEST_CASE("complex inclusion of 2-forms")
{
    const ComplexVec6 z = include_complex(e6(0));
    ComplexVec6 expected = ComplexVec6::Zero();
    expected(0) = 1.0 / std::sqrt(2.0);
    expected(5) = -I / std::sqrt(2.0);
    CHECK((z - expected).norm() < 1e-16);
    CHECK(include_complex(Wedge2::Zero()).norm() == 0.0);

    Wedge2 sd;
    sd << 1, 0, 0, 0, 0, 1; // self-dual
    CHECK((include_complex(sd) - (1.0 - I) / std::sqrt(2.0) * sd.cast<Complex>()).norm() < 1e-15);

    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Matrix4d Q = Eigen::HouseholderQR<Eigen::Matrix4d>(Eigen::Matrix4d::Random()).householderQ();
        CHECK(hermitian_norm2(include_complex(wedge<double>(Q.col(0), Q.col(1)))) == doctest::Approx(1.0));
    }
}
