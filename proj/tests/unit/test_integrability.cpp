#include "minsurf/bipolar.hpp"
#include "minsurf/catalog.hpp"
#include "minsurf/integrability.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

Grid2 torus_grid(int n, double l)
{
    Grid2 g;
    g.nx = g.ny = n;
    g.lx = g.ly = l;
    return g;
}

// constant solution: e^{2 omega} = cosh 2phi, |alpha|^2 = e^-omega sinh^2 2phi
InvariantTriple flat_triple(const Grid2& g, double phi)
{
    InvariantTriple t;
    t.grid = g;
    const double omega = 0.5 * std::log(std::cosh(2 * phi));
    const double alpha = std::sqrt(std::exp(-omega)) * std::sinh(2 * phi);
    t.omega.assign(g.size(), omega);
    t.phi.assign(g.size(), phi);
    t.alpha.assign(g.size(), Complex(0.6 * alpha, 0.8 * alpha));
    return t;
}

} // namespace

TEST_CASE("constant solution of the frame system")
{
    const Grid2 g = torus_grid(16, 1.0);
    const InvariantTriple t = flat_triple(g, 0.7);
    CHECK(residual_system_F(t).max() < 1e-14);

    SUBCASE("planted perturbations are detected")
    {
        const double delta = 1e-3;
        InvariantTriple p = t;
        for (auto& w : p.omega) w += delta;
        const double w = t.omega[0], c2 = std::cosh(1.4);
        const double expected = std::abs(std::exp(w + delta) - std::exp(-w - delta) * c2);
        CHECK(residual_system_F(p).omega_eq == doctest::Approx(expected).epsilon(1e-9));
        CHECK(residual_system_F(p).omega_eq >= delta / 2);

        p = t;
        for (auto& a : p.alpha) a *= 1.0 + delta;
        CHECK(residual_system_F(p).phi_eq >= delta / 2);

        p = t;
        p.alpha[g.index(5, 5)] += delta;
        CHECK(residual_system_F(p).alpha_eq >= delta / 2);
    }
}

TEST_CASE("sinh-Gordon and substitution")
{
    const Grid2 g = torus_grid(16, 1.0);
    CHECK(residual_sinh_gordon(g, ScalarField(g.size(), 0.0)) == 0.0);
    CHECK(residual_sinh_gordon(g, ScalarField(g.size(), 0.1)) == doctest::Approx(std::sinh(0.1)));

    ScalarField eta(g.size());
    for (int k = 0; k < g.size(); ++k) eta[k] = 0.01 * k;
    ScalarField omega(g.size());
    for (int k = 0; k < g.size(); ++k) omega[k] = std::log(std::cosh(eta[k]));
    const ScalarField back = substitute(omega);
    for (int k = 1; k < g.size(); ++k) CHECK(back[k] == doctest::Approx(eta[k]).epsilon(1e-9));

    omega[3] = -0.1;
    try {
        substitute(omega);
        FAIL("expected SubstitutionDomain");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::SubstitutionDomain);
    }
}

TEST_CASE("frame transfer and generator")
{
    const double omega = 0.3, phi = 0.4;
    const Matrix6c T = frame_transfer(omega, phi);
    CHECK(std::abs(T.determinant() + std::exp(omega) * std::sinh(2 * phi)) < 1e-12);

    const Matrix6c P = frame_generator(omega, Complex(0.1, 0.2), phi, Complex(-0.3, 0.05), Complex(0.2, -0.1));
    CHECK(P(1, 0) == Complex(1.0, 0.0));
    CHECK(P(0, 2) == Complex(-std::exp(omega), 0.0));
    const Matrix6c Q = conjugate_generator(P);
    CHECK(Q(2, 0) == Complex(1.0, 0.0));
    CHECK(Q(0, 1) == Complex(-std::exp(omega), 0.0));
}

TEST_CASE("S^3 frame integration reproduces the Clifford torus")
{
    for (int n : {32, 64}) {
        const S3Surface c = clifford_torus(n, n);
        const double r = 1.0 / std::sqrt(2.0);
        Eigen::Matrix4d seed;
        seed.col(0) = RealVec4(r, 0, r, 0);
        seed.col(1) = RealVec4(-r, 0, r, 0);
        seed.col(2) = RealVec4(0, 1, 0, 0);
        seed.col(3) = RealVec4(0, 0, 0, 1);
        const S3Integration out = integrate_s3_frame(c.grid(), c.eta, seed);
        CHECK(mask_count(out.valid) == static_cast<std::size_t>(c.grid().size()));
        double err = 0.0;
        for (int k = 0; k < c.grid().size(); ++k) {
            err = std::max(err, (out.surface.G1.values[k] - c.G1.values[k]).norm());
            err = std::max(err, (out.surface.G2.values[k] - c.G2.values[k]).norm());
        }
        CHECK(err < 10 * c.grid().spacing() * c.grid().spacing());
        CHECK(out.holonomy < 10 * c.grid().spacing() * c.grid().spacing());
    }
}

TEST_CASE("frame integration is equivariant under the seed")
{
    const S3Surface c = clifford_torus(32, 32);
    const S3Integration base = integrate_s3_frame(c.grid(), c.eta);
    const Eigen::Matrix4d R = Eigen::HouseholderQR<Eigen::Matrix4d>(Eigen::Matrix4d::Random()).householderQ();
    const S3Integration rotated = integrate_s3_frame(c.grid(), c.eta, R);
    for (int k = 0; k < c.grid().size(); ++k)
        CHECK((rotated.surface.G1.values[k] - R * base.surface.G1.values[k]).norm() < 1e-10);
}

TEST_CASE("procrustes recovers an orthogonal map")
{
    RealVectorField src(50), dst(50);
    const Matrix6d R = Eigen::HouseholderQR<Matrix6d>(Matrix6d::Random()).householderQ();
    for (int k = 0; k < 50; ++k) {
        src[k] = RealVec6::Random();
        dst[k] = R * src[k];
    }
    CHECK((procrustes(src, dst) - R).norm() < 1e-12);
}

TEST_CASE("frame integration reproduces the Lawson bipolar from its invariants")
{
    const SampledSurface f = adapt_coordinate(bipolar(conformalize_lawson(2, 1, 64, 64))).surface;
    const FrameField F = build_frame(f);
    const InvariantTriple t = invariants_of(F);
    IntegrationOptions opts;
    double best = -1.0;
    for (int j = 0; j < f.grid.ny; ++j) {
        double row_min = INFINITY;
        for (int i = 0; i < f.grid.nx; ++i) row_min = std::min(row_min, t.phi[f.grid.index(i, j)]);
        if (row_min > best) {
            best = row_min;
            opts.j0 = j;
        }
    }
    opts.rows_up = 4;
    opts.rows_down = 0;
    const FrameIntegration out = integrate_frame_F(t, std::nullopt, opts);
    const Matrix6d R = procrustes(out.surface.values, f.values, &out.valid);
    double err = 0.0;
    for (int k = 0; k < f.grid.size(); ++k)
        if (out.valid[k]) err = std::max(err, (R * out.surface.values[k] - f.values[k]).norm());
    CHECK(mask_count(out.valid) >= static_cast<std::size_t>(5 * f.grid.nx) - 5);
    CHECK(err < 10 * f.grid.spacing());
}
