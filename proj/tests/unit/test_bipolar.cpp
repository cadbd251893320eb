#include "minsurf/bipolar.hpp"
#include "minsurf/catalog.hpp"

#include <doctest.h>

using namespace minsurf;

TEST_CASE("bipolar of the Clifford torus in closed form")
{
    const S3Surface s = clifford_torus(24, 24);
    const SampledSurface f = bipolar(s);
    const Grid2& g = f.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double u = std::sqrt(2.0) * g.x(i), v = std::sqrt(2.0) * g.y(j);
            const RealVec6 expected(0.0, std::cos(u) * std::cos(v), std::cos(u) * std::sin(v),
                                    std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), 0.0);
            CHECK((f.at(i, j) - expected).norm() < 1e-14);
        }
}

TEST_CASE("bipolar is the wedge of the surface and its normal")
{
    const S3Surface s = conformalize_lawson(3, 1, 32, 32);
    const SampledSurface f = bipolar(s);
    for (int k = 0; k < f.grid.size(); k += 17) {
        const RealVec4 &p = s.G1.values[k], &q = s.G2.values[k];
        CHECK(f.values[k](0) == doctest::Approx(p(0) * q(1) - p(1) * q(0)));
        CHECK(f.values[k](5) == doctest::Approx(p(2) * q(3) - p(3) * q(2)));
        CHECK(std::abs(f.values[k].norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("S^3 structure equations detect a wrong normal")
{
    const S3Surface s = conformalize_lawson(2, 1, 48, 48);
    const S3Report good = check_s3_minimal(s);
    CHECK(good.unit < 1e-10);
    CHECK(good.max_structure() < 10 * s.grid().spacing());
    CHECK(good.normal_u < 10 * s.grid().spacing());

    S3Surface bad = s;
    for (auto& v : bad.G2.values) v = -v;
    const S3Report rep = check_s3_minimal(bad);
    CHECK(rep.orientation == -1);
    CHECK(rep.max_structure() > 0.5);
}

TEST_CASE("complex form of the bipolar")
{
    for (const char* name : {"clifford", "lawson-2-1"}) {
        const S3Surface s = catalog_surface(name, 48, 48);
        const ComplexFormCheck c = bipolar_complex_form(s);
        CHECK(std::abs(std::abs(c.phase) - 1.0) < 1e-10);
        CHECK(c.residual < 10 * s.grid().spacing());
    }
}

TEST_CASE("bipolar characterization")
{
    const S3Surface s = conformalize_lawson(2, 1, 64, 64);
    const SampledSurface f = adapt_coordinate(bipolar(s)).surface;
    const double tol = 10 * f.grid.spacing() * f.grid.spacing();
    const BipolarCharacterization c = verify_bipolar_characterization(f, tol);
    CHECK(c.gamma_vanishes);
    CHECK(c.reflection_found);
    CHECK(c.consistent);
    REQUIRE(c.reflection.has_value());
    CHECK(c.reflection->det == doctest::Approx(-1.0));
    CHECK(c.omega_gap < tol);
    CHECK(c.max_gamma < tol);
}

TEST_CASE("bipolar characterization rejects a full surface")
{
    SampledSurface f = adapt_coordinate(bipolar(conformalize_lawson(2, 1, 64, 64))).surface;
    const FrameField F = build_frame(f);
    const NotFullReport n = fullness(f, F);
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j) {
            RealVec6& v = f.values[f.grid.index(i, j)];
            v += 0.5 * std::sin(2 * M_PI * i / f.grid.nx) * std::cos(4 * M_PI * j / f.grid.ny) * n.normal;
            v.normalize();
        }
    const BipolarCharacterization c = verify_bipolar_characterization(f, 10 * f.grid.spacing() * f.grid.spacing());
    INFO("max gamma ", c.max_gamma, " reflection fit ", c.reflection_fit);
    CHECK(c.max_gamma > 0.1);
    CHECK(c.reflection_fit > 0.1);
    CHECK_FALSE(c.gamma_vanishes);
    CHECK_FALSE(c.reflection_found);
    CHECK(c.consistent);
}
