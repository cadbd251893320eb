#include "minsurf/bipolar.hpp"
#include "minsurf/catalog.hpp"
#include "minsurf/frames.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

SampledSurface lawson_bipolar(int n)
{
    return adapt_coordinate(bipolar(conformalize_lawson(2, 1, n, n))).surface;
}

// (cos a e^{ix}, sin a e^{iy}, 0, 0) in C^3 = R^6
SampledSurface flat_torus(int n, double a)
{
    SampledSurface f;
    f.grid.nx = f.grid.ny = n;
    f.grid.lx = f.grid.ly = 2 * M_PI;
    f.values.resize(f.grid.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = f.grid.x(i), y = f.grid.y(j);
            f.values[f.grid.index(i, j)] << std::cos(a) * std::cos(x), std::cos(a) * std::sin(x),
                std::sin(a) * std::cos(y), std::sin(a) * std::sin(y), 0.0, 0.0;
        }
    return f;
}

} // namespace

TEST_CASE("adaptation only relabels the coordinate")
{
    const SampledSurface f = lawson_bipolar(64);
    const AdaptedSurface again = adapt_coordinate(f);
    CHECK(std::abs(again.mu - 1.0) < 1e-3);
    CHECK(again.surface.values == f.values);

    SampledSurface g = f;
    g.grid.mu *= 0.5;
    const AdaptedSurface back = adapt_coordinate(g);
    CHECK(std::abs(back.mu - 2.0) < 2e-3);
    CHECK(std::abs(back.surface.grid.mu - f.grid.mu) < 2e-3 * std::abs(f.grid.mu));
    CHECK(back.Q_spread < 0.1);

    // mu^4 = -mean Q
    CHECK(std::abs(std::pow(back.mu, 4) + back.mean_Q) < 1e-12 * std::abs(back.mean_Q));
}

TEST_CASE("frame of the Lawson bipolar")
{
    const SampledSurface f = lawson_bipolar(64);
    const FrameField F = build_frame(f);
    const double h2 = f.grid.spacing() * f.grid.spacing();
    const Mask M = regular_mask(F, 0.25);
    CHECK(mask_count(M) > 0);

    CHECK(normal_orthogonality(F) < 1e-10);
    for (const auto& N : F.N) CHECK(std::abs(N.norm() - 1.0) < 1e-12);
    CHECK(gram_residual(F, &M) < 10 * h2 * 10);
    CHECK(axis_identity_residual(F, &M) < 10 * h2 * 10);
    CHECK(max_abs(volume_identity_residual(F), &M) < 10 * h2 * 10);
    CHECK(frame_equation_residual(F, &M).max() < 10 * std::sqrt(h2));

    // det(f0, f1, conj f1, f2, conj f2, N) of the Gram form is -e^omega sinh 2phi
    for (int k = 0; k < f.grid.size(); k += 97) {
        if (!M[k]) continue;
        const Complex det = frame_matrix(F, k).determinant();
        CHECK(std::abs(det + std::exp(F.omega[k]) * std::sinh(2 * F.phi[k])) < 0.05);
    }

    // reversing N breaks the volume identity but not the Gram matrix
    FrameField flipped = F;
    for (auto& N : flipped.N) N = -N;
    CHECK(gram_residual(flipped, &M) == doctest::Approx(gram_residual(F, &M)));
    CHECK(max_abs(volume_identity_residual(flipped), &M) > 0.1);
}

TEST_CASE("ellipse eccentricity is sech phi")
{
    const SampledSurface f = lawson_bipolar(64);
    const FrameField F = build_frame(f);
    const EllipseReport e = classify_ellipse(f);
    CHECK(e.classification == EllipseClass::nondegenerate_noncircular);
    const ScalarField ecc = F.eccentricity();
    const Mask M = regular_mask(F, 0.25);
    for (int k = 0; k < f.grid.size(); ++k) {
        CHECK(e.eccentricity[k] == doctest::Approx(ecc[k]).epsilon(1e-12));
        if (!M[k]) continue;
        // axes 2 sinh phi and 2 cosh phi, so minor/major = tanh phi
        CHECK(std::sqrt(1.0 - e.axis_ratio[k] * e.axis_ratio[k]) == doctest::Approx(ecc[k]).epsilon(0.05));
        CHECK(std::abs(e.major_axis[k].dot(e.minor_axis[k])) < 0.1);
    }
}

TEST_CASE("Clifford bipolar has a segment as its ellipse of curvature")
{
    const SampledSurface f = bipolar(clifford_torus(32, 32));
    const EllipseReport e = classify_ellipse(f);
    CHECK(e.classification == EllipseClass::segment);
    try {
        build_frame(adapt_coordinate(f).surface);
        FAIL("expected DegenerateEllipse");
    } catch (const GeometryError& err) {
        CHECK(err.kind() == ErrorKind::DegenerateEllipse);
    }
}

TEST_CASE("minimality and conformality detect non-examples")
{
    const SampledSurface clifford = flat_torus(64, M_PI / 4);
    CHECK(takahashi_residual(clifford).residual < 1e-2);
    CHECK(max_abs(conformal_defect(clifford)) < 1e-12);

    // conformal but not minimal: (cos a e^{ix}, sin a e^{iy cot a})
    const double a = 0.5;
    SampledSurface skew = flat_torus(64, a);
    skew.grid.ly = 2 * M_PI * std::tan(a);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const double x = skew.grid.x(i), y = skew.grid.y(j) / std::tan(a);
            skew.values[skew.grid.index(i, j)] << std::cos(a) * std::cos(x), std::cos(a) * std::sin(x),
                std::sin(a) * std::cos(y), std::sin(a) * std::sin(y), 0.0, 0.0;
        }
    CHECK(max_abs(conformal_defect(skew)) < 1e-3);
    CHECK(takahashi_residual(skew).residual > 0.05);

    SampledSurface stretched = flat_torus(64, M_PI / 4);
    stretched.grid.ly *= 1.5;
    CHECK(max_abs(conformal_defect(stretched)) > 0.05);
}

TEST_CASE("Takahashi function is the conformal factor")
{
    const SampledSurface f = lawson_bipolar(64);
    const FrameField F = build_frame(f);
    const MinimalityReport m = takahashi_residual(f);
    CHECK(m.residual < 10 * f.grid.spacing() * f.grid.spacing() * 10);
    // d dbar f = -(f1, conj f1) f for a minimal surface in S^5
    for (int k = 0; k < f.grid.size(); k += 53)
        CHECK(m.mu[k] == doctest::Approx(-std::exp(F.omega[k])).epsilon(0.02));
}

TEST_CASE("circular ellipse is rejected by adaptation")
{
    // equilateral flat torus (e^{i p1}, e^{i p2}, e^{i p3})/sqrt3 with p1 + p2 + p3 = 0
    SampledSurface f;
    const int n = 128;
    f.grid.nx = f.grid.ny = n;
    f.grid.order = 4;
    f.grid.lx = 4 * M_PI;
    f.grid.ly = 4 * M_PI / std::sqrt(3.0);
    f.values.resize(f.grid.size());
    const double s3 = std::sqrt(3.0), r = 1.0 / s3;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = f.grid.x(i), y = f.grid.y(j);
            const double p1 = x, p2 = -x / 2 + s3 * y / 2, p3 = -x / 2 - s3 * y / 2;
            f.values[f.grid.index(i, j)] << r * std::cos(p1), r * std::sin(p1), r * std::cos(p2), r * std::sin(p2),
                r * std::cos(p3), r * std::sin(p3);
        }
    CHECK(max_abs(conformal_defect(f)) < 1e-6);
    try {
        adapt_coordinate(f);
        FAIL("expected CircularEllipse");
    } catch (const GeometryError& err) {
        CHECK(err.kind() == ErrorKind::CircularEllipse);
    }
}
