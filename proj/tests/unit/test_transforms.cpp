#include "minsurf/bipolar.hpp"
#include "minsurf/catalog.hpp"
#include "minsurf/transforms.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

const SampledSurface& lawson_bipolar()
{
    static const SampledSurface f = adapt_coordinate(bipolar(conformalize_lawson(2, 1, 64, 64))).surface;
    return f;
}

Matrix6d random_rotation(int seed)
{
    std::srand(seed);
    Matrix6d Q = Eigen::HouseholderQR<Matrix6d>(Matrix6d::Random()).householderQ();
    if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
    return Q;
}

// generic surface off the great S^4: push f along the normal of its span
SampledSurface full_perturbation(const SampledSurface& f, const RealVec6& n)
{
    SampledSurface out = f;
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j) {
            RealVec6& v = out.values[f.grid.index(i, j)];
            v += 0.2 * std::sin(2 * M_PI * i / f.grid.nx) * n;
            v.normalize();
        }
    return out;
}

} // namespace

TEST_CASE("transforms are unit and orthogonal to the surface")
{
    const SampledSurface& f = lawson_bipolar();
    const FrameField F = build_frame(f);
    for (int eps : {1, -1}) {
        const SampledSurface fe = transform(f, F, eps);
        for (int k = 0; k < f.grid.size(); ++k) {
            CHECK(std::abs(fe.values[k].norm() - 1.0) < 1e-12);
            CHECK(std::abs(fe.values[k].dot(f.values[k])) < 1e-10);
        }
        // N and -b/|b| are the components along the frame
        for (int k = 0; k < f.grid.size(); k += 31)
            CHECK(fe.values[k].dot(F.N[k]) == doctest::Approx(eps * std::tanh(F.phi[k])));
    }
    CHECK_THROWS_AS(transform(f, F, 0), GeometryError);
}

TEST_CASE("closed-form jet of the transform agrees with differentiation")
{
    const SampledSurface& f = lawson_bipolar();
    const FrameField F = build_frame(f);
    const Mask M = regular_mask(F, 0.25);
    for (int eps : {1, -1}) {
        const EpsilonJet J = epsilon_jet(F, eps);
        const VectorField d = wirtinger_d(f.grid, J.f_eps.values);
        double err = 0.0;
        for (int k = 0; k < f.grid.size(); ++k)
            if (M[k]) err = std::max(err, (d[k] - J.f1_eps[k]).norm());
        CHECK(err < 10 * f.grid.spacing());
        double om = 0.0;
        for (int k = 0; k < f.grid.size(); ++k)
            if (M[k]) om = std::max(om, std::abs(std::log(d[k].squaredNorm()) - J.omega_eps[k]));
        CHECK(om < 10 * f.grid.spacing());
    }
}

TEST_CASE("B-frame of a surface and its transform")
{
    const SampledSurface& f = lawson_bipolar();
    const FrameField F = build_frame(f);
    for (int eps : {1, -1}) {
        const SampledSurface fe = transform(f, F, eps);
        const SymmetricInvariants si = symmetric_invariants(F, fe);
        const Mask M = coupling_mask(si, 0.25);
        CHECK(mask_count(M) > 0);
        const SymmetricFrameReport rep = symmetric_frame(F, fe, eps, &M);
        CHECK(rep.gram_B < 10 * f.grid.spacing());
        CHECK(max_abs(rep.det_B, &M) < 10 * f.grid.spacing());
        CHECK(max_abs(rep.volume, &M) < 10 * f.grid.spacing());
    }
}

TEST_CASE("bipolar surface lies in a great S^4 and the sequence reflects through it")
{
    const SampledSurface& f = lawson_bipolar();
    TransformSequence seq(f);
    const auto rep = detect_not_full(seq, 0, 10 * f.grid.spacing());
    REQUIRE(rep.has_value());
    CHECK(rep->not_full);
    CHECK(rep->singular_values(5) < 1e-12);
    CHECK(std::abs(rep->normal.norm() - 1.0) < 1e-12);
    for (const auto& v : f.values) CHECK(std::abs(v.dot(rep->normal)) < 1e-12);
    CHECK(rep->reflection_residual < 10 * f.grid.spacing() * f.grid.spacing());
}

TEST_CASE("a full surface is not reported as lying in S^4")
{
    const SampledSurface& f = lawson_bipolar();
    const FrameField F = build_frame(f);
    const NotFullReport base = fullness(f, F);
    const SampledSurface g = full_perturbation(f, base.normal);
    TransformSequence seq(g);
    const NotFullReport full = fullness(g, seq.frame(0));
    CHECK_FALSE(full.not_full);
    CHECK(full.singular_values(5) > 1e-3);
    CHECK_FALSE(detect_not_full(seq, 0, 1e-6).has_value());
}

TEST_CASE("gamma reflection of the bipolar transform")
{
    const SampledSurface& f = lawson_bipolar();
    const FrameField F = build_frame(f);
    const FrameField G = build_frame(transform(f, F, 1));
    const Mask M = regular_mask(F, 0.25);
    const auto rep = detect_gamma_reflection(F, G, 10 * f.grid.spacing() * f.grid.spacing(), &M);
    REQUIRE(rep.has_value());
    CHECK(rep->det == doctest::Approx(-1.0));
    CHECK(rep->involution_defect < 1e-12);
    CHECK(rep->residual < 10 * f.grid.spacing());

    // rotating the transform destroys gamma = 0
    const SampledSurface rotated = apply_linear(random_rotation(3), transform(f, F, 1));
    const FrameField R = build_frame(rotated);
    CHECK(max_abs(gamma(F, rotated)) > 0.1);
    CHECK_FALSE(detect_gamma_reflection(F, R, 10 * f.grid.spacing() * f.grid.spacing(), &M).has_value());
}

TEST_CASE("nearest involution and reversing procrustes")
{
    Matrix6d D = Matrix6d::Identity();
    D(0, 0) = D(3, 3) = D(4, 4) = -1.0;
    const Matrix6d Q = random_rotation(11);
    const Matrix6d A = Q * D * Q.transpose();
    Matrix6d noisy = A;
    noisy(1, 2) += 1e-4;
    const Matrix6d B = nearest_involution(noisy);
    CHECK((B * B - Matrix6d::Identity()).norm() < 1e-12);
    CHECK((B - A).norm() < 1e-3);

    RealVectorField src(40), dst(40);
    for (int k = 0; k < 40; ++k) {
        src[k] = RealVec6::Random();
        dst[k] = A * src[k];
    }
    const Matrix6d P = reversing_procrustes(src, dst);
    CHECK(P.determinant() == doctest::Approx(-1.0));
    CHECK((P - A).norm() < 1e-10);
}

TEST_CASE("transforms commute with isometries up to the sign of eps")
{
    const SampledSurface& f = lawson_bipolar();
    Matrix6d A = Matrix6d::Identity();
    A(0, 0) = -1.0;
    CHECK(reflection_equivariance(f, A) < 1e-12);

    // orientation preserving isometries keep eps
    const Matrix6d R = random_rotation(5);
    const FrameField F = build_frame(f);
    const SampledSurface Rf = apply_linear(R, f);
    const SampledSurface lhs = transform(Rf, build_frame(Rf), 1);
    const SampledSurface rhs = apply_linear(R, transform(f, F, 1));
    CHECK(max_abs(pointwise_distance(lhs, rhs)) < 1e-10);
}

TEST_CASE("sequence relations and congruences")
{
    const SampledSurface& f = lawson_bipolar();
    const std::vector<SequenceEntry> seq = sequence(f, -1, 1);
    REQUIRE(seq.size() == 3);
    CHECK(seq[1].p == 0);
    double pair = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int k = 0; k < f.grid.size(); ++k)
            pair = std::max(pair, std::abs(seq[p + 1].delta_prev[k] + seq[p].gamma_next[k]));
    CHECK(pair < 10 * f.grid.spacing() * f.grid.spacing());

    TransformSequence s(f);
    const CongruenceReport even = classify_congruence(s, -1, 1);
    CHECK(even.parity == 0);
    CHECK(even.det == doctest::Approx(-1.0));
    CHECK(even.procrustes < 10 * f.grid.spacing());
    CHECK(even.alpha_index == 0);

    const CongruenceReport odd = classify_congruence(s, 0, 1);
    CHECK(odd.parity == 1);
    CHECK(odd.procrustes < 10 * f.grid.spacing());
    CHECK(odd.gamma_index == 0);
}
