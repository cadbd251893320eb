#include "minsurf/catalog.hpp"
#include "minsurf/lift.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

struct LawsonPair {
    SampledSurface f;
    FrameField F, G;
    Mask mask;
};

const LawsonPair& lawson_pair()
{
    static const LawsonPair p = [] {
        LawsonPair out;
        out.f = adapt_coordinate(bipolar(conformalize_lawson(2, 1, 64, 64))).surface;
        out.F = build_frame(out.f);
        const SampledSurface fp = transform(out.f, out.F, 1);
        out.G = build_frame(fp);
        out.mask = coupling_mask(symmetric_invariants(out.F, fp), 0.5);
        return out;
    }();
    return p;
}

} // namespace

TEST_CASE("lift coefficients")
{
    ScalarField omega, omega_plus;
    for (double e : {1.1, 1.5, 2.0, 3.0})
        for (double ep : {1.2, 2.5}) {
            omega.push_back(std::log(e));
            omega_plus.push_back(std::log(ep));
        }
    for (double t : {0.3, 1.0, 2.0}) {
        const LiftCoefficients c = lift_coefficients(omega, omega_plus, t);
        for (std::size_t k = 0; k < omega.size(); ++k) {
            const double e = std::exp(omega[k]), ep = std::exp(omega_plus[k]), R = std::sqrt(e * ep - 1.0);
            const double il = 1.0 / c.lambda[k];
            // (1/lambda - R cos t)^2 - (z12/lambda)^2 = e^{w + w+}
            const double lhs = (il - R * std::cos(t)) * (il - R * std::cos(t)) - std::pow(c.z12_3[k] * il, 2);
            CHECK(lhs == doctest::Approx(e * ep).epsilon(1e-12));
            CHECK(c.z21_2[k] * il == doctest::Approx(R * std::sin(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("lift coefficients at t = pi/2 for omega = omega^+")
{
    ScalarField eta = {0.2, 0.7, 1.3}, omega;
    for (double x : eta) omega.push_back(std::log(std::cosh(x)));
    const LiftCoefficients c = lift_coefficients(omega, omega, M_PI / 2);
    for (std::size_t k = 0; k < eta.size(); ++k) {
        CHECK(c.lambda[k] == doctest::Approx(1.0 / std::cosh(eta[k])).epsilon(1e-12));
        CHECK(c.z21_2[k] == doctest::Approx(std::tanh(eta[k])).epsilon(1e-12));
        CHECK(std::abs(c.z12_3[k]) < 1e-15);
    }
}

TEST_CASE("inadmissible t")
{
    const ScalarField omega = {0.5, 0.6}, omega_plus = {0.5, 0.4};
    for (double t : {0.0, -0.2, M_PI, 4.0}) {
        try {
            lift_coefficients(omega, omega_plus, t);
            FAIL("expected InadmissibleT");
        } catch (const GeometryError& e) {
            CHECK(e.kind() == ErrorKind::InadmissibleT);
        }
    }
    const std::vector<double> ts = t_grid(0.0, M_PI, 3);
    CHECK(ts == std::vector<double>{M_PI / 4, M_PI / 2, 3 * M_PI / 4});
}

TEST_CASE("lift frame of the Lawson bipolar")
{
    const LawsonPair& p = lawson_pair();
    const double h = p.f.grid.spacing();
    for (double t : {0.5, M_PI / 2, 2.5}) {
        const LiftFrame L = build_U(p.F, p.G, t, &p.mask);
        CHECK(mask_count(L.mask) > 0);
        CHECK(lift_gram_residual(L) < 10 * h);
        CHECK(lift_volume_residual(L) < 10 * h);
        for (int k = 0; k < p.f.grid.size(); ++k) {
            if (!L.mask[k]) continue;
            CHECK(std::abs(L.f1g1[k] - Complex(0.0, -1.0)) < 10 * h);
            CHECK((L.U[1][k] - p.G.f0[k]).norm() == 0.0);
            CHECK((L.U[3][k] - p.F.f0[k]).norm() == 0.0);
        }
        const LiftForms W = omega_forms(L, p.F, p.G);
        CHECK(W.max_identity() < 10 * h);
        CHECK(W.defining_f < 1e-12);
        CHECK(W.defining_g < 1e-12);
        const BipolarSpecialization S = bipolar_specialization(L, W, p.F);
        CHECK(S.max() < 10 * h);
    }
}

TEST_CASE("t-derivatives of the lift frame match differences in t")
{
    const LawsonPair& p = lawson_pair();
    const double t = 1.2, dt = 1e-5;
    const LiftFrame L = build_U(p.F, p.G, t, &p.mask);
    const LiftFrame Lp = build_U(p.F, p.G, t + dt, &p.mask);
    const LiftFrame Lm = build_U(p.F, p.G, t - dt, &p.mask);
    for (int k = 0; k < p.f.grid.size(); ++k) {
        if (!L.mask[k]) continue;
        CHECK((L.U13_t[k] - (Lp.U13[k] - Lm.U13[k]) / (2 * dt)).norm() < 1e-7);
        CHECK((L.U56_t[k] - (Lp.U56[k] - Lm.U56[k]) / (2 * dt)).norm() < 1e-7);
    }
}

TEST_CASE("horizontal lift of the Clifford torus")
{
    const S3Surface s = clifford_torus(48, 48);
    const BipolarLift lift = bipolar_lift(s, {0.4, 1.5, 2.8});
    const double h = s.grid().spacing();
    REQUIRE(lift.per_t.size() == 3);
    for (const HorizontalLiftReport& r : lift.per_t) {
        CHECK(r.unit < 1e-14);
        CHECK(r.horizontal < 1e-14);
        CHECK(r.Ftt < 1e-14);
        CHECK(r.max_system() < 10 * h * h);
        CHECK(r.complex_form < 10 * h * h);
    }
    const Field<ComplexVec4> F = lift.F_at(0.0);
    for (std::size_t k = 0; k < F.size(); ++k) CHECK((F[k] - s.G1.values[k].cast<Complex>()).norm() < 1e-15);
}
