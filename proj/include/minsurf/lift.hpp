#pragma once

#include "minsurf/bipolar.hpp"

#include <array>
#include <vector>

namespace minsurf {

/// lambda = 2 / (e^w + e^w+ + 2 cos t R), z^2_21 = lambda sin t R,
/// z^3_12 = lambda (e^w - e^w+) / 2 with R = sqrt(e^{w + w+} - 1).
struct LiftCoefficients {
    double t = 0.0;
    ScalarField lambda, z12_3, z21_2;
    double t_min = 0.0, t_max = M_PI; // admissible open interval over the masked points
};

/// Throws InadmissibleT if t lies outside the admissible interval, or lambda <= 0
/// or z^2_21 <= 0 at a masked point.
LiftCoefficients lift_coefficients(const ScalarField& omega, const ScalarField& omega_plus, double t,
                                   const Mask* mask = nullptr);

/// Orthonormal frame U1..U6 over the masked points of I x S at one t, built from
/// f (frame F) and g = f^+ (frame G). U2 = g, U4 = f.
struct LiftFrame {
    double t = 0.0;
    Grid2 grid;
    Mask mask;                       // points with e^{w + w+} > 1 where U is defined
    std::array<RealVectorField, 6> U;
    VectorField U13, U56;            // U1 + i U3, U5 + i U6
    VectorField U13_t, U56_t;        // exact t-derivatives
    ScalarField lambda_, z12_3, z21_2, C;
    ComplexField f1g1;               // (f1, g1); the construction needs -i
};

LiftFrame build_U(const FrameField& F, const FrameField& G, double t, const Mask* mask = nullptr);

/// max |Gram(U) - I| and max |vol(U) - 1| over the lift mask.
double lift_gram_residual(const LiftFrame& L);
double lift_volume_residual(const LiftFrame& L);

/// omega_1 and the functions extracted from the projections of d(U1 + i U3).
struct LiftForms {
    ComplexField omega1_dbar;  // omega_1(dbar); omega_1(d/dt) = -1/2
    double omega1_dt = -0.5;
    ComplexField c_lift;       // c = -b_lift - i a_lift
    ScalarField a_lift, b_lift, z22_3, z32_3;
    // printed identities, max over the mask
    double dt_projection = 0.0;   // |(d(U1+iU3), U5-iU6)(d/dt) - i lambda|
    double dt_z12 = 0.0;          // |(dU13,U13*)(d/dt) - (dU56,U56*)(d/dt) + 2i z12_3|
    double dbar_projection = 0.0; // |(d(U1+iU3), U5-iU6)(dbar) + 2i lambda omega_1(dbar)|
    double omega1_sum = 0.0;      // |(dU13,U13*) + (dU56,U56*) - 4i omega_1| on d/dt and dbar
    double defining_g = 0.0;      // |dU2(e2 - i e3) - 2 sqrt(lambda) g1|
    double defining_f = 0.0;      // |dU4(e2 - i e3) - 2 sqrt(lambda) f1|

    double max_identity() const { return std::max({dt_projection, dt_z12, dbar_projection, omega1_sum}); }
};

/// `tol` > 0 throws StructureViolation naming the first identity above it.
LiftForms omega_forms(const LiftFrame& L, const FrameField& F, const FrameField& G, double tol = 0.0);

/// Deviations of the lift data from the bipolar specialization, with
/// eta = acosh(e^omega) >= 0, in the order lambda, z21, z12, omega_1, omega_2,
/// omega_3, b, a, z32, z22. omega_1 covers both omega_1(d/dt) = -1/2 and
/// omega_1(dbar) = 0; omega_2 and omega_3 are measured through the defining
/// relations of U2 and U4 along e2 = sqrt(lambda) d/dx, e3 = sqrt(lambda) d/dy.
struct BipolarSpecialization {
    std::array<double, 10> residual{};
    static const char* name(int i);
    double max() const { return *std::max_element(residual.begin(), residual.end()); }
};

BipolarSpecialization bipolar_specialization(const LiftFrame& L, const LiftForms& W, const FrameField& F);

/// t-samples: `count` uniform points strictly inside (t_min, t_max).
std::vector<double> t_grid(double t_min, double t_max, int count);

/// F = G1 cos(t/2) + i G2 sin(t/2) and the residuals of its system.
struct HorizontalLiftReport {
    double t = 0.0;
    double Ftt = 0.0;                  // |F_tt + F/4|
    std::array<double, 5> system{};    // F_tx, F_ty, F_xx, F_xy, F_yy equations
    double unit = 0.0;                 // ||F| - 1|
    double horizontal = 0.0;           // |<F_t, F>| (hermitian)
    double complex_form = 0.0;         // |(1/(i sqrt2))(F ^ -2F_t - lambda F_x ^ F_y) - phase * include(G1 ^ G2)|
    Complex phase{1.0, 0.0};
    double max_system() const { return *std::max_element(system.begin(), system.end()); }
};

struct BipolarLift {
    std::vector<HorizontalLiftReport> per_t;
    S3Report s3;                       // includes G2_u, G2_v relations
    ComplexFormCheck complex_form;     // complex form of the bipolar against include_complex
    Field<ComplexVec4> F_at(double t) const;
    S3Surface source;
};

BipolarLift bipolar_lift(const S3Surface& s, const std::vector<double>& ts);

} // namespace minsurf
