#pragma once

#include "minsurf/transforms.hpp"

#include <array>
#include <optional>

namespace minsurf {

/// Structure equations of a minimal surface G1 in S^3 with unit normal G2 and
/// metric e^eta |dw|^2, w = u + i v the grid coordinate:
///   G1_uu = eta_u/2 G1_u - eta_v/2 G1_v + G2 - e^eta G1
///   G1_uv = eta_v/2 G1_u + eta_u/2 G1_v
///   G1_vv = -eta_u/2 G1_u + eta_v/2 G1_v - G2 - e^eta G1
/// together with G2_u = -e^-eta G1_u and G2_v = e^-eta G1_v.
struct S3Report {
    std::array<double, 3> structure{}; // uu, uv, vv equations
    double normal_u = 0.0;             // |G2_u + e^-eta G1_u|
    double normal_v = 0.0;             // |G2_v - e^-eta G1_v|
    double unit = 0.0;                 // |G1| - 1, |G2| - 1, (G1, G2)
    double metric = 0.0;               // |G1_u|^2 - e^eta, |G1_v|^2 - e^eta, (G1_u, G1_v)
    double quartic = 0.0;              // |(II(d,d), II(d,d)) - 1/4|
    int orientation = 1;               // sign det[G1, G1_u, G1_v, G2] (majority)

    double max_structure() const { return std::max({structure[0], structure[1], structure[2]}); }
};

S3Report check_s3_minimal(const S3Surface& s, const Mask* mask = nullptr);

/// Lawson's bipolar surface G1 ^ G2 in Lambda^2 R^4 = R^6.
SampledSurface bipolar(const S3Surface& s);

/// Compares (1/sqrt2)(i e^-eta G1_u ^ G1_v - G1 ^ G2) with the complexified
/// bipolar (w - i sigma *w)/sqrt2 up to one global complex phase.
struct ComplexFormCheck {
    Complex phase{1.0, 0.0};
    double residual = 0.0;
    int orientation = 1;
};

ComplexFormCheck bipolar_complex_form(const S3Surface& s);

struct BipolarCharacterization {
    double max_gamma = 0.0;
    bool gamma_vanishes = false;           // gamma^+ = 0
    bool bipolar_by_provenance = false;    // f = bipolar(.), known only from how f was made
    double reflection_fit = 0.0;           // max |f^+ - A f| for the best orientation reversing A
    bool reflection_found = false;         // f^+ = A f for a constant reflection A
    std::optional<GammaReflection> reflection;
    double omega_gap = 0.0;                // max |omega - omega^+|
    bool consistent = false;               // gamma_vanishes == reflection_found
};

/// f must be sampled in an adapted coordinate. `tol` bounds both max|gamma^+|
/// and the reflection residual; `mask_fraction` selects where pointwise A(z) is formed.
BipolarCharacterization verify_bipolar_characterization(const SampledSurface& f, double tol,
                                                        double mask_fraction = 0.25, const FrameOptions& opts = {});

} // namespace minsurf
