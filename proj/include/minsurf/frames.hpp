#pragma once

#include "minsurf/surface.hpp"

#include <array>

namespace minsurf {

/// First and second order data of a surface in S^5: f1 = d f, the full d f1
/// and f2 = the part of d f1 orthogonal to f0, f1, conj f1.
struct SecondOrderData {
    RealVectorField f0;
    VectorField f1;
    VectorField d_f1;
    VectorField f2;
    ComplexField Q; // (f2, f2)
};

SecondOrderData second_order_data(const SampledSurface& f);

/// |(f1, f1)| per point.
ScalarField conformal_defect(const SampledSurface& f);

struct AdaptedSurface {
    SampledSurface surface;
    Complex mu;        // applied scale, w_new = mu * w_old
    Complex mean_Q;    // (f2, f2) before adaptation
    double Q_spread;   // stddev(Q) / |mean Q|
};

/// Relabels the coordinate w -> mu w with mu^4 = -mean(Q) (principal root) so
/// that (f2, f2) = -1. The samples are untouched; only grid.mu changes.
AdaptedSurface adapt_coordinate(const SampledSurface& f, double spread_threshold = 0.1,
                                double circular_fraction = 1e-4);

struct FrameOptions {
    double degenerate_factor = 10.0;      // sinh phi < factor * h^2 * max|b| is degenerate
    double circular_fraction = 1e-4;      // |mean Q| < fraction * max|f2|^2 is a circle
    double max_degenerate_fraction = 0.5; // more degenerate points than this rejects the surface
};

struct FrameField {
    Grid2 grid;
    RealVectorField f0;
    VectorField f1;
    VectorField f2;
    RealVectorField a, b; // f2 = a - i b
    RealVectorField N;
    ScalarField omega; // log (f1, conj f1)
    ScalarField phi;   // asinh |a|
    ScalarField theta; // cos theta = tanh phi
    ComplexField alpha; // (d f2, N)
    ComplexField Q;
    Mask nondegenerate;
    double degenerate_fraction = 0.0;

    ScalarField eccentricity() const;
};

/// Adapted moving frame. N = -cross5(f0, Re f1, Im f1, a, b)/|.| so that
/// vol(f0, f1, conj f1, f2, conj f2, N) = -e^omega sinh 2phi.
FrameField build_frame(const SampledSurface& f, const FrameOptions& opts = {});

/// Columns f0, f1, conj f1, f2, conj f2, N at sample k.
Matrix6c frame_matrix(const FrameField& F, int k);

/// max entrywise deviation of the Gram matrix from its prescribed form.
double gram_residual(const FrameField& F, const Mask* mask = nullptr);

/// |vol(f0, f1, conj f1, f2, conj f2, N) + e^omega sinh 2phi| per point.
ScalarField volume_identity_residual(const FrameField& F);

/// max |(N, v)| for v in {f0, Re f1, Im f1, a, b}.
double normal_orthogonality(const FrameField& F);

/// max of |(a,a) - (b,b) + 1| and |(a,b)|.
double axis_identity_residual(const FrameField& F, const Mask* mask = nullptr);

struct FrameEquationResidual {
    // d f0 = f1, d f1 = f2 + d omega f1, d conj f1 = -e^omega f0, d f2 = ..., d conj f2 = ..., d N = ...
    std::array<double, 6> eq{};
    double max() const { return *std::max_element(eq.begin(), eq.end()); }
};

FrameEquationResidual frame_equation_residual(const FrameField& F, const Mask* mask = nullptr);

struct MinimalityReport {
    double residual = 0.0; // max |d dbar f0 - mu f0|
    ScalarField mu;        // (d dbar f0, f0)
};

MinimalityReport takahashi_residual(const SampledSurface& f, const Mask* mask = nullptr);

enum class EllipseClass { nondegenerate_noncircular, circle, segment, point };
const char* to_string(EllipseClass c);

struct EllipseReport {
    EllipseClass classification = EllipseClass::point; // class of the majority of points
    std::vector<EllipseClass> per_point;
    std::array<double, 4> fractions{}; // in enum order
    ScalarField axis_ratio;            // minor / major
    ScalarField eccentricity;          // sech phi
    RealVectorField major_axis, minor_axis;
};

/// Samples psi -> 2(a cos 2psi + b sin 2psi) and classifies by its axis ratio.
EllipseReport classify_ellipse(const SampledSurface& f, const FrameOptions& opts = {});

/// Mask of points where sinh phi >= fraction * max sinh phi, eroded by the stencil reach.
Mask regular_mask(const FrameField& F, double fraction);

} // namespace minsurf
