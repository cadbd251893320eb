#pragma once

#include "minsurf/surface.hpp"

#include <optional>

namespace minsurf {

struct FrameField;

/// (omega, phi, alpha) of a surface in S^5.
struct InvariantTriple {
    Grid2 grid;
    ScalarField omega;
    ScalarField phi;
    ComplexField alpha;
};

/// (omega, omega^eps, gamma^eps) of a surface and one of its transforms.
struct SymmetricInvariants {
    Grid2 grid;
    ScalarField omega;
    ScalarField omega_eps;
    ComplexField gamma_eps;
};

InvariantTriple invariants_of(const FrameField& frame);

struct SystemFResidual {
    double alpha_eq = 0.0; // dbar alpha + 2 conj(alpha) d phi csch 2phi
    double omega_eq = 0.0; // dbar d omega + e^omega - e^-omega cosh 2phi
    double phi_eq = 0.0;   // 2 dbar d phi - |alpha|^2 csch 2phi + e^-omega sinh 2phi
    double max() const { return std::max({alpha_eq, omega_eq, phi_eq}); }
};

SystemFResidual residual_system_F(const InvariantTriple& t, const Mask* mask = nullptr);

struct SystemBResidual {
    double gamma_eq = 0.0;
    double omega_eq = 0.0;
    double omega_eps_eq = 0.0;
    double max() const { return std::max({gamma_eq, omega_eq, omega_eps_eq}); }
};

/// Throws PositivityViolation if omega + omega^eps < -positivity_tol at a masked point.
SystemBResidual residual_system_B(const SymmetricInvariants& s, const Mask* mask = nullptr,
                                  double positivity_tol = 0.0);

/// max |d dbar eta + sinh eta|.
double residual_sinh_gordon(const Grid2& grid, const ScalarField& eta, const Mask* mask = nullptr);

/// max |d dbar omega + 2 sinh omega - |d omega|^2 / (e^{2 omega} - 1)|, the
/// system for omega when gamma^+ = 0 and omega = omega^+.
double residual_reduced_omega(const Grid2& grid, const ScalarField& omega, const Mask* mask = nullptr);

/// eta >= 0 with e^omega = cosh eta. Throws SubstitutionDomain if e^omega < 1 - tol.
ScalarField substitute(const ScalarField& omega, double tol = 1e-8);

/// Generator of the moving frame X = [f0, f1, conj f1, f2, conj f2, N]:
/// d X = X P. The dbar generator is Pi conj(P) Pi with Pi swapping 1<->2 and 3<->4.
Matrix6c frame_generator(double omega, Complex d_omega, double phi, Complex d_phi, Complex alpha);
Matrix6c conjugate_generator(const Matrix6c& P);

/// X = E T for an orthonormal frame E = (e0..e5) with f1 = sqrt(e^w/2)(e1 - i e2),
/// f2 = sinh(phi) e3 - i cosh(phi) e4, N = e5. det T = -e^omega sinh 2phi.
Matrix6c frame_transfer(double omega, double phi);

struct IntegrationOptions {
    int i0 = 0;          // base column (x index)
    int j0 = 0;          // base row (y index)
    int rows_up = -1;    // rows integrated above j0 (-1: to the grid end, or ny-1 if periodic)
    int rows_down = -1;  // rows integrated below j0
    bool rows_first = true;
    int reproject_every = 16;
    double drift_tolerance = 5e-2;
};

struct FrameIntegration {
    SampledSurface surface;   // f0 track
    Mask valid;               // samples actually reached
    double holonomy = 0.0;    // |X(x0 + lx) - X(x0)| along the base row (periodic x only)
    double max_drift = 0.0;   // largest orthonormality defect seen before reprojection
};

/// Integrates dX = X(mu P + conj(mu) Q) dx + i X(mu P - conj(mu) Q) dy from the
/// frame X = E_seed T at the base point. E_seed defaults to the identity.
FrameIntegration integrate_frame_F(const InvariantTriple& t, const std::optional<Matrix6d>& seed = std::nullopt,
                                   const IntegrationOptions& opts = {});

struct S3Integration {
    S3Surface surface;
    Mask valid;
    double holonomy = 0.0;
    double max_drift = 0.0;
};

/// Integrates the structure equations of a minimal surface in S^3 with metric
/// e^eta |dw|^2 and (II(d,d), II(d,d)) = 1/4 for Y = [G1, G2, G1_u, G1_v].
/// `seed` holds the orthonormal frame [G1, G2, e^{-eta/2} G1_u, e^{-eta/2} G1_v]
/// at the base point (identity if omitted).
S3Integration integrate_s3_frame(const Grid2& grid, const ScalarField& eta,
                                 const std::optional<Eigen::Matrix4d>& seed = std::nullopt,
                                 const IntegrationOptions& opts = {});

/// Orthogonal R minimizing sum |R src_k - dst_k|^2 over masked samples.
Matrix6d procrustes(const RealVectorField& src, const RealVectorField& dst, const Mask* mask = nullptr);

} // namespace minsurf
