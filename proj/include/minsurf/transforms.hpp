#pragma once

#include "minsurf/frames.hpp"
#include "minsurf/integrability.hpp"

#include <map>
#include <optional>

namespace minsurf {

/// f^eps = -b / (cosh(phi) |b|) + eps tanh(phi) N, eps = +1 or -1.
SampledSurface transform(const SampledSurface& f, const FrameField& F, int eps);

/// Closed-form derivatives of the transform in terms of the frame of f.
struct EpsilonJet {
    int eps = 1;
    SampledSurface f_eps;
    VectorField f1_eps;     // d f^eps
    ScalarField omega_eps;  // log |f1^eps|^2
    VectorField d_f1_eps;   // d d f^eps
    VectorField f2_eps;     // d f1^eps - d omega^eps f1^eps
    ComplexField nu;
};

EpsilonJet epsilon_jet(const FrameField& F, int eps);

/// (d f1, f1^next) with f1 = d fp and f1^next = d fnext.
ComplexField gamma(const FrameField& Fp, const SampledSurface& fnext);

/// Invariants (omega, omega^eps, gamma^eps) of f and a transform, all from finite differences.
SymmetricInvariants symmetric_invariants(const FrameField& F, const SampledSurface& f_eps);

/// Frame B = (f0, f1, conj f1, conj f1^eps, f1^eps, f0^eps) of a surface and its transform.
struct SymmetricFrameReport {
    double gram_B = 0.0;       // max entrywise deviation of the Gram matrix from its prescribed form
    ComplexField gamma_eps;
    ScalarField omega_eps;
    ScalarField det_B;         // |det Gram - (e^{omega + omega^eps} - 1)^2|
    ScalarField volume;        // |vol(B) + eps (e^{omega + omega^eps} - 1)|
    double min_omega_sum = 0.0;
};

SymmetricFrameReport symmetric_frame(const FrameField& F, const SampledSurface& f_eps, int eps,
                                     const Mask* mask = nullptr);

/// |e^{omega^eps} |gamma^eps - i d omega^eps|^2 / (e^{omega + omega^eps} - 1) - 2 sinh^2 phi^eps|.
double sinh_phi_identity_residual(const FrameField& F, const SampledSurface& f_eps, const Mask* mask = nullptr);

/// Mask where e^{omega + omega^eps} - 1 >= fraction * max, eroded by the stencil reach.
Mask coupling_mask(const SymmetricInvariants& s, double fraction);

struct SequenceEntry {
    int p = 0;
    SampledSurface surface;
    FrameField frame;
    InvariantTriple invariants;
    ComplexField gamma_next; // (d f1^p, f1^{p+1})
    ComplexField delta_prev; // (d f1^p, f1^{p-1})
};

class SequenceBreak : public GeometryError {
public:
    SequenceBreak(int index, const GeometryError& cause)
        : GeometryError(cause.kind(), "sequence entry " + std::to_string(index) + ": " + cause.what()),
          index_(index)
    {
    }
    int index() const { return index_; }

private:
    int index_;
};

/// Lazily built sequence f^0 = f, f^{p+1} = (f^p)^+, f^{p-1} = (f^p)^-.
/// Entries are cached; each one is computed once.
class TransformSequence {
public:
    explicit TransformSequence(SampledSurface f, FrameOptions opts = {});

    const SampledSurface& surface(int p);
    const FrameField& frame(int p);
    SequenceEntry entry(int p);

private:
    FrameOptions opts_;
    std::map<int, SampledSurface> surfaces_;
    std::map<int, FrameField> frames_;
};

/// Entries pmin..pmax (pmin <= 0 <= pmax). Throws SequenceBreak with the failing index.
std::vector<SequenceEntry> sequence(const SampledSurface& f, int pmin, int pmax, const FrameOptions& opts = {});

/// Real orthogonal reflection A with A^2 = I from an approximate one: nearest
/// orthogonal matrix, then eigenvalues of its symmetric part rounded to +-1.
Matrix6d nearest_involution(const Matrix6d& A);

struct NotFullReport {
    bool not_full = false;
    double max_alpha = 0.0;
    Vec6<double> singular_values;   // of the sample cloud, descending
    RealVec6 normal;                // spans the complement of the sample span
    Matrix6d reflection;            // I - 2 n n^T
    double reflection_residual = 0.0; // max |f^{q+1} - A f^{q-1}|
};

/// alpha = 0 and rank < 6 of f^q; if both hold, checks the reflection in the great S^4.
std::optional<NotFullReport> detect_not_full(TransformSequence& seq, int q, double alpha_tol,
                                             double rank_tol = 1e-8);
/// Fullness data of a single surface without the transform check.
NotFullReport fullness(const SampledSurface& f, const FrameField& F, double rank_tol = 1e-8);

struct GammaReflection {
    Matrix6d A;                 // involution projected from the fit
    double fit_defect = 0.0;    // ||R^2 - I|| of the nearest orthogonal matrix R to the raw fit
    double involution_defect = 0.0; // ||A^2 - I||
    double det = 0.0;
    double max_gamma = 0.0;
    double z_deviation = 0.0;   // max over masked points of |A(z) - A|
    double residual = 0.0;      // max |f^{q+1} - A f^q|
    double omega_gap = 0.0;     // max |omega^q - omega^{q+1}|
};

/// If max|gamma^{q+1}| < tol, reconstructs the orientation reversing isometry
/// exchanging (f0, f1, conj f1) of f^q and f^{q+1}.
std::optional<GammaReflection> detect_gamma_reflection(const FrameField& Fq, const FrameField& Fq1, double tol,
                                                       const Mask* mask = nullptr);

/// max |(A f)^eps - A f^{-eps}| over both eps for an orientation reversing isometry A.
double reflection_equivariance(const SampledSurface& f, const Matrix6d& A, const FrameOptions& opts = {});

/// Orthogonal A with det A = -1 minimizing sum |A src_k - dst_k|^2.
Matrix6d reversing_procrustes(const RealVectorField& src, const RealVectorField& dst);

/// Best orientation reversing congruence f^r = A f^q and the vanishing invariants
/// (alpha^s, gamma^{s+1}) found between q and r.
struct CongruenceReport {
    int q = 0, r = 0;
    int parity = 0;             // (q - r) mod 2
    double procrustes = 0.0;    // max |f^r - A f^q| after the best orthogonal A
    double det = 0.0;
    double min_alpha = INFINITY; // min over s in [min(q,r), max(q,r)] of max|alpha^s|
    int alpha_index = 0;
    double min_gamma = INFINITY; // min over s of max|gamma^{s+1}|
    int gamma_index = 0;
};

CongruenceReport classify_congruence(TransformSequence& seq, int q, int r);

} // namespace minsurf
