#include "minsurf/transforms.hpp"

#include <cmath>

namespace minsurf {

namespace {

const Complex I(0.0, 1.0);

SampledSurface surface_of(const FrameField& F)
{
    SampledSurface s;
    s.grid = F.grid;
    s.values = F.f0;
    return s;
}

Matrix6d nearest_orthogonal6(const Matrix6d& A)
{
    Eigen::JacobiSVD<Matrix6d> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

} // namespace

SampledSurface transform(const SampledSurface& f, const FrameField& F, int eps)
{
    if (eps != 1 && eps != -1) throw GeometryError(ErrorKind::InvalidArgument, "eps must be +1 or -1");
    if (!same_sampling(f.grid, F.grid) || f.values.size() != F.f0.size())
        throw GeometryError(ErrorKind::InvalidArgument, "surface and frame are sampled differently");
    SampledSurface out;
    out.grid = F.grid;
    out.provenance = f.provenance + (eps > 0 ? "+" : "-");
    out.values.resize(F.f0.size());
    for (std::size_t k = 0; k < F.f0.size(); ++k) {
        const double phi = F.phi[k];
        const RealVec6& b = F.b[k];
        out.values[k] = -b / (std::cosh(phi) * b.norm()) + eps * std::tanh(phi) * F.N[k];
    }
    return out;
}

EpsilonJet epsilon_jet(const FrameField& F, int eps)
{
    const Grid2& g = F.grid;
    const int n = g.size();
    const ComplexField d_phi = wirtinger_d(g, F.phi);
    const ComplexField dd_phi = d_d(g, F.phi);
    const ComplexField d_omega = wirtinger_d(g, F.omega);
    const ComplexField d_alpha = wirtinger_d(g, F.alpha);

    EpsilonJet J;
    J.eps = eps;
    J.f_eps = transform(surface_of(F), F, eps);
    J.f1_eps.resize(n);
    J.omega_eps.resize(n);
    J.d_f1_eps.resize(n);
    J.nu.resize(n);
    for (int k = 0; k < n; ++k) {
        const double phi = F.phi[k];
        const double s2 = std::sinh(2 * phi), c2 = std::cosh(2 * phi);
        const double sech2 = 1.0 / (std::cosh(phi) * std::cosh(phi));
        const double sh = std::sinh(phi), th = std::tanh(phi);
        const double em = std::exp(-F.omega[k]);
        const Complex alpha = F.alpha[k];
        const Complex dp = d_phi[k];
        const Complex c = alpha * double(eps) + 2.0 * I * dp;
        const ComplexVec6 f0 = F.f0[k].cast<Complex>();
        const ComplexVec6& f1 = F.f1[k];
        const ComplexVec6 cf1 = f1.conjugate();
        const ComplexVec6& f2 = F.f2[k];
        const ComplexVec6 cf2 = f2.conjugate();
        const ComplexVec6 N = F.N[k].cast<Complex>();

        J.f1_eps[k] = -I * em * cf1 - 0.5 * c * sech2 * (f2 / s2 + c2 / s2 * cf2 + double(eps) * I * N);
        J.omega_eps[k] = std::log(em + 0.5 * std::norm(c) * sech2);
        const Complex nu = 2.0 * alpha * double(eps) * dp * (c2 - 2.0) + 8.0 * I * sh * sh * dp * dp -
                           double(eps) * d_alpha[k] * s2 + I * alpha * alpha - 2.0 * I * s2 * dd_phi[k];
        J.nu[k] = nu;
        const double csch2 = 1.0 / s2;
        J.d_f1_eps[k] = I * f0 + em * (I * d_omega[k] + th * c) * cf1 +
                        2.0 * nu * std::pow(csch2, 4) * sh * sh * f2 + 0.5 * nu * c2 * csch2 * csch2 * sech2 * cf2 +
                        I * double(eps) * nu * csch2 * csch2 * th * N;
    }
    const ComplexField d_omega_eps = wirtinger_d(g, J.omega_eps);
    J.f2_eps.resize(n);
    for (int k = 0; k < n; ++k) J.f2_eps[k] = J.d_f1_eps[k] - d_omega_eps[k] * J.f1_eps[k];
    return J;
}

ComplexField gamma(const FrameField& Fp, const SampledSurface& fnext)
{
    if (!same_sampling(Fp.grid, fnext.grid))
        throw GeometryError(ErrorKind::InvalidArgument, "gamma needs both surfaces on one grid");
    const VectorField d_f1 = d_d(Fp.grid, Fp.f0);
    const VectorField f1n = wirtinger_d(Fp.grid, fnext.values);
    ComplexField out(d_f1.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = cbilinear(d_f1[k], f1n[k]);
    return out;
}

SymmetricInvariants symmetric_invariants(const FrameField& F, const SampledSurface& f_eps)
{
    SymmetricInvariants s;
    s.grid = F.grid;
    s.omega = F.omega;
    const VectorField f1e = wirtinger_d(F.grid, f_eps.values);
    s.omega_eps.resize(f1e.size());
    for (std::size_t k = 0; k < f1e.size(); ++k) s.omega_eps[k] = std::log(f1e[k].squaredNorm());
    s.gamma_eps = gamma(F, f_eps);
    return s;
}

SymmetricFrameReport symmetric_frame(const FrameField& F, const SampledSurface& f_eps, int eps, const Mask* mask)
{
    const Grid2& g = F.grid;
    const int n = g.size();
    const VectorField f1e = wirtinger_d(g, f_eps.values);
    SymmetricFrameReport rep;
    rep.gamma_eps = gamma(F, f_eps);
    rep.omega_eps.resize(n);
    rep.det_B.resize(n);
    rep.volume.resize(n);
    rep.min_omega_sum = INFINITY;
    for (int k = 0; k < n; ++k) {
        Matrix6c B;
        B << F.f0[k].cast<Complex>(), F.f1[k], F.f1[k].conjugate(), f1e[k].conjugate(), f1e[k],
            f_eps.values[k].cast<Complex>();
        const double e = std::exp(F.omega[k]);
        const double ee = f1e[k].squaredNorm();
        rep.omega_eps[k] = std::log(ee);
        rep.min_omega_sum = std::min(rep.min_omega_sum, F.omega[k] + rep.omega_eps[k]);
        const double s = e * ee - 1.0;
        const Matrix6c G = B.transpose() * B;
        rep.det_B[k] = std::abs(G.determinant() - s * s);
        rep.volume[k] = std::abs(B.determinant() + double(eps) * s);
        if (mask && !(*mask)[k]) continue;
        Matrix6c target = Matrix6c::Zero();
        target(0, 0) = target(5, 5) = 1.0;
        target(1, 2) = target(2, 1) = e;
        target(3, 4) = target(4, 3) = ee;
        target(1, 4) = target(4, 1) = -I;
        target(2, 3) = target(3, 2) = I;
        rep.gram_B = std::max(rep.gram_B, (G - target).cwiseAbs().maxCoeff());
    }
    return rep;
}

double sinh_phi_identity_residual(const FrameField& F, const SampledSurface& f_eps, const Mask* mask)
{
    const SymmetricInvariants s = symmetric_invariants(F, f_eps);
    const FrameField Fe = build_frame(f_eps);
    const ComplexField d_omega_eps = wirtinger_d(F.grid, s.omega_eps);
    double worst = 0.0;
    for (int k = 0; k < F.grid.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const double lhs = std::exp(s.omega_eps[k]) * std::norm(s.gamma_eps[k] - I * d_omega_eps[k]) /
                           (std::exp(s.omega[k] + s.omega_eps[k]) - 1.0);
        const double sh = std::sinh(Fe.phi[k]);
        worst = std::max(worst, std::abs(lhs - 2.0 * sh * sh));
    }
    return worst;
}

Mask coupling_mask(const SymmetricInvariants& s, double fraction)
{
    ScalarField v(s.omega.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(s.omega[k] + s.omega_eps[k]) - 1.0;
    return threshold_mask(s.grid, v, fraction, stencil_reach(s.grid));
}

TransformSequence::TransformSequence(SampledSurface f, FrameOptions opts) : opts_(opts)
{
    surfaces_.emplace(0, std::move(f));
}

const SampledSurface& TransformSequence::surface(int p)
{
    auto it = surfaces_.find(p);
    if (it != surfaces_.end()) return it->second;
    const int from = p > 0 ? p - 1 : p + 1;
    const SampledSurface& prev = surface(from);
    const FrameField& F = frame(from);
    return surfaces_.emplace(p, transform(prev, F, p > 0 ? 1 : -1)).first->second;
}

const FrameField& TransformSequence::frame(int p)
{
    auto it = frames_.find(p);
    if (it != frames_.end()) return it->second;
    const SampledSurface& s = surface(p);
    try {
        return frames_.emplace(p, build_frame(s, opts_)).first->second;
    } catch (const SequenceBreak&) {
        throw;
    } catch (const GeometryError& e) {
        throw SequenceBreak(p, e);
    }
}

SequenceEntry TransformSequence::entry(int p)
{
    SequenceEntry e;
    e.p = p;
    e.surface = surface(p);
    e.frame = frame(p);
    e.invariants = invariants_of(e.frame);
    e.gamma_next = gamma(e.frame, surface(p + 1));
    e.delta_prev = gamma(e.frame, surface(p - 1));
    return e;
}

std::vector<SequenceEntry> sequence(const SampledSurface& f, int pmin, int pmax, const FrameOptions& opts)
{
    if (pmin > 0 || pmax < 0) throw GeometryError(ErrorKind::InvalidArgument, "sequence range must contain 0");
    TransformSequence seq(f, opts);
    std::vector<SequenceEntry> out;
    for (int p = pmin; p <= pmax; ++p) out.push_back(seq.entry(p));
    return out;
}

Matrix6d nearest_involution(const Matrix6d& A)
{
    const Matrix6d R = nearest_orthogonal6(A);
    Eigen::SelfAdjointEigenSolver<Matrix6d> es(0.5 * (R + R.transpose()));
    Vec6<double> s;
    for (int i = 0; i < 6; ++i) s(i) = es.eigenvalues()(i) < 0 ? -1.0 : 1.0;
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

NotFullReport fullness(const SampledSurface& f, const FrameField& F, double rank_tol)
{
    const int n = f.grid.size();
    Eigen::Matrix<double, 6, Eigen::Dynamic> M(6, n);
    for (int k = 0; k < n; ++k) M.col(k) = f.values[k];
    M /= std::sqrt(double(n));
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, Eigen::Dynamic>> svd(M, Eigen::ComputeFullU);
    NotFullReport rep;
    rep.singular_values = svd.singularValues();
    rep.normal = svd.matrixU().col(5);
    rep.reflection = Matrix6d::Identity() - 2.0 * rep.normal * rep.normal.transpose();
    rep.max_alpha = max_abs(F.alpha);
    rep.not_full = rep.singular_values(5) < rank_tol * rep.singular_values(0);
    return rep;
}

std::optional<NotFullReport> detect_not_full(TransformSequence& seq, int q, double alpha_tol, double rank_tol)
{
    NotFullReport rep = fullness(seq.surface(q), seq.frame(q), rank_tol);
    const bool flat_alpha = rep.max_alpha < alpha_tol;
    if (!rep.not_full && !flat_alpha) return std::nullopt;
    rep.not_full = rep.not_full && flat_alpha;
    const SampledSurface& next = seq.surface(q + 1);
    const SampledSurface& prev = seq.surface(q - 1);
    for (std::size_t k = 0; k < next.values.size(); ++k)
        rep.reflection_residual =
            std::max(rep.reflection_residual, (next.values[k] - rep.reflection * prev.values[k]).norm());
    return rep;
}

std::optional<GammaReflection> detect_gamma_reflection(const FrameField& Fq, const FrameField& Fq1, double tol,
                                                       const Mask* mask)
{
    GammaReflection rep;
    rep.max_gamma = max_abs(gamma(Fq, surface_of(Fq1)));
    if (rep.max_gamma >= tol) return std::nullopt;

    const int n = Fq.grid.size();
    Matrix6d Sxx = Matrix6d::Zero(), Syx = Matrix6d::Zero();
    for (int k = 0; k < n; ++k) {
        if (mask && !(*mask)[k]) continue;
        Matrix6d X, Y;
        X << Fq.f0[k], Fq.f1[k].real(), Fq.f1[k].imag(), Fq1.f0[k], Fq1.f1[k].real(), Fq1.f1[k].imag();
        Y << Fq1.f0[k], Fq1.f1[k].real(), Fq1.f1[k].imag(), Fq.f0[k], Fq.f1[k].real(), Fq.f1[k].imag();
        Sxx += X * X.transpose();
        Syx += Y * X.transpose();
    }
    const Matrix6d raw = Syx * Sxx.inverse();
    const Matrix6d R = nearest_orthogonal6(raw);
    rep.fit_defect = (R * R - Matrix6d::Identity()).norm();
    rep.A = nearest_involution(raw);
    rep.involution_defect = (rep.A * rep.A - Matrix6d::Identity()).norm();
    rep.det = rep.A.determinant();

    for (int k = 0; k < n; ++k) {
        rep.residual = std::max(rep.residual, (Fq1.f0[k] - rep.A * Fq.f0[k]).norm());
        rep.omega_gap = std::max(rep.omega_gap, std::abs(Fq.omega[k] - Fq1.omega[k]));
        if (mask && !(*mask)[k]) continue;
        Matrix6c X, Y;
        X << Fq.f0[k].cast<Complex>(), Fq.f1[k], Fq.f1[k].conjugate(), Fq1.f0[k].cast<Complex>(), Fq1.f1[k],
            Fq1.f1[k].conjugate();
        Y << Fq1.f0[k].cast<Complex>(), Fq1.f1[k], Fq1.f1[k].conjugate(), Fq.f0[k].cast<Complex>(), Fq.f1[k],
            Fq.f1[k].conjugate();
        const Matrix6d Az = (Y * X.inverse()).real();
        rep.z_deviation = std::max(rep.z_deviation, (Az - rep.A).norm());
    }
    return rep;
}

double reflection_equivariance(const SampledSurface& f, const Matrix6d& A, const FrameOptions& opts)
{
    const FrameField F = build_frame(f, opts);
    const SampledSurface Af = apply_linear(A, f);
    const FrameField FA = build_frame(Af, opts);
    double worst = 0.0;
    for (int eps : {1, -1}) {
        const SampledSurface lhs = transform(Af, FA, eps);
        const SampledSurface rhs = apply_linear(A, transform(f, F, -eps));
        for (double d : pointwise_distance(lhs, rhs)) worst = std::max(worst, d);
    }
    return worst;
}

Matrix6d reversing_procrustes(const RealVectorField& src, const RealVectorField& dst)
{
    Matrix6d S = Matrix6d::Zero();
    for (std::size_t k = 0; k < src.size(); ++k) S += dst[k] * src[k].transpose();
    Eigen::JacobiSVD<Matrix6d> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // flip the weakest singular direction if the unconstrained optimum preserves orientation
    Vec6<double> d = Vec6<double>::Ones();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() > 0) d(5) = -1.0;
    return svd.matrixU() * d.asDiagonal() * svd.matrixV().transpose();
}

CongruenceReport classify_congruence(TransformSequence& seq, int q, int r)
{
    CongruenceReport rep;
    rep.q = q;
    rep.r = r;
    rep.parity = std::abs(q - r) % 2;
    const SampledSurface& fq = seq.surface(q);
    const SampledSurface& fr = seq.surface(r);
    const Matrix6d A = reversing_procrustes(fq.values, fr.values);
    rep.det = A.determinant();
    for (std::size_t k = 0; k < fq.values.size(); ++k)
        rep.procrustes = std::max(rep.procrustes, (fr.values[k] - A * fq.values[k]).norm());
    const int lo = std::min(q, r), hi = std::max(q, r);
    for (int s = lo; s <= hi; ++s) {
        const double a = max_abs(seq.frame(s).alpha);
        if (a < rep.min_alpha) {
            rep.min_alpha = a;
            rep.alpha_index = s;
        }
        if (s == hi) break;
        const double gm = max_abs(gamma(seq.frame(s), seq.surface(s + 1)));
        if (gm < rep.min_gamma) {
            rep.min_gamma = gm;
            rep.gamma_index = s;
        }
    }
    return rep;
}

} // namespace minsurf
