#include "minsurf/frames.hpp"

#include <cmath>
#include <numeric>

namespace minsurf {

namespace {

const Complex I(0.0, 1.0);

RealVec6 unit_normal(const RealVec6& f0, const RealVec6& p, const RealVec6& q, const RealVec6& a,
                     const RealVec6& b)
{
    RealVec6 w = cross5(f0, p, q, a, b);
    const double scale = f0.norm() * p.norm() * q.norm() * std::max(a.norm(), 1e-300) * b.norm();
    if (w.norm() > 1e-12 * scale) return w / w.norm();
    // a is (numerically) zero: any unit vector orthogonal to f0, p, q, b will do.
    Eigen::Matrix<double, 4, 6> M;
    M.row(0) = f0.transpose();
    M.row(1) = p.transpose();
    M.row(2) = q.transpose();
    M.row(3) = b.transpose();
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().col(5);
}

} // namespace

SecondOrderData second_order_data(const SampledSurface& f)
{
    const Grid2& g = f.grid;
    g.validate();
    SecondOrderData d;
    d.f0 = f.values;
    d.f1 = wirtinger_d(g, f.values);
    d.d_f1 = d_d(g, f.values);
    d.f2.resize(g.size());
    d.Q.resize(g.size());
    for (int k = 0; k < g.size(); ++k) {
        const ComplexVec6 v[3] = {d.f0[k].cast<Complex>(), d.f1[k], d.f1[k].conjugate()};
        Eigen::Matrix3cd G;
        Eigen::Vector3cd rhs;
        for (int r = 0; r < 3; ++r) {
            rhs(r) = cbilinear(d.d_f1[k], v[r]);
            for (int c = 0; c < 3; ++c) G(r, c) = cbilinear(v[r], v[c]);
        }
        const Eigen::Vector3cd c = G.partialPivLu().solve(rhs);
        d.f2[k] = d.d_f1[k] - c(0) * v[0] - c(1) * v[1] - c(2) * v[2];
        d.Q[k] = cbilinear(d.f2[k], d.f2[k]);
    }
    return d;
}

ScalarField conformal_defect(const SampledSurface& f)
{
    const VectorField f1 = wirtinger_d(f.grid, f.values);
    ScalarField out(f1.size());
    for (std::size_t k = 0; k < f1.size(); ++k) out[k] = std::abs(cbilinear(f1[k], f1[k]));
    return out;
}

namespace {

struct QStats {
    Complex mean;
    double spread;
    double max_f2_sq;
};

QStats q_stats(const SecondOrderData& d)
{
    QStats s{Complex(0.0), 0.0, 0.0};
    for (const Complex& q : d.Q) s.mean += q;
    s.mean /= double(d.Q.size());
    double var = 0.0;
    for (const Complex& q : d.Q) var += std::norm(q - s.mean);
    var /= double(d.Q.size());
    s.spread = std::abs(s.mean) > 0 ? std::sqrt(var) / std::abs(s.mean) : INFINITY;
    for (const auto& v : d.f2) s.max_f2_sq = std::max(s.max_f2_sq, v.squaredNorm());
    return s;
}

} // namespace

AdaptedSurface adapt_coordinate(const SampledSurface& f, double spread_threshold, double circular_fraction)
{
    const SecondOrderData d = second_order_data(f);
    const QStats st = q_stats(d);
    if (std::abs(st.mean) < circular_fraction * st.max_f2_sq)
        throw GeometryError(ErrorKind::CircularEllipse, "(f2, f2) vanishes; the ellipse of curvature is a circle");
    if (st.spread > spread_threshold)
        throw GeometryError(ErrorKind::NonconstantQ,
                            "(f2, f2) varies over the grid (relative spread " + std::to_string(st.spread) + ")");
    // (f2, f2) scales by mu^-4 under w -> mu w.
    const Complex mu = std::pow(-st.mean, 0.25);
    AdaptedSurface out{f, mu, st.mean, st.spread};
    out.surface.grid.mu = f.grid.mu * mu;
    return out;
}

ScalarField FrameField::eccentricity() const
{
    ScalarField e(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) e[k] = 1.0 / std::cosh(phi[k]);
    return e;
}

FrameField build_frame(const SampledSurface& f, const FrameOptions& opts)
{
    const Grid2& g = f.grid;
    const SecondOrderData d = second_order_data(f);
    const QStats st = q_stats(d);
    if (std::abs(st.mean) < opts.circular_fraction * st.max_f2_sq)
        throw GeometryError(ErrorKind::CircularEllipse, "(f2, f2) vanishes; the ellipse of curvature is a circle");

    FrameField F;
    F.grid = g;
    F.f0 = d.f0;
    F.f1 = d.f1;
    F.f2 = d.f2;
    F.Q = d.Q;
    const int n = g.size();
    F.a.resize(n);
    F.b.resize(n);
    F.N.resize(n);
    F.omega.resize(n);
    F.phi.resize(n);
    F.theta.resize(n);
    F.nondegenerate.assign(n, 1);

    double max_b = 0.0;
    for (int k = 0; k < n; ++k) {
        F.a[k] = d.f2[k].real();
        F.b[k] = -d.f2[k].imag();
        max_b = std::max(max_b, F.b[k].norm());
    }
    const double h = g.spacing();
    const double threshold = opts.degenerate_factor * h * h * max_b;
    int degenerate = 0;
    for (int k = 0; k < n; ++k) {
        const RealVec6& a = F.a[k];
        const RealVec6& b = F.b[k];
        const double na = a.norm(), nb = b.norm();
        F.omega[k] = std::log(d.f1[k].squaredNorm());
        F.phi[k] = std::asinh(na);
        F.theta[k] = std::acos(std::tanh(F.phi[k]));
        const RealVec6 p = d.f1[k].real(), q = d.f1[k].imag();
        RealVec6 N = unit_normal(d.f0[k], p, q, a, b);
        Matrix6d M;
        M << d.f0[k], p, q, a, b, N;
        // vol(f0, f1, conj f1, f2, conj f2, N) = 4 det(f0, Re f1, Im f1, a, b, N) must be negative
        if (M.determinant() > 0) N = -N;
        F.N[k] = N;
        const bool flat = na < threshold || nb < threshold || std::abs(a.dot(b)) > 0.9 * na * nb;
        if (flat) {
            F.nondegenerate[k] = 0;
            ++degenerate;
        }
    }
    F.degenerate_fraction = double(degenerate) / n;
    if (F.degenerate_fraction > opts.max_degenerate_fraction)
        throw GeometryError(ErrorKind::DegenerateEllipse,
                            "ellipse of curvature degenerates to a segment at " +
                                std::to_string(int(100 * F.degenerate_fraction)) + "% of the samples");

    const VectorField d_f2 = wirtinger_d(g, F.f2);
    F.alpha.resize(n);
    for (int k = 0; k < n; ++k) F.alpha[k] = cbilinear(d_f2[k], F.N[k].cast<Complex>());
    return F;
}

Matrix6c frame_matrix(const FrameField& F, int k)
{
    Matrix6c X;
    X << F.f0[k].cast<Complex>(), F.f1[k], F.f1[k].conjugate(), F.f2[k], F.f2[k].conjugate(),
        F.N[k].cast<Complex>();
    return X;
}

double gram_residual(const FrameField& F, const Mask* mask)
{
    double worst = 0.0;
    for (int k = 0; k < F.grid.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const Matrix6c X = frame_matrix(F, k);
        const Matrix6c G = X.transpose() * X;
        Matrix6c A = Matrix6c::Zero();
        const double e = std::exp(F.omega[k]);
        const double c2 = std::cosh(2.0 * F.phi[k]);
        A(0, 0) = 1.0;
        A(1, 2) = A(2, 1) = e;
        A(3, 3) = A(4, 4) = -1.0;
        A(3, 4) = A(4, 3) = c2;
        A(5, 5) = 1.0;
        worst = std::max(worst, (G - A).cwiseAbs().maxCoeff());
    }
    return worst;
}

ScalarField volume_identity_residual(const FrameField& F)
{
    ScalarField r(F.grid.size());
    for (int k = 0; k < F.grid.size(); ++k) {
        const Complex vol = frame_matrix(F, k).determinant();
        r[k] = std::abs(vol + std::exp(F.omega[k]) * std::sinh(2.0 * F.phi[k]));
    }
    return r;
}

double normal_orthogonality(const FrameField& F)
{
    double worst = 0.0;
    for (int k = 0; k < F.grid.size(); ++k) {
        const RealVec6& N = F.N[k];
        const RealVec6 p = F.f1[k].real(), q = F.f1[k].imag();
        const double scale = std::max({1.0, p.norm(), F.b[k].norm()});
        worst = std::max({worst, std::abs(N.dot(F.f0[k])), std::abs(N.dot(p)) / scale, std::abs(N.dot(q)) / scale,
                          std::abs(N.dot(F.a[k])) / scale, std::abs(N.dot(F.b[k])) / scale});
    }
    return worst;
}

double axis_identity_residual(const FrameField& F, const Mask* mask)
{
    double worst = 0.0;
    for (int k = 0; k < F.grid.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const RealVec6& a = F.a[k];
        const RealVec6& b = F.b[k];
        worst = std::max({worst, std::abs(a.dot(a) - b.dot(b) + 1.0), std::abs(a.dot(b))});
    }
    return worst;
}

FrameEquationResidual frame_equation_residual(const FrameField& F, const Mask* mask)
{
    const Grid2& g = F.grid;
    const int n = g.size();
    const VectorField d_f0 = wirtinger_d(g, F.f0);
    const VectorField d_f1 = d_d(g, F.f0);
    const RealVectorField d_cf1 = d_dbar(g, F.f0);
    const VectorField d_f2 = wirtinger_d(g, F.f2);
    const VectorField d_cf2 = wirtinger_d(g, conj(F.f2));
    const VectorField d_N = wirtinger_d(g, F.N);
    const ComplexField d_omega = wirtinger_d(g, F.omega);
    const ComplexField d_phi = wirtinger_d(g, F.phi);

    FrameEquationResidual r;
    for (int k = 0; k < n; ++k) {
        if (mask && !(*mask)[k]) continue;
        const ComplexVec6 f0 = F.f0[k].cast<Complex>();
        const ComplexVec6& f1 = F.f1[k];
        const ComplexVec6 cf1 = f1.conjugate();
        const ComplexVec6& f2 = F.f2[k];
        const ComplexVec6 cf2 = f2.conjugate();
        const ComplexVec6 N = F.N[k].cast<Complex>();
        const double e = std::exp(F.omega[k]);
        const double p2 = 2.0 * F.phi[k];
        const double coth = std::cosh(p2) / std::sinh(p2), csch = 1.0 / std::sinh(p2);
        const Complex alpha = F.alpha[k];
        const double res[6] = {
            (d_f0[k] - f1).norm(),
            (d_f1[k] - f2 - d_omega[k] * f1).norm(),
            (d_cf1[k].cast<Complex>() + e * f0).norm(),
            (d_f2[k] - cf1 / e - 2.0 * d_phi[k] * coth * f2 - 2.0 * d_phi[k] * csch * cf2 - alpha * N).norm(),
            (d_cf2[k] + std::cosh(p2) / e * cf1).norm(),
            (d_N[k] + alpha * csch * csch * (f2 + std::cosh(p2) * cf2)).norm(),
        };
        for (int q = 0; q < 6; ++q) r.eq[q] = std::max(r.eq[q], res[q]);
    }
    return r;
}

MinimalityReport takahashi_residual(const SampledSurface& f, const Mask* mask)
{
    const RealVectorField lap = d_dbar(f.grid, f.values);
    MinimalityReport rep;
    rep.mu.resize(lap.size());
    for (std::size_t k = 0; k < lap.size(); ++k) {
        rep.mu[k] = lap[k].dot(f.values[k]);
        if (mask && !(*mask)[k]) continue;
        rep.residual = std::max(rep.residual, (lap[k] - rep.mu[k] * f.values[k]).norm());
    }
    return rep;
}

const char* to_string(EllipseClass c)
{
    switch (c) {
    case EllipseClass::nondegenerate_noncircular: return "nondegenerate_noncircular";
    case EllipseClass::circle: return "circle";
    case EllipseClass::segment: return "segment";
    case EllipseClass::point: return "point";
    }
    return "unknown";
}

EllipseReport classify_ellipse(const SampledSurface& f, const FrameOptions& opts)
{
    const SecondOrderData d = second_order_data(f);
    const int n = f.grid.size();
    const double h = f.grid.spacing();
    double max_f2 = 0.0, max_b = 0.0;
    for (int k = 0; k < n; ++k) {
        max_f2 = std::max(max_f2, d.f2[k].norm());
        max_b = std::max(max_b, d.f2[k].imag().norm());
    }
    const double seg_threshold = opts.degenerate_factor * h * h * max_b;
    const int samples = 64;

    EllipseReport rep;
    rep.per_point.resize(n);
    rep.axis_ratio.resize(n);
    rep.eccentricity.resize(n);
    rep.major_axis.resize(n);
    rep.minor_axis.resize(n);
    std::array<int, 4> counts{};
    for (int k = 0; k < n; ++k) {
        const RealVec6 a = d.f2[k].real(), b = -d.f2[k].imag();
        double lo = INFINITY, hi = 0.0;
        RealVec6 vlo = RealVec6::Zero(), vhi = RealVec6::Zero();
        for (int s = 0; s < samples; ++s) {
            const double psi = M_PI * s / samples;
            const RealVec6 v = 2.0 * (a * std::cos(2 * psi) + b * std::sin(2 * psi));
            const double len = v.norm();
            if (len < lo) { lo = len; vlo = v; }
            if (len > hi) { hi = len; vhi = v; }
        }
        rep.axis_ratio[k] = hi > 0 ? lo / hi : 0.0;
        rep.eccentricity[k] = 1.0 / std::cosh(std::asinh(a.norm()));
        rep.major_axis[k] = hi > 0 ? RealVec6(vhi / hi) : RealVec6::Zero();
        rep.minor_axis[k] = lo > 0 ? RealVec6(vlo / lo) : RealVec6::Zero();
        EllipseClass c;
        if (hi < 1e-12 * std::max(1.0, max_f2)) c = EllipseClass::point;
        else if (0.5 * lo < seg_threshold) c = EllipseClass::segment;
        else if (std::abs(d.Q[k]) < opts.circular_fraction * max_f2 * max_f2) c = EllipseClass::circle;
        else c = EllipseClass::nondegenerate_noncircular;
        rep.per_point[k] = c;
        ++counts[static_cast<int>(c)];
    }
    int best = 0;
    for (int c = 0; c < 4; ++c) {
        rep.fractions[c] = double(counts[c]) / n;
        if (counts[c] > counts[best]) best = c;
    }
    rep.classification = static_cast<EllipseClass>(best);
    return rep;
}

Mask regular_mask(const FrameField& F, double fraction)
{
    ScalarField s(F.phi.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::sinh(F.phi[k]);
    return threshold_mask(F.grid, s, fraction, stencil_reach(F.grid));
}

} // namespace minsurf
