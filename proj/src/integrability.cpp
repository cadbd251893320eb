#include "minsurf/integrability.hpp"

#include "minsurf/frames.hpp"

#include <cmath>
#include <functional>

namespace minsurf {

namespace {
const Complex I(0.0, 1.0);
}

InvariantTriple invariants_of(const FrameField& F) { return {F.grid, F.omega, F.phi, F.alpha}; }

SystemFResidual residual_system_F(const InvariantTriple& t, const Mask* mask)
{
    const Grid2& g = t.grid;
    const ComplexField dbar_alpha = wirtinger_dbar(g, t.alpha);
    const ComplexField d_phi = wirtinger_d(g, t.phi);
    const ScalarField lap_omega = d_dbar(g, t.omega);
    const ScalarField lap_phi = d_dbar(g, t.phi);
    SystemFResidual r;
    for (int k = 0; k < g.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const double p2 = 2.0 * t.phi[k];
        const double csch = 1.0 / std::sinh(p2);
        const double e = std::exp(t.omega[k]);
        r.alpha_eq = std::max(r.alpha_eq, std::abs(dbar_alpha[k] + 2.0 * std::conj(t.alpha[k]) * d_phi[k] * csch));
        r.omega_eq = std::max(r.omega_eq, std::abs(lap_omega[k] + e - std::cosh(p2) / e));
        r.phi_eq = std::max(r.phi_eq, std::abs(2.0 * lap_phi[k] - std::norm(t.alpha[k]) * csch + std::sinh(p2) / e));
    }
    return r;
}

SystemBResidual residual_system_B(const SymmetricInvariants& s, const Mask* mask, double positivity_tol)
{
    const Grid2& g = s.grid;
    for (int k = 0; k < g.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        if (s.omega[k] + s.omega_eps[k] < -positivity_tol)
            throw GeometryError(ErrorKind::PositivityViolation,
                                "omega + omega^eps = " + std::to_string(s.omega[k] + s.omega_eps[k]) +
                                    " at sample " + std::to_string(k));
    }
    const ComplexField dbar_gamma = wirtinger_dbar(g, s.gamma_eps);
    const ComplexField d_omega = wirtinger_d(g, s.omega);
    const ComplexField d_omega_eps = wirtinger_d(g, s.omega_eps);
    const ScalarField lap_omega = d_dbar(g, s.omega);
    const ScalarField lap_omega_eps = d_dbar(g, s.omega_eps);
    SystemBResidual r;
    for (int k = 0; k < g.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const double e = std::exp(s.omega[k]), ee = std::exp(s.omega_eps[k]);
        const double denom = std::exp(s.omega[k] + s.omega_eps[k]) - 1.0;
        const Complex gm = s.gamma_eps[k];
        r.gamma_eq = std::max(r.gamma_eq, std::abs(dbar_gamma[k] - I * (e - ee)));
        r.omega_eq = std::max(r.omega_eq, std::abs(lap_omega[k] + 2.0 * std::sinh(s.omega[k]) -
                                                   std::norm(gm + I * d_omega[k]) / denom));
        r.omega_eps_eq = std::max(r.omega_eps_eq, std::abs(lap_omega_eps[k] + 2.0 * std::sinh(s.omega_eps[k]) -
                                                           std::norm(gm - I * d_omega_eps[k]) / denom));
    }
    return r;
}

double residual_sinh_gordon(const Grid2& g, const ScalarField& eta, const Mask* mask)
{
    const ScalarField lap = d_dbar(g, eta);
    double r = 0.0;
    for (int k = 0; k < g.size(); ++k)
        if (!mask || (*mask)[k]) r = std::max(r, std::abs(lap[k] + std::sinh(eta[k])));
    return r;
}

double residual_reduced_omega(const Grid2& g, const ScalarField& omega, const Mask* mask)
{
    const ScalarField lap = d_dbar(g, omega);
    const ComplexField d_omega = wirtinger_d(g, omega);
    double r = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        const double rhs = -2.0 * std::sinh(omega[k]) + std::norm(d_omega[k]) / (std::exp(2.0 * omega[k]) - 1.0);
        r = std::max(r, std::abs(lap[k] - rhs));
    }
    return r;
}

ScalarField substitute(const ScalarField& omega, double tol)
{
    ScalarField eta(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
        const double e = std::exp(omega[k]);
        if (e < 1.0 - tol)
            throw GeometryError(ErrorKind::SubstitutionDomain,
                                "e^omega = " + std::to_string(e) + " < 1 at sample " + std::to_string(k));
        eta[k] = std::acosh(std::max(e, 1.0));
    }
    return eta;
}

Matrix6c frame_generator(double omega, Complex d_omega, double phi, Complex d_phi, Complex alpha)
{
    const double e = std::exp(omega);
    const double p2 = 2.0 * phi;
    const double ch = std::cosh(p2), sh = std::sinh(p2);
    Matrix6c P = Matrix6c::Zero();
    P(1, 0) = 1.0;                                  // d f0 = f1
    P(3, 1) = 1.0;                                  // d f1 = f2 + d omega f1
    P(1, 1) = d_omega;
    P(0, 2) = -e;                                   // d conj f1 = -e^omega f0
    P(2, 3) = 1.0 / e;                              // d f2
    P(3, 3) = 2.0 * d_phi * ch / sh;
    P(4, 3) = 2.0 * d_phi / sh;
    P(5, 3) = alpha;
    P(2, 4) = -ch / e;                              // d conj f2
    P(3, 5) = -alpha / (sh * sh);                   // d N
    P(4, 5) = -alpha * ch / (sh * sh);
    return P;
}

Matrix6c conjugate_generator(const Matrix6c& P)
{
    Eigen::PermutationMatrix<6> pi;
    pi.indices() << 0, 2, 1, 4, 3, 5;
    return pi * P.conjugate() * pi;
}

Matrix6c frame_transfer(double omega, double phi)
{
    const double s = std::sqrt(0.5 * std::exp(omega));
    const double sh = std::sinh(phi), ch = std::cosh(phi);
    Matrix6c T = Matrix6c::Zero();
    T(0, 0) = 1.0;
    T(1, 1) = s;
    T(2, 1) = -I * s;
    T(1, 2) = s;
    T(2, 2) = I * s;
    T(3, 3) = sh;
    T(4, 3) = -I * ch;
    T(3, 4) = sh;
    T(4, 4) = I * ch;
    T(5, 5) = 1.0;
    return T;
}

namespace {

template <typename Mat>
struct GridSystem {
    const Grid2* g;
    Field<Mat> Ax, Ay;                                // generators along x and y at the samples
    std::function<void(Mat&, int)> normalize;        // cheap per-step correction
    std::function<double(Mat&, int)> reproject;      // full correction; returns the defect removed
};

// Value of the generator midway between line positions q and q+1 (cubic interpolation).
template <typename Mat>
Mat line_midpoint(const std::vector<const Mat*>& line, int q, bool periodic)
{
    const int n = static_cast<int>(line.size());
    auto at = [&](int p) -> const Mat& { return *line[((p % n) + n) % n]; };
    if (periodic || (q >= 1 && q + 2 <= n - 1))
        return (-at(q - 1) + 9.0 * at(q) + 9.0 * at(q + 1) - at(q + 2)) / 16.0;
    if (q < 1) return (5.0 * at(q) + 15.0 * at(q + 1) - 5.0 * at(q + 2) + at(q + 3)) / 16.0;
    return (at(q - 2) - 5.0 * at(q - 1) + 15.0 * at(q) + 5.0 * at(q + 1)) / 16.0;
}

template <typename Mat>
Mat rk4(const Mat& Y, const Mat& A0, const Mat& Am, const Mat& A1, double h)
{
    const Mat k1 = Y * A0;
    const Mat k2 = (Y + 0.5 * h * k1) * Am;
    const Mat k3 = (Y + 0.5 * h * k2) * Am;
    const Mat k4 = (Y + h * k3) * A1;
    return Y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Integrates along one grid line (axis 0: x, axis 1: y) from position `start`
// by `steps` (signed) steps, storing states through `store(pos, Y)`.
template <typename Mat>
Mat integrate_line(const GridSystem<Mat>& sys, Mat Y, int axis, int fixed, int start, int steps, int every,
                   double& drift, const std::function<void(int, const Mat&)>& store)
{
    const Grid2& g = *sys.g;
    const int n = axis == 0 ? g.nx : g.ny;
    const bool periodic = axis == 0 ? g.periodic_x : g.periodic_y;
    const double h = (axis == 0 ? g.hx() : g.hy()) * (steps >= 0 ? 1.0 : -1.0);
    const Field<Mat>& A = axis == 0 ? sys.Ax : sys.Ay;
    std::vector<const Mat*> line(n);
    for (int p = 0; p < n; ++p) line[p] = &A[axis == 0 ? g.index(p, fixed) : g.index(fixed, p)];
    auto wrap = [&](int p) { return periodic ? ((p % n) + n) % n : p; };
    auto idx = [&](int p) { return axis == 0 ? g.index(wrap(p), fixed) : g.index(fixed, wrap(p)); };

    const int dir = steps >= 0 ? 1 : -1;
    int pos = start;
    for (int s = 0; s < std::abs(steps); ++s) {
        const int next = pos + dir;
        const int q = std::min(pos, next);
        const Mat Am = line_midpoint(line, q, periodic);
        Y = rk4(Y, *line[wrap(pos)], Am, *line[wrap(next)], h);
        pos = next;
        sys.normalize(Y, idx(pos));
        if ((s + 1) % every == 0) drift = std::max(drift, sys.reproject(Y, idx(pos)));
        store(pos, Y);
    }
    return Y;
}

template <typename Mat>
struct GridRun {
    Field<Mat> states;
    Mask valid;
    double holonomy = 0.0;
    double drift = 0.0;
};

template <typename Mat>
GridRun<Mat> integrate_grid(const GridSystem<Mat>& sys, const Mat& seed, const IntegrationOptions& o)
{
    const Grid2& g = *sys.g;
    GridRun<Mat> run;
    run.states.resize(g.size());
    run.valid.assign(g.size(), 0);
    auto wrap_x = [&](int i) { return g.periodic_x ? ((i % g.nx) + g.nx) % g.nx : i; };
    auto wrap_y = [&](int j) { return g.periodic_y ? ((j % g.ny) + g.ny) % g.ny : j; };
    const int up = o.rows_up >= 0 ? o.rows_up : (g.periodic_y ? g.ny - 1 : g.ny - 1 - o.j0);
    const int down = o.rows_down >= 0 ? o.rows_down : (g.periodic_y ? 0 : o.j0);
    const int every = std::max(1, o.reproject_every);

    auto put = [&](int i, int j, const Mat& Y) {
        const int k = g.index(wrap_x(i), wrap_y(j));
        run.states[k] = Y;
        run.valid[k] = 1;
    };

    auto sweep_x = [&](const Mat& Y0, int j) {
        // along the row through (i0, j): whole period if periodic, both ways otherwise
        auto store = [&](int i, const Mat& Y) { put(i, j, Y); };
        if (g.periodic_x) {
            integrate_line<Mat>(sys, Y0, 0, wrap_y(j), o.i0, g.nx - 1, every, run.drift, store);
        } else {
            integrate_line<Mat>(sys, Y0, 0, wrap_y(j), o.i0, g.nx - 1 - o.i0, every, run.drift, store);
            integrate_line<Mat>(sys, Y0, 0, wrap_y(j), o.i0, -o.i0, every, run.drift, store);
        }
    };
    auto sweep_y = [&](const Mat& Y0, int i) {
        auto store = [&](int j, const Mat& Y) { put(i, j, Y); };
        integrate_line<Mat>(sys, Y0, 1, wrap_x(i), o.j0, up, every, run.drift, store);
        integrate_line<Mat>(sys, Y0, 1, wrap_x(i), o.j0, -down, every, run.drift, store);
    };

    put(o.i0, o.j0, seed);
    if (o.rows_first) {
        sweep_x(seed, o.j0);
        for (int i = 0; i < g.nx; ++i) {
            const int k = g.index(i, wrap_y(o.j0));
            if (run.valid[k]) sweep_y(Mat(run.states[k]), i);
        }
    } else {
        sweep_y(seed, o.i0);
        for (int j = 0; j < g.ny; ++j) {
            const int k = g.index(wrap_x(o.i0), j);
            if (run.valid[k]) sweep_x(Mat(run.states[k]), j);
        }
    }

    if (g.periodic_x) {
        // one full turn along the base row returns to the seed for consistent data
        double unused = 0.0;
        const Mat end = integrate_line<Mat>(sys, seed, 0, wrap_y(o.j0), o.i0, g.nx, every, unused,
                                            [](int, const Mat&) {});
        run.holonomy = (end - seed).cwiseAbs().maxCoeff();
    }
    return run;
}

Matrix6d nearest_orthogonal(const Matrix6d& M)
{
    Eigen::JacobiSVD<Matrix6d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

} // namespace

FrameIntegration integrate_frame_F(const InvariantTriple& t, const std::optional<Matrix6d>& seed,
                                   const IntegrationOptions& opts)
{
    const Grid2& g = t.grid;
    g.validate();
    const ComplexField d_omega = wirtinger_d(g, t.omega);
    const ComplexField d_phi = wirtinger_d(g, t.phi);
    GridSystem<Matrix6c> sys;
    sys.g = &g;
    sys.Ax.resize(g.size());
    sys.Ay.resize(g.size());
    const Complex mu = g.mu;
    for (int k = 0; k < g.size(); ++k) {
        const Matrix6c P = frame_generator(t.omega[k], d_omega[k], t.phi[k], d_phi[k], t.alpha[k]);
        const Matrix6c Q = conjugate_generator(P);
        sys.Ax[k] = mu * P + std::conj(mu) * Q;
        sys.Ay[k] = I * (mu * P - std::conj(mu) * Q);
    }
    sys.normalize = [](Matrix6c& X, int) {
        const double n = X.col(0).norm();
        X.col(0) /= n;
    };
    sys.reproject = [&t](Matrix6c& X, int k) {
        const Matrix6c T = frame_transfer(t.omega[k], t.phi[k]);
        const Matrix6c E = X * T.inverse();
        const Matrix6d Er = E.real();
        const double defect =
            std::max(E.imag().cwiseAbs().maxCoeff(), (Er.transpose() * Er - Matrix6d::Identity()).cwiseAbs().maxCoeff());
        X = nearest_orthogonal(Er).cast<Complex>() * T;
        return defect;
    };

    const int k0 = g.index(opts.i0, opts.j0);
    const Matrix6d E0 = seed ? *seed : Matrix6d::Identity();
    const Matrix6c X0 = E0.cast<Complex>() * frame_transfer(t.omega[k0], t.phi[k0]);
    const GridRun<Matrix6c> run = integrate_grid(sys, X0, opts);
    if (run.drift > opts.drift_tolerance)
        throw GeometryError(ErrorKind::GramDrift,
                            "frame lost orthonormality by " + std::to_string(run.drift) + " between reprojections");

    FrameIntegration out;
    out.surface.grid = g;
    out.surface.values.assign(g.size(), RealVec6::Zero());
    for (int k = 0; k < g.size(); ++k)
        if (run.valid[k]) out.surface.values[k] = run.states[k].col(0).real();
    out.valid = run.valid;
    out.holonomy = run.holonomy;
    out.max_drift = run.drift;
    return out;
}

S3Integration integrate_s3_frame(const Grid2& g, const ScalarField& eta, const std::optional<Eigen::Matrix4d>& seed,
                                 const IntegrationOptions& opts)
{
    using Mat = Eigen::Matrix4d;
    g.validate();
    const ScalarField eu = partial_u(g, eta), ev = partial_v(g, eta);
    GridSystem<Mat> sys;
    sys.g = &g;
    sys.Ax.resize(g.size());
    sys.Ay.resize(g.size());
    const double a = g.mu.real(), b = g.mu.imag();
    for (int k = 0; k < g.size(); ++k) {
        const double e = std::exp(eta[k]);
        Mat Ku = Mat::Zero(), Kv = Mat::Zero();
        // columns: G1, G2, G1_u, G1_v
        Ku(2, 0) = 1.0;
        Ku(2, 1) = -1.0 / e;
        Ku(0, 2) = -e;
        Ku(1, 2) = 1.0;
        Ku(2, 2) = 0.5 * eu[k];
        Ku(3, 2) = -0.5 * ev[k];
        Ku(2, 3) = 0.5 * ev[k];
        Ku(3, 3) = 0.5 * eu[k];
        Kv(3, 0) = 1.0;
        Kv(3, 1) = 1.0 / e;
        Kv(2, 2) = 0.5 * ev[k];
        Kv(3, 2) = 0.5 * eu[k];
        Kv(0, 3) = -e;
        Kv(1, 3) = -1.0;
        Kv(2, 3) = -0.5 * eu[k];
        Kv(3, 3) = 0.5 * ev[k];
        sys.Ax[k] = a * Ku + b * Kv;
        sys.Ay[k] = -b * Ku + a * Kv;
    }
    sys.normalize = [](Mat& Y, int) { Y.col(0).normalize(); };
    sys.reproject = [&eta](Mat& Y, int k) {
        const double s = std::exp(0.5 * eta[k]);
        Eigen::Vector4d d(1.0, 1.0, s, s);
        Mat E = Y * d.cwiseInverse().asDiagonal();
        const double defect = (E.transpose() * E - Mat::Identity()).cwiseAbs().maxCoeff();
        Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeFullU | Eigen::ComputeFullV);
        E = svd.matrixU() * svd.matrixV().transpose();
        Y = E * d.asDiagonal();
        return defect;
    };

    const int k0 = g.index(opts.i0, opts.j0);
    const double s0 = std::exp(0.5 * eta[k0]);
    const Mat E0 = seed ? *seed : Mat::Identity();
    const Mat Y0 = E0 * Eigen::Vector4d(1.0, 1.0, s0, s0).asDiagonal();
    const GridRun<Mat> run = integrate_grid(sys, Y0, opts);
    if (run.drift > opts.drift_tolerance)
        throw GeometryError(ErrorKind::GramDrift,
                            "frame lost orthonormality by " + std::to_string(run.drift) + " between reprojections");

    S3Integration out;
    Surface4& G1 = out.surface.G1;
    Surface4& G2 = out.surface.G2;
    G1.grid = G2.grid = g;
    G1.values.assign(g.size(), RealVec4::Zero());
    G2.values.assign(g.size(), RealVec4::Zero());
    for (int k = 0; k < g.size(); ++k) {
        if (!run.valid[k]) continue;
        G1.values[k] = run.states[k].col(0);
        G2.values[k] = run.states[k].col(1);
    }
    out.surface.eta = eta;
    out.valid = run.valid;
    out.holonomy = run.holonomy;
    out.max_drift = run.drift;
    return out;
}

Matrix6d procrustes(const RealVectorField& src, const RealVectorField& dst, const Mask* mask)
{
    Matrix6d H = Matrix6d::Zero();
    for (std::size_t k = 0; k < src.size(); ++k)
        if (!mask || (*mask)[k]) H += dst[k] * src[k].transpose();
    return nearest_orthogonal(H);
}

} // namespace minsurf
