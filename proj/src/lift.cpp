#include "minsurf/lift.hpp"

#include <cmath>

namespace minsurf {

namespace {

const Complex I(0.0, 1.0);

bool selected(const Mask* mask, int k) { return !mask || (*mask)[k]; }

} // namespace

LiftCoefficients lift_coefficients(const ScalarField& omega, const ScalarField& omega_plus, double t,
                                   const Mask* mask)
{
    const std::size_t n = omega.size();
    LiftCoefficients c;
    c.t = t;
    c.lambda.resize(n);
    c.z12_3.resize(n);
    c.z21_2.resize(n);
    double min_ratio = INFINITY;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::exp(omega[k]), ep = std::exp(omega_plus[k]);
        const double R = std::sqrt(std::max(e * ep - 1.0, 0.0));
        c.lambda[k] = 2.0 / (e + ep + 2.0 * std::cos(t) * R);
        c.z21_2[k] = c.lambda[k] * std::sin(t) * R;
        c.z12_3[k] = 0.5 * c.lambda[k] * (e - ep);
        if (selected(mask, int(k)) && R > 0.0) min_ratio = std::min(min_ratio, (e + ep) / (2.0 * R));
    }
    // lambda > 0 needs cos t > -(e + ep) / 2R at every point
    c.t_min = 0.0;
    c.t_max = min_ratio >= 1.0 ? M_PI : std::acos(-min_ratio);
    if (!(t > c.t_min && t < c.t_max))
        throw GeometryError(ErrorKind::InadmissibleT, "t = " + std::to_string(t) + " outside the admissible interval (" +
                                                          std::to_string(c.t_min) + ", " + std::to_string(c.t_max) + ")");
    for (std::size_t k = 0; k < n; ++k) {
        if (!selected(mask, int(k))) continue;
        if (!(c.lambda[k] > 0.0) || !(c.z21_2[k] > 0.0))
            throw GeometryError(ErrorKind::InadmissibleT,
                                "lambda or z21 not positive at sample " + std::to_string(k) + " for t = " + std::to_string(t));
    }
    return c;
}

LiftFrame build_U(const FrameField& F, const FrameField& G, double t, const Mask* mask)
{
    if (!same_sampling(F.grid, G.grid))
        throw GeometryError(ErrorKind::InvalidArgument, "lift needs f and f^+ on one grid");
    const int n = F.grid.size();
    LiftFrame L;
    L.t = t;
    L.grid = F.grid;
    L.mask.assign(n, 0);
    for (int k = 0; k < n; ++k)
        L.mask[k] = selected(mask, k) && std::exp(F.omega[k] + G.omega[k]) > 1.0;
    const LiftCoefficients c = lift_coefficients(F.omega, G.omega, t, &L.mask);
    L.lambda_ = c.lambda;
    L.z12_3 = c.z12_3;
    L.z21_2 = c.z21_2;
    L.C.assign(n, 0.0);
    for (auto& u : L.U) u.assign(n, RealVec6::Zero());
    L.U13.assign(n, ComplexVec6::Zero());
    L.U56.assign(n, ComplexVec6::Zero());
    L.U13_t.assign(n, ComplexVec6::Zero());
    L.U56_t.assign(n, ComplexVec6::Zero());
    L.f1g1.resize(n);

    const Complex et = std::exp(-I * t);
    for (int k = 0; k < n; ++k) {
        const ComplexVec6& g1 = G.f1[k];
        const ComplexVec6 cf1 = F.f1[k].conjugate();
        L.f1g1[k] = cbilinear(F.f1[k], g1);
        L.U[1][k] = G.f0[k];
        L.U[3][k] = F.f0[k];
        const double e = std::exp(F.omega[k]), ep = std::exp(G.omega[k]);
        const double R2 = e * ep - 1.0;
        if (R2 <= 0.0) continue;
        const double R = std::sqrt(R2);
        const double lam = L.lambda_[k];
        const double C = std::sqrt(lam) / R;
        L.C[k] = C;
        // d lambda/dt = lambda^2 sin t R, dC/dt = lambda_t / (2 sqrt(lambda) R)
        const double lam_t = lam * lam * std::sin(t) * R;
        const double C_t = lam_t / (2.0 * std::sqrt(lam) * R);
        const ComplexVec6 p13 = (R + et * e) * g1 + I * et * cf1;
        const ComplexVec6 p56 = et * g1 + I * (R + et * ep) * cf1;
        L.U13[k] = -C * p13;
        L.U56[k] = C * p56;
        L.U13_t[k] = -C_t * p13 - C * (-I * et * e * g1 + et * cf1);
        L.U56_t[k] = C_t * p56 + C * (-I * et * g1 + et * ep * cf1);
        L.U[0][k] = L.U13[k].real();
        L.U[2][k] = L.U13[k].imag();
        L.U[4][k] = L.U56[k].real();
        L.U[5][k] = L.U56[k].imag();
    }
    return L;
}

double lift_gram_residual(const LiftFrame& L)
{
    double worst = 0.0;
    for (int k = 0; k < L.grid.size(); ++k) {
        if (!L.mask[k]) continue;
        Matrix6d U;
        for (int c = 0; c < 6; ++c) U.col(c) = L.U[c][k];
        worst = std::max(worst, (U.transpose() * U - Matrix6d::Identity()).cwiseAbs().maxCoeff());
    }
    return worst;
}

double lift_volume_residual(const LiftFrame& L)
{
    double worst = 0.0;
    for (int k = 0; k < L.grid.size(); ++k) {
        if (!L.mask[k]) continue;
        Matrix6d U;
        for (int c = 0; c < 6; ++c) U.col(c) = L.U[c][k];
        worst = std::max(worst, std::abs(U.determinant() - 1.0));
    }
    return worst;
}

LiftForms omega_forms(const LiftFrame& L, const FrameField& F, const FrameField& G, double tol)
{
    const Grid2& g = L.grid;
    const int n = g.size();
    const VectorField d13 = wirtinger_d(g, L.U13);
    const VectorField db13 = wirtinger_dbar(g, L.U13);
    const VectorField db56 = wirtinger_dbar(g, L.U56);
    const VectorField d13u = partial_u(g, L.U13), d13v = partial_v(g, L.U13);
    const VectorField dg = wirtinger_d(g, G.f0), df = wirtinger_d(g, F.f0);
    ScalarField gap(n);
    for (int k = 0; k < n; ++k) gap[k] = F.omega[k] - G.omega[k];
    const ComplexField db_gap = wirtinger_dbar(g, gap);
    SampledSurface gs;
    gs.grid = G.grid;
    gs.values = G.f0;
    const ComplexField gp = gamma(F, gs);

    LiftForms W;
    W.omega1_dbar.assign(n, 0.0);
    W.c_lift.assign(n, 0.0);
    W.a_lift.assign(n, 0.0);
    W.b_lift.assign(n, 0.0);
    W.z22_3.assign(n, 0.0);
    W.z32_3.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        if (!L.mask[k]) continue;
        const double lam = L.lambda_[k], sl = std::sqrt(lam);
        const double s = std::exp(F.omega[k] + G.omega[k]);
        const Complex q = -0.25 * I * (2.0 * I * std::conj(gp[k]) + s * db_gap[k]) / (s - 1.0);
        W.omega1_dbar[k] = q;
        const ComplexVec6 c13 = L.U13[k].conjugate(), c56 = L.U56[k].conjugate();

        const Complex t13 = cbilinear(L.U13_t[k], c56);
        W.dt_projection = std::max(W.dt_projection, std::abs(t13 - I * lam));
        const Complex t11 = cbilinear(L.U13_t[k], c13), t55 = cbilinear(L.U56_t[k], c56);
        W.dt_z12 = std::max(W.dt_z12, std::abs(t11 - t55 + 2.0 * I * L.z12_3[k]));
        W.dbar_projection = std::max(W.dbar_projection, std::abs(cbilinear(db13[k], c56) + 2.0 * I * lam * q));
        W.omega1_sum = std::max({W.omega1_sum, std::abs(t11 + t55 + 2.0 * I),
                                 std::abs(cbilinear(db13[k], c13) + cbilinear(db56[k], c56) - 4.0 * I * q)});
        W.defining_g = std::max(W.defining_g, (2.0 * sl * dg[k] - 2.0 * sl * G.f1[k]).norm());
        W.defining_f = std::max(W.defining_f, (2.0 * sl * df[k] - 2.0 * sl * F.f1[k]).norm());

        const Complex c = 0.5 * sl * (cbilinear(d13[k], c56) + 2.0 * I * lam * std::conj(q));
        W.c_lift[k] = c;
        W.b_lift[k] = -c.real();
        W.a_lift[k] = -c.imag();
        const double w1x = 2.0 * q.real(), w1y = 2.0 * q.imag();
        W.z22_3[k] = (sl * (cbilinear(d13u[k], c13) / (2.0 * I) - (1.0 + L.z12_3[k]) * w1x)).real();
        W.z32_3[k] = (sl * (cbilinear(d13v[k], c13) / (2.0 * I) - (1.0 + L.z12_3[k]) * w1y)).real();
    }
    if (tol > 0.0) {
        const std::pair<const char*, double> ids[] = {
            {"(d(U1+iU3), U5-iU6)(d/dt) = i lambda", W.dt_projection},
            {"z12 relation on d/dt", W.dt_z12},
            {"(d(U1+iU3), U5-iU6)(dbar) = -2i lambda omega1(dbar)", W.dbar_projection},
            {"omega1 defining sum", W.omega1_sum},
        };
        for (const auto& [name, value] : ids)
            if (value > tol)
                throw GeometryError(ErrorKind::StructureViolation,
                                    std::string(name) + " violated by " + std::to_string(value));
    }
    return W;
}

const char* BipolarSpecialization::name(int i)
{
    static const char* names[] = {"lambda", "z21", "z12", "omega1", "omega2", "omega3", "b", "a", "z32", "z22"};
    return names[i];
}

BipolarSpecialization bipolar_specialization(const LiftFrame& L, const LiftForms& W, const FrameField& F)
{
    const Grid2& g = L.grid;
    const int n = g.size();
    ScalarField eta(n);
    for (int k = 0; k < n; ++k) eta[k] = std::acosh(std::max(std::exp(F.omega[k]), 1.0));
    const ScalarField ex = partial_u(g, eta), ey = partial_v(g, eta);
    const double st = std::sin(L.t), ct = std::cos(L.t);
    BipolarSpecialization B;
    auto& r = B.residual;
    for (int k = 0; k < n; ++k) {
        if (!L.mask[k]) continue;
        const double ch = std::cosh(eta[k]), sh = std::sinh(eta[k]);
        const double lam = 1.0 / (ch + ct * sh);
        const double l32 = std::pow(lam, 1.5);
        const double w = ct * ch + sh;
        const double v[10] = {
            std::abs(L.lambda_[k] - lam),
            std::abs(L.z21_2[k] - st * sh * lam),
            std::abs(L.z12_3[k]),
            std::abs(W.omega1_dbar[k]) + std::abs(W.omega1_dt + 0.5),
            W.defining_g,
            W.defining_f,
            std::abs(W.b_lift[k] - 0.5 * l32 * ey[k] * st),
            std::abs(W.a_lift[k] - 0.5 * l32 * ex[k] * st),
            std::abs(W.z32_3[k] - 0.5 * l32 * ex[k] * w),
            std::abs(W.z22_3[k] + 0.5 * l32 * ey[k] * w),
        };
        for (int i = 0; i < 10; ++i) r[i] = std::max(r[i], v[i]);
    }
    return B;
}

std::vector<double> t_grid(double t_min, double t_max, int count)
{
    std::vector<double> ts(count);
    for (int k = 0; k < count; ++k) ts[k] = t_min + (k + 1) * (t_max - t_min) / (count + 1);
    return ts;
}

Field<ComplexVec4> BipolarLift::F_at(double t) const
{
    Field<ComplexVec4> F(source.G1.values.size());
    const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
    for (std::size_t k = 0; k < F.size(); ++k)
        F[k] = source.G1.values[k].cast<Complex>() * c + I * s * source.G2.values[k].cast<Complex>();
    return F;
}

BipolarLift bipolar_lift(const S3Surface& s, const std::vector<double>& ts)
{
    BipolarLift out;
    out.source = s;
    out.s3 = check_s3_minimal(s);
    out.complex_form = bipolar_complex_form(s);
    const Grid2& g = s.grid();
    const int n = g.size();
    const int sigma = out.s3.orientation;
    const ScalarField eu = partial_u(g, s.eta), ev = partial_v(g, s.eta);

    for (double t : ts) {
        HorizontalLiftReport r;
        r.t = t;
        const double c = std::cos(0.5 * t), sn = std::sin(0.5 * t);
        const Field<ComplexVec4> F = out.F_at(t);
        Field<ComplexVec4> Ft(n), Ftt(n);
        for (int k = 0; k < n; ++k) {
            Ft[k] = -0.5 * sn * s.G1.values[k].cast<Complex>() + 0.5 * I * c * s.G2.values[k].cast<Complex>();
            Ftt[k] = -0.25 * c * s.G1.values[k].cast<Complex>() - 0.25 * I * sn * s.G2.values[k].cast<Complex>();
        }
        const Field<ComplexVec4> Fx = partial_u(g, F), Fy = partial_v(g, F);
        const Field<ComplexVec4> Ftx = partial_u(g, Ft), Fty = partial_v(g, Ft);
        const Hessian<ComplexVec4> H = hessian_uv(g, F);
        const double st = std::sin(t), ct = std::cos(t);

        std::vector<ComplexVec6> lhs(n), rhs(n);
        Complex num(0.0), den(0.0);
        for (int k = 0; k < n; ++k) {
            const double ch = std::cosh(s.eta[k]), sh = std::sinh(s.eta[k]);
            const double D = ch + ct * sh;
            const Complex p = (ct * ch + I * st + sh) / (2.0 * D);
            const Complex m = (ct * ch - I * st + sh) / (2.0 * D);
            const double res[5] = {
                (Ftx[k] + (I + st * sh) / (2.0 * D) * Fx[k]).norm(),
                (Fty[k] - (I - st * sh) / (2.0 * D) * Fy[k]).norm(),
                (H.uu[k] - (-D * F[k] + 2.0 * (st * sh - I) * Ft[k] + eu[k] * p * Fx[k] - ev[k] * m * Fy[k])).norm(),
                (H.uv[k] - (ev[k] * p * Fx[k] + eu[k] * m * Fy[k])).norm(),
                (H.vv[k] - (-D * F[k] + 2.0 * (I + st * sh) * Ft[k] - eu[k] * p * Fx[k] + ev[k] * m * Fy[k])).norm(),
            };
            for (int q = 0; q < 5; ++q) r.system[q] = std::max(r.system[q], res[q]);
            r.Ftt = std::max(r.Ftt, (Ftt[k] + 0.25 * F[k]).norm());
            r.unit = std::max(r.unit, std::abs(F[k].norm() - 1.0));
            r.horizontal = std::max(r.horizontal, std::abs(F[k].dot(Ft[k])));

            const double lam = 1.0 / D;
            lhs[k] = (wedge<Complex>(F[k], ComplexVec4(-2.0 * Ft[k])) - lam * wedge<Complex>(Fx[k], Fy[k])) /
                     (I * std::sqrt(2.0));
            rhs[k] = include_complex(wedge<double>(s.G1.values[k], s.G2.values[k]), sigma);
            num += rhs[k].dot(lhs[k]);
            den += rhs[k].squaredNorm();
        }
        r.phase = num / den;
        r.phase /= std::abs(r.phase);
        for (int k = 0; k < n; ++k) r.complex_form = std::max(r.complex_form, (lhs[k] - r.phase * rhs[k]).norm());
        out.per_t.push_back(r);
    }
    return out;
}

} // namespace minsurf
