#include "minsurf/bipolar.hpp"

#include <cmath>

namespace minsurf {

namespace {

const Complex I(0.0, 1.0);

} // namespace

S3Report check_s3_minimal(const S3Surface& s, const Mask* mask)
{
    const Grid2& g = s.grid();
    g.validate();
    const Field<RealVec4>& G1 = s.G1.values;
    const Field<RealVec4>& G2 = s.G2.values;
    const Field<RealVec4> G1u = partial_u(g, G1), G1v = partial_v(g, G1);
    const Field<RealVec4> G2u = partial_u(g, G2), G2v = partial_v(g, G2);
    const Hessian<RealVec4> H = hessian_uv(g, G1);
    const ScalarField eu = partial_u(g, s.eta), ev = partial_v(g, s.eta);

    S3Report r;
    int positive = 0;
    for (int k = 0; k < g.size(); ++k) {
        Eigen::Matrix4d M;
        M << G1[k], G1u[k], G1v[k], G2[k];
        if (M.determinant() > 0) ++positive;
        if (mask && !(*mask)[k]) continue;
        const double e = std::exp(s.eta[k]);
        const RealVec4 uu = H.uu[k] - (0.5 * eu[k] * G1u[k] - 0.5 * ev[k] * G1v[k] + G2[k] - e * G1[k]);
        const RealVec4 uv = H.uv[k] - (0.5 * ev[k] * G1u[k] + 0.5 * eu[k] * G1v[k]);
        const RealVec4 vv = H.vv[k] - (-0.5 * eu[k] * G1u[k] + 0.5 * ev[k] * G1v[k] - G2[k] - e * G1[k]);
        r.structure[0] = std::max(r.structure[0], uu.norm());
        r.structure[1] = std::max(r.structure[1], uv.norm());
        r.structure[2] = std::max(r.structure[2], vv.norm());
        r.normal_u = std::max(r.normal_u, (G2u[k] + G1u[k] / e).norm());
        r.normal_v = std::max(r.normal_v, (G2v[k] - G1v[k] / e).norm());
        r.unit = std::max({r.unit, std::abs(G1[k].norm() - 1.0), std::abs(G2[k].norm() - 1.0),
                           std::abs(G1[k].dot(G2[k]))});
        r.metric = std::max({r.metric, std::abs(G1u[k].squaredNorm() - e), std::abs(G1v[k].squaredNorm() - e),
                             std::abs(G1u[k].dot(G1v[k]))});
        // II(d, d) = (G1_dd, G2) G2 with G1_dd = (G1_uu - G1_vv - 2i G1_uv)/4
        const Complex q = 0.25 * Complex(H.uu[k].dot(G2[k]) - H.vv[k].dot(G2[k]), -2.0 * H.uv[k].dot(G2[k]));
        r.quartic = std::max(r.quartic, std::abs(q * q - 0.25));
    }
    r.orientation = 2 * positive >= g.size() ? 1 : -1;
    return r;
}

SampledSurface bipolar(const S3Surface& s)
{
    SampledSurface f;
    f.grid = s.grid();
    f.provenance = "bipolar(" + s.G1.provenance + ")";
    f.values.resize(s.G1.values.size());
    for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = wedge<double>(s.G1.values[k], s.G2.values[k]);
    return f;
}

ComplexFormCheck bipolar_complex_form(const S3Surface& s)
{
    const Grid2& g = s.grid();
    const Field<RealVec4> G1u = partial_u(g, s.G1.values), G1v = partial_v(g, s.G1.values);
    const int sigma = check_s3_minimal(s).orientation;
    const int n = g.size();
    std::vector<ComplexVec6> lhs(n), rhs(n);
    Complex num(0.0), den(0.0);
    for (int k = 0; k < n; ++k) {
        const Wedge2 w = wedge<double>(s.G1.values[k], s.G2.values[k]);
        const Wedge2 t = wedge<double>(G1u[k], G1v[k]);
        lhs[k] = (I * std::exp(-s.eta[k]) * t.cast<Complex>() - w.cast<Complex>()) / std::sqrt(2.0);
        rhs[k] = include_complex(w, sigma);
        num += rhs[k].dot(lhs[k]); // conjugates rhs
        den += rhs[k].squaredNorm();
    }
    ComplexFormCheck c;
    c.orientation = sigma;
    c.phase = num / den;
    c.phase /= std::abs(c.phase);
    for (int k = 0; k < n; ++k) c.residual = std::max(c.residual, (lhs[k] - c.phase * rhs[k]).norm());
    return c;
}

BipolarCharacterization verify_bipolar_characterization(const SampledSurface& f, double tol, double mask_fraction,
                                                        const FrameOptions& opts)
{
    BipolarCharacterization r;
    r.bipolar_by_provenance = f.provenance.rfind("bipolar(", 0) == 0;
    const FrameField F = build_frame(f, opts);
    const SampledSurface fp = transform(f, F, 1);
    const FrameField Fp = build_frame(fp, opts);

    const Matrix6d A = reversing_procrustes(f.values, fp.values);
    for (std::size_t k = 0; k < f.values.size(); ++k)
        r.reflection_fit = std::max(r.reflection_fit, (fp.values[k] - A * f.values[k]).norm());
    r.reflection_found = r.reflection_fit < tol;

    const SymmetricInvariants si = symmetric_invariants(F, fp);
    r.max_gamma = max_abs(si.gamma_eps);
    r.gamma_vanishes = r.max_gamma < tol;
    for (std::size_t k = 0; k < si.omega.size(); ++k)
        r.omega_gap = std::max(r.omega_gap, std::abs(si.omega[k] - si.omega_eps[k]));
    const Mask mask = coupling_mask(si, mask_fraction);
    r.reflection = detect_gamma_reflection(F, Fp, tol, &mask);
    r.consistent = r.gamma_vanishes == r.reflection_found;
    return r;
}

} // namespace minsurf
