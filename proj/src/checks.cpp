#include "minsurf/checks.hpp"

#include "minsurf/catalog.hpp"

#include <cmath>

namespace minsurf {

namespace {

const Complex I(0.0, 1.0);

double masked_max(const ScalarField& f, const Mask* mask = nullptr) { return max_abs(f, mask); }

std::string eps_name(int eps) { return eps > 0 ? "+" : "-"; }

void stamp(CheckReport& r, const std::string& suite, const Grid2& g, const std::string& provenance)
{
    r.suite = suite;
    r.grid = g.nx;
    r.order = g.order;
    r.provenance = provenance;
}

Mask coupling_for(const FrameField& F, const SampledSurface& fe, double kappa)
{
    return coupling_mask(symmetric_invariants(F, fe), kappa);
}

} // namespace

void RunConfig::validate() const
{
    if (grid < 16) throw GeometryError(ErrorKind::InvalidArgument, "grid resolution must be at least 16");
    if (!(C > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "tolerance constant C must be positive");
    if (order != 2 && order != 4) throw GeometryError(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
    if (t_samples < 1) throw GeometryError(ErrorKind::InvalidArgument, "need at least one t sample");
}

void CheckReport::add(const std::string& name, double residual, double tolerance, bool ratio_required)
{
    checks.push_back({name, residual, tolerance, residual <= tolerance, ratio_required});
}

void CheckReport::require(const std::string& name, bool ok) { add(name, ok ? 0.0 : 1.0, 0.0); }

void CheckReport::merge(const CheckReport& other, const std::string& prefix)
{
    for (Check c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(c);
    }
    for (Convergence c : other.convergence) {
        c.name = prefix + c.name;
        convergence.push_back(c);
    }
    if (!other.details.empty()) details[prefix.empty() ? other.suite : prefix] = other.details;
}

bool CheckReport::passed() const { return !first_failure(); }

std::optional<std::string> CheckReport::first_failure() const
{
    for (const Check& c : checks)
        if (!c.pass) return c.name;
    for (const Convergence& c : convergence)
        if (!c.pass) return "convergence of " + c.name;
    return std::nullopt;
}

const Check* CheckReport::find(const std::string& name) const
{
    for (const Check& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

Json CheckReport::to_json() const
{
    Json j;
    j["suite"] = suite;
    j["provenance"] = {{"catalog", provenance}, {"grid", grid}, {"stencil", order}};
    Json cs = Json::array();
    for (const Check& c : checks)
        cs.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    j["checks"] = std::move(cs);
    if (!convergence.empty()) {
        Json cv = Json::array();
        for (const Convergence& c : convergence)
            cv.push_back({{"name", c.name},
                          {"coarse", c.coarse},
                          {"fine", c.fine},
                          {"ratio", c.ratio},
                          {"required", c.required},
                          {"pass", c.pass}});
        j["convergence"] = std::move(cv);
    }
    if (!details.empty()) j["details"] = details;
    j["pass"] = passed();
    const auto failure = first_failure();
    j["first_failure"] = failure ? Json(*failure) : Json(nullptr);
    return j;
}

CheckReport with_convergence(const CheckReport& coarse, const CheckReport& fine, double min_ratio)
{
    CheckReport out = coarse;
    out.checks.clear();
    out.merge(coarse, "h: ");
    out.merge(fine, "h/2: ");
    out.details = Json::object();
    out.details["h"] = coarse.details;
    out.details["h/2"] = fine.details;
    for (const Check& c : coarse.checks) {
        const Check* f = fine.find(c.name);
        if (!f) continue;
        Convergence v;
        v.name = c.name;
        v.coarse = c.residual;
        v.fine = f->residual;
        v.ratio = f->residual > 0.0 ? c.residual / f->residual : INFINITY;
        v.required = c.ratio_required ? min_ratio : 0.0;
        v.pass = !c.ratio_required || v.ratio >= min_ratio;
        out.convergence.push_back(v);
    }
    return out;
}

SampledSurface adapted_bipolar(const S3Surface& s) { return adapt_coordinate(bipolar(s)).surface; }

CheckReport transform_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "transforms", g, f.provenance);
    const double t2 = cfg.tol(g, 2);
    const FrameField F = build_frame(f);
    const Mask M = regular_mask(F, cfg.kappa);
    for (int eps : {1, -1}) {
        const std::string e = eps_name(eps);
        const SampledSurface fe = transform(f, F, eps);
        const SecondOrderData d = second_order_data(fe);
        double adapted = 0.0;
        for (const Complex& q : d.Q) adapted = std::max(adapted, std::abs(q + 1.0));
        r.add("f" + e + " unit norm", max_norm_defect(fe), 1e-12);
        r.add("f" + e + " conformality |(f1,f1)|", masked_max(conformal_defect(fe)), t2, true);
        r.add("f" + e + " adaptedness |(f2,f2)+1|", adapted, t2, true);
        r.add("f" + e + " minimality |d dbar f - mu f|", takahashi_residual(fe).residual, t2, true);

        double probe[4] = {0, 0, 0, 0};
        for (int k = 0; k < g.size(); ++k) {
            const ComplexVec6 v = fe.values[k].cast<Complex>();
            probe[0] = std::max(probe[0], std::abs(v.dot(F.f0[k].cast<Complex>())));
            probe[1] = std::max(probe[1], std::abs(cbilinear(v, F.f1[k])));
            probe[2] = std::max(probe[2], std::abs(cbilinear(v, F.f2[k]) - I));
            probe[3] = std::max(probe[3], std::abs(v.dot(F.N[k].cast<Complex>()) - eps * std::tanh(F.phi[k])));
        }
        r.add("f" + e + " probe (f^e,f0) = 0", probe[0], t2);
        r.add("f" + e + " probe (f^e,f1) = 0", probe[1], t2);
        r.add("f" + e + " probe (f^e,f2) = i", probe[2], t2);
        r.add("f" + e + " probe (f^e,N) = e tanh phi", probe[3], t2);

        const EpsilonJet J = epsilon_jet(F, eps);
        const VectorField f1_fd = wirtinger_d(g, fe.values);
        double jet[3] = {0, 0, 0};
        for (int k = 0; k < g.size(); ++k) {
            if (!M[k]) continue;
            jet[0] = std::max(jet[0], (J.f1_eps[k] - f1_fd[k]).norm());
            jet[1] = std::max(jet[1], std::abs(cbilinear(J.d_f1_eps[k], J.d_f1_eps[k]) + 1.0));
            jet[2] = std::max(jet[2], std::abs(cbilinear(J.f2_eps[k], J.f2_eps[k]) + 1.0));
        }
        r.add("f" + e + " jet f1 closed form vs finite differences", jet[0], t2);
        r.add("f" + e + " jet (d f1,d f1)+1", jet[1], t2);
        r.add("f" + e + " jet (f2,f2)+1", jet[2], t2);
    }
    r.details["regular_mask_points"] = mask_count(M);
    return r;
}

CheckReport inverse_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "mutual inverses", g, f.provenance);
    TransformSequence seq(f);
    for (int eps : {1, -1}) {
        const SampledSurface back = transform(seq.surface(eps), seq.frame(eps), -eps);
        const std::string name = eps > 0 ? "|(f+)- - f|" : "|(f-)+ - f|";
        r.add(name, masked_max(pointwise_distance(back, f)), cfg.tol(g, 2), true);
    }
    return r;
}

CheckReport volume_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "volume identities", g, f.provenance);
    const double t2 = cfg.tol(g, 2);
    const FrameField F = build_frame(f);
    r.add("vol(F) + e^omega sinh 2phi", masked_max(volume_identity_residual(F)), t2);
    for (int eps : {1, -1}) {
        const std::string e = eps_name(eps);
        const SampledSurface fe = transform(f, F, eps);
        const Mask M = coupling_for(F, fe, cfg.kappa);
        const SymmetricFrameReport B = symmetric_frame(F, fe, eps, &M);
        r.add("vol(B" + e + ") + e(e^(omega+omega^e) - 1)", masked_max(B.volume, &M), t2);
        r.add("det Gram(B" + e + ") - (e^(omega+omega^e) - 1)^2", masked_max(B.det_B, &M), t2);
        r.add("Gram(B" + e + ") entries", B.gram_B, t2);
        r.details["coupling_mask_points" + e] = mask_count(M);
    }
    return r;
}

CheckReport integrability_suite(const S3Surface& s, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = s.grid();
    stamp(r, "integrability", g, s.G1.provenance);
    const SampledSurface f = adapted_bipolar(s);
    const double t1 = cfg.tol(f.grid, 1), t2 = cfg.tol(f.grid, 2);
    const FrameField F = build_frame(f);
    const Mask M = regular_mask(F, cfg.kappa);
    const SystemFResidual sf = residual_system_F(invariants_of(F), &M);
    r.add("F-system alpha equation", sf.alpha_eq, t1);
    r.add("F-system omega equation", sf.omega_eq, t1);
    r.add("F-system phi equation", sf.phi_eq, t1);
    for (int eps : {1, -1}) {
        const std::string e = eps_name(eps);
        const SampledSurface fe = transform(f, F, eps);
        const SymmetricInvariants si = symmetric_invariants(F, fe);
        const Mask Mc = coupling_mask(si, cfg.kappa);
        const SystemBResidual sb = residual_system_B(si, &Mc);
        r.add("B" + e + "-system gamma equation", sb.gamma_eq, t1);
        r.add("B" + e + "-system omega equation", sb.omega_eq, t1);
        r.add("B" + e + "-system omega^e equation", sb.omega_eps_eq, t1);
    }

    r.add("sinh-Gordon on catalog eta", residual_sinh_gordon(g, s.eta), cfg.tol(g, 2));

    // omega <-> eta: the catalog eta must give omega = log cosh eta solving the
    // reduced omega equation, and the measured omega must map back to |eta|.
    ScalarField sh(g.size()), omega_of_eta(g.size());
    for (int k = 0; k < g.size(); ++k) {
        sh[k] = std::abs(std::sinh(s.eta[k]));
        omega_of_eta[k] = std::log(std::cosh(s.eta[k]));
    }
    const Mask Me = threshold_mask(g, sh, cfg.kappa, stencil_reach(g));
    r.add("reduced omega equation on log cosh eta", residual_reduced_omega(g, omega_of_eta, &Me), cfg.tol(g, 2));
    const ScalarField eta_back = substitute(omega_of_eta);
    double back = 0.0, metric = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        back = std::max(back, std::abs(eta_back[k] - std::abs(s.eta[k])));
        metric = std::max(metric, std::abs(std::exp(F.omega[k]) - std::cosh(s.eta[k])));
    }
    r.add("substitution round trip |acosh(e^omega)| = |eta|", back, 1e-10);
    r.add("bipolar metric e^omega = cosh eta", metric, t2);
    r.details["sinh_gordon_on_measured_omega"] = residual_sinh_gordon(f.grid, substitute(F.omega, t2), &Me);
    r.details["regular_mask_points"] = mask_count(M);
    r.details["eta_mask_points"] = mask_count(Me);
    return r;
}

CheckReport bipolar_suite(const S3Surface& s, const S3Surface& degenerate, const RunConfig& cfg)
{
    CheckReport r;
    const SampledSurface f = adapted_bipolar(s);
    stamp(r, "bipolar characterization", f.grid, f.provenance);
    const double t2 = cfg.tol(f.grid, 2);
    const BipolarCharacterization b = verify_bipolar_characterization(f, t2, cfg.kappa);
    r.add("max |gamma+|", b.max_gamma, t2);
    r.add("constant reflection |f+ - A f|", b.reflection_fit, t2);
    r.add("|omega - omega+|", b.omega_gap, t2);
    r.require("gamma+ = 0 iff f+ = A f", b.consistent);
    r.require("reflection reconstructed from frames", b.reflection.has_value());
    if (b.reflection) {
        const GammaReflection& A = *b.reflection;
        r.add("||A^2 - I|| of the fitted map", A.fit_defect, 1e-8);
        r.add("||A^2 - I|| after projection", A.involution_defect, 1e-8);
        r.add("|det A + 1|", std::abs(A.det + 1.0), 1e-8);
        r.add("pointwise A(z) deviation", A.z_deviation, t2);
        r.add("|f+ - A f| for the frame-built A", A.residual, t2);
    }
    r.details["bipolar_by_provenance"] = b.bipolar_by_provenance;

    std::string rejection = "accepted";
    try {
        build_frame(adapt_coordinate(bipolar(degenerate)).surface);
    } catch (const GeometryError& e) {
        if (e.kind() == ErrorKind::DegenerateEllipse || e.kind() == ErrorKind::CircularEllipse) rejection = e.what();
        else throw;
    }
    r.require(degenerate.G1.provenance + " bipolar rejected as degenerate", rejection != "accepted");
    r.details["degenerate_rejection"] = rejection;
    return r;
}

CheckReport sequence_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "sequence", g, f.provenance);
    const double t2 = cfg.tol(g, 2);
    TransformSequence seq(f);
    double pair = 0.0, adapted = 0.0, round_trip = 0.0;
    std::vector<SequenceEntry> entries;
    for (int p = -2; p <= 2; ++p) entries.push_back(seq.entry(p));
    for (int p = -2; p < 2; ++p) {
        const SequenceEntry& e = entries[p + 2];
        const SequenceEntry& next = entries[p + 3];
        for (std::size_t k = 0; k < e.gamma_next.size(); ++k)
            pair = std::max(pair, std::abs(next.delta_prev[k] + e.gamma_next[k]));
        const SampledSurface back = transform(next.surface, next.frame, -1);
        round_trip = std::max(round_trip, masked_max(pointwise_distance(back, e.surface)));
    }
    Json summary = Json::array();
    for (const SequenceEntry& e : entries) {
        for (const Complex& q : e.frame.Q) adapted = std::max(adapted, std::abs(q + 1.0));
        summary.push_back({{"p", e.p},
                           {"max_alpha", max_abs(e.frame.alpha)},
                           {"max_gamma_next", max_abs(e.gamma_next)},
                           {"degenerate_fraction", e.frame.degenerate_fraction}});
    }
    r.add("delta^(p+1) + gamma^p, p in [-2,1]", pair, t2);
    r.add("(f2^p, f2^p) + 1, p in [-2,2]", adapted, t2);
    r.add("round trip ((f^p)+)- = f^p", round_trip, t2);
    Matrix6d A = Matrix6d::Identity();
    A(0, 0) = -1.0;
    r.add("coordinate reflection (A f)^e = A f^-e", reflection_equivariance(f, A), t2);
    r.details["entries"] = summary;
    return r;
}

CheckReport lift_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "lift", g, f.provenance);
    const double t1 = cfg.tol(g, 1), t2 = cfg.tol(g, 2);
    const FrameField F = build_frame(f);
    const SampledSurface fp = transform(f, F, 1);
    const FrameField G = build_frame(fp);
    const Mask M = coupling_mask(symmetric_invariants(F, fp), cfg.kappa_lift);
    Mask admissible = M;
    for (int k = 0; k < g.size(); ++k) admissible[k] = M[k] && std::exp(F.omega[k] + G.omega[k]) > 1.0;
    LiftCoefficients probe;
    bool has_interval = true;
    try {
        probe = lift_coefficients(F.omega, G.omega, 0.5 * M_PI, &admissible);
    } catch (const GeometryError&) {
        has_interval = false;
    }
    r.require("nonempty admissible t-interval containing pi/2", has_interval);
    if (!has_interval) return r;
    const std::vector<double> ts = cfg.t ? std::vector<double>{*cfg.t} : t_grid(probe.t_min, probe.t_max, cfg.t_samples);

    double gram = 0, vol = 0, dU2 = 0, ids[4] = {0, 0, 0, 0}, defining = 0, omega1_dt = 0;
    std::array<double, 10> specialization{};
    std::vector<RealVectorField> U2;
    for (double t : ts) {
        const LiftFrame L = build_U(F, G, t, &M);
        const LiftForms W = omega_forms(L, F, G);
        const BipolarSpecialization B = bipolar_specialization(L, W, F);
        gram = std::max(gram, lift_gram_residual(L));
        vol = std::max(vol, lift_volume_residual(L));
        ids[0] = std::max(ids[0], W.dt_projection);
        ids[1] = std::max(ids[1], W.dt_z12);
        ids[2] = std::max(ids[2], W.dbar_projection);
        ids[3] = std::max(ids[3], W.omega1_sum);
        defining = std::max({defining, W.defining_g, W.defining_f});
        omega1_dt = std::max(omega1_dt, std::abs(W.omega1_dt + 0.5));
        for (int i = 0; i < 10; ++i) specialization[i] = std::max(specialization[i], B.residual[i]);
        U2.push_back(L.U[1]);
    }
    // d U2 / dt by centered differences across the t-samples
    for (std::size_t q = 1; q + 1 < ts.size(); ++q)
        for (int k = 0; k < g.size(); ++k)
            if (M[k]) dU2 = std::max(dU2, (U2[q + 1][k] - U2[q - 1][k]).norm() / (ts[q + 1] - ts[q - 1]));

    r.add("Gram(U) - I", gram, t2);
    r.add("vol(U) - 1", vol, t2);
    r.add("dU2(d/dt)", dU2, t1);
    r.add("(d(U1+iU3), U5-iU6)(d/dt) = i lambda", ids[0], t1);
    r.add("z12 relation (dU13,U13*)(d/dt) - (dU56,U56*)(d/dt) = -2i z12", ids[1], t1);
    r.add("(d(U1+iU3), U5-iU6)(dbar) = -2i lambda omega1(dbar)", ids[2], t1);
    r.add("omega1 from the diagonal projections", ids[3], t1);
    r.add("omega1(d/dt) = -1/2", omega1_dt, 1e-14);
    r.add("defining relations of U2 and U4", defining, t1);
    for (int i = 0; i < 10; ++i) r.add(std::string("bipolar specialization ") + BipolarSpecialization::name(i), specialization[i], t2);
    r.details["t_interval"] = {probe.t_min, probe.t_max};
    r.details["t_samples"] = ts;
    r.details["lift_mask_points"] = mask_count(M);
    return r;
}

CheckReport horizontal_lift_suite(const S3Surface& s, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = s.grid();
    stamp(r, "horizontal lift", g, s.G1.provenance);
    const double t2 = cfg.tol(g, 2);
    const std::vector<double> ts = cfg.t ? std::vector<double>{*cfg.t} : t_grid(0.0, M_PI, cfg.t_samples);
    const BipolarLift B = bipolar_lift(s, ts);
    double Ftt = 0, unit = 0, hor = 0, u4 = 0;
    std::array<double, 5> sys{};
    Json phases = Json::array();
    for (const HorizontalLiftReport& h : B.per_t) {
        Ftt = std::max(Ftt, h.Ftt);
        unit = std::max(unit, h.unit);
        hor = std::max(hor, h.horizontal);
        u4 = std::max(u4, h.complex_form);
        for (int q = 0; q < 5; ++q) sys[q] = std::max(sys[q], h.system[q]);
        phases.push_back({h.phase.real(), h.phase.imag()});
    }
    r.add("F_tt + F/4", Ftt, 1e-12);
    r.add("|F| - 1", unit, 1e-12);
    r.add("<F_t, F>", hor, 1e-12);
    static const char* names[5] = {"F_tu equation", "F_tv equation", "F_uu equation", "F_uv equation",
                                   "F_vv equation"};
    for (int q = 0; q < 5; ++q) r.add(names[q], sys[q], t2);
    r.add("S3 structure equations", B.s3.max_structure(), t2);
    r.add("G2_u = -e^-eta G1_u", B.s3.normal_u, t2);
    r.add("G2_v = e^-eta G1_v", B.s3.normal_v, t2);
    r.add("complex form of the bipolar up to one phase", B.complex_form.residual, t2);
    r.add("U4 formula reproduces the complex form", u4, t2);
    r.details["complex_form_phase"] = {B.complex_form.phase.real(), B.complex_form.phase.imag()};
    r.details["orientation"] = B.complex_form.orientation;
    r.details["U4_phases"] = phases;
    return r;
}

CheckReport reconstruction_suite(const SampledSurface& f, const RunConfig& cfg)
{
    CheckReport r;
    const Grid2& g = f.grid;
    stamp(r, "reconstruction", g, f.provenance);
    const double t1 = cfg.tol(g, 1);
    const FrameField F = build_frame(f);

    double top = 0.0;
    for (double p : F.phi) top = std::max(top, std::sinh(p));
    std::vector<bool> good(g.ny);
    for (int j = 0; j < g.ny; ++j) {
        double low = INFINITY;
        for (int i = 0; i < g.nx; ++i) low = std::min(low, std::sinh(F.phi[g.index(i, j)]));
        good[j] = low >= cfg.kappa * top;
    }
    int best = 0, start = 0;
    for (int s = 0; s < g.ny; ++s) {
        const bool opens = g.periodic_y ? !good[(s - 1 + g.ny) % g.ny] : (s == 0 || !good[s - 1]);
        if (!good[s] || !opens) continue;
        int len = 0;
        while (len < g.ny && good[(s + len) % g.ny] && (g.periodic_y || s + len < g.ny)) ++len;
        if (len > best) {
            best = len;
            start = s;
        }
    }
    if (best == g.ny) start = 0;
    r.require("strip of nondegenerate rows", best >= 3);
    if (best < 3) return r;

    IntegrationOptions o;
    o.j0 = (start + best / 2) % g.ny;
    o.rows_down = best / 2;
    o.rows_up = best - 1 - best / 2;
    const InvariantTriple inv = invariants_of(F);
    o.rows_first = true;
    const FrameIntegration rows = integrate_frame_F(inv, std::nullopt, o);
    o.rows_first = false;
    const FrameIntegration cols = integrate_frame_F(inv, std::nullopt, o);

    auto distance = [&](const FrameIntegration& run) {
        const Matrix6d A = procrustes(run.surface.values, f.values, &run.valid);
        double d = 0.0;
        for (int k = 0; k < g.size(); ++k)
            if (run.valid[k]) d = std::max(d, (A * run.surface.values[k] - f.values[k]).norm());
        return d;
    };
    r.add("Procrustes distance to the source", distance(rows), t1);
    if (g.periodic_x) r.add("holonomy around the x period", rows.holonomy, t1);
    const Matrix6d A = procrustes(cols.surface.values, rows.surface.values, &rows.valid);
    double cross = 0.0;
    for (int k = 0; k < g.size(); ++k)
        if (rows.valid[k] && cols.valid[k])
            cross = std::max(cross, (A * cols.surface.values[k] - rows.surface.values[k]).norm());
    r.add("rows-first vs columns-first", cross, t1);
    r.add("Procrustes distance, columns first", distance(cols), t1);
    r.details["strip_rows"] = {start, best};
    r.details["valid_points"] = mask_count(rows.valid);
    r.details["max_drift"] = std::max(rows.max_drift, cols.max_drift);
    return r;
}

const char* acceptance_title(int criterion)
{
    static const char* titles[] = {"transforms are conformal, adapted and minimal",
                                   "(+) and (-) are mutual inverses",
                                   "volume identities of the F- and B-frames",
                                   "integrability residuals",
                                   "bipolar characterization",
                                   "sequence identities",
                                   "lift frame",
                                   "horizontal lift",
                                   "frame reconstruction"};
    if (criterion < 1 || criterion > 9) throw GeometryError(ErrorKind::InvalidArgument, "criteria are numbered 1..9");
    return titles[criterion - 1];
}

CheckReport acceptance_suite(int criterion, const RunConfig& cfg)
{
    cfg.validate();
    acceptance_title(criterion);
    const S3Surface tau = conformalize_lawson(2, 1, cfg.grid, cfg.grid, cfg.order);
    const SampledSurface f = adapted_bipolar(tau);
    CheckReport r;
    switch (criterion) {
    case 1: r = transform_suite(f, cfg); break;
    case 2: r = inverse_suite(f, cfg); break;
    case 3: r = volume_suite(f, cfg); break;
    case 4: r = integrability_suite(tau, cfg); break;
    case 5: r = bipolar_suite(tau, clifford_torus(cfg.grid, cfg.grid, cfg.order), cfg); break;
    case 6: r = sequence_suite(f, cfg); break;
    case 7: r = lift_suite(f, cfg); break;
    case 8: {
        const CheckReport a = horizontal_lift_suite(clifford_torus(cfg.grid, cfg.grid, cfg.order), cfg);
        const CheckReport b = horizontal_lift_suite(tau, cfg);
        stamp(r, "horizontal lift", tau.grid(), "clifford, " + tau.G1.provenance);
        r.merge(a, "clifford: ");
        r.merge(b, tau.G1.provenance + ": ");
        break;
    }
    case 9: r = reconstruction_suite(f, cfg); break;
    }
    return r;
}

CheckReport check_document(const Json& doc, const RunConfig& cfg)
{
    CheckReport r;
    if (is_s3_document(doc)) {
        const S3Surface s = s3_from_json(doc);
        const Grid2& g = s.grid();
        stamp(r, "S3 surface", g, s.G1.provenance);
        const double t2 = cfg.tol(g, 2);
        const S3Report s3 = check_s3_minimal(s);
        r.add("|G1|, |G2|, (G1,G2)", s3.unit, 1e-10);
        r.add("metric e^eta |dw|^2", s3.metric, t2);
        r.add("quartic normalization", s3.quartic, t2);
        r.add("sinh-Gordon on eta", residual_sinh_gordon(g, s.eta), t2);
        r.merge(horizontal_lift_suite(s, cfg));
        return r;
    }
    SampledSurface f = surface_from_json<6>(doc);
    stamp(r, "S5 surface", f.grid, f.provenance);
    r.add("unit norm", max_norm_defect(f), 1e-10);
    if (!r.passed()) return r;
    AdaptedSurface a;
    FrameField F;
    try {
        a = adapt_coordinate(f);
        F = build_frame(a.surface);
    } catch (const GeometryError& e) {
        r.add("conformality |(f1,f1)|", masked_max(conformal_defect(f)), cfg.tol(f.grid, 2));
        r.add("minimality |d dbar f - mu f|", takahashi_residual(f).residual, cfg.tol(f.grid, 2));
        r.require("adapted frame", false);
        r.details["frame_error"] = e.what();
        return r;
    }
    f = a.surface;
    const Grid2& g = f.grid;
    r.details["mu"] = {a.mu.real(), a.mu.imag()};
    const double t1 = cfg.tol(g, 1), t2 = cfg.tol(g, 2);
    const Mask M = regular_mask(F, cfg.kappa);
    r.add("conformality |(f1,f1)|", masked_max(conformal_defect(f)), t2);
    r.add("minimality |d dbar f - mu f|", takahashi_residual(f).residual, t2);
    r.add("normal orthogonality", normal_orthogonality(F), 1e-10);
    r.add("Gram matrix of the frame", gram_residual(F, &M), t2);
    r.add("(a,a) - (b,b) + 1 and (a,b)", axis_identity_residual(F, &M), t2);
    r.add("frame equations", frame_equation_residual(F, &M).max(), t1);
    r.merge(transform_suite(f, cfg));
    r.merge(inverse_suite(f, cfg));
    r.merge(volume_suite(f, cfg));
    const BipolarCharacterization b = verify_bipolar_characterization(f, t2, cfg.kappa);
    r.require("gamma+ = 0 iff f+ = A f", b.consistent);
    r.details["max_gamma_plus"] = b.max_gamma;
    r.details["reflection_found"] = b.reflection_found;
    r.details["bipolar_by_provenance"] = b.bipolar_by_provenance;
    return r;
}

} // namespace minsurf
