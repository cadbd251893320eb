#include "minsurf/catalog.hpp"
#include "minsurf/checks.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

using namespace minsurf;
namespace fs = std::filesystem;

namespace {

struct GridArg {
    int nx = 64, ny = 64;
};

GridArg parse_grid(const std::string& text)
{
    std::smatch m;
    static const std::regex square(R"((\d+))"), rect(R"((\d+)[xX](\d+))");
    GridArg g;
    if (std::regex_match(text, m, rect)) {
        g.nx = std::stoi(m[1]);
        g.ny = std::stoi(m[2]);
    } else if (std::regex_match(text, m, square)) {
        g.nx = g.ny = std::stoi(m[1]);
    } else {
        throw GeometryError(ErrorKind::InvalidArgument, "--grid expects NxN, got '" + text + "'");
    }
    if (g.nx < 16 || g.ny < 16) throw GeometryError(ErrorKind::InvalidArgument, "grid resolution must be at least 16");
    return g;
}

std::pair<int, int> parse_steps(const std::string& text)
{
    std::smatch m;
    static const std::regex range(R"((-?\d+)\.\.(-?\d+))");
    if (!std::regex_match(text, m, range))
        throw GeometryError(ErrorKind::InvalidArgument, "--steps expects A..B, got '" + text + "'");
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > 0 || b < 0 || a > b) throw GeometryError(ErrorKind::InvalidArgument, "--steps needs A <= 0 <= B");
    return {a, b};
}

/// Rebuilds a surface document from its provenance: a catalog name, or
/// "bipolar(name)" followed by a chain of "+"/"-" transforms.
std::optional<Json> regenerate(const std::string& provenance, int nx, int ny, int order)
{
    static const std::regex chain(R"(bipolar\((.+)\)([+-]*))");
    std::smatch m;
    if (std::regex_match(provenance, m, chain)) {
        SampledSurface f = adapted_bipolar(catalog_surface(m[1], nx, ny, order));
        for (char c : std::string(m[2])) f = transform(f, build_frame(f), c == '+' ? 1 : -1);
        return surface_to_json(f);
    }
    try {
        return s3_to_json(catalog_surface(provenance, nx, ny, order));
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

S3Surface load_s3(const std::string& name_or_path, const GridArg& g, int order)
{
    if (!name_or_path.empty() && name_or_path != "-" && !fs::exists(name_or_path))
        return catalog_surface(name_or_path, g.nx, g.ny, order);
    const Json doc = read_json(name_or_path.empty() ? "-" : name_or_path);
    if (!is_s3_document(doc)) throw GeometryError(ErrorKind::InvalidArgument, "expected an S3 bundle {G1, G2, eta}");
    return s3_from_json(doc);
}

int finish(const CheckReport& r, const std::string& output)
{
    write_json(output, r.to_json(), 2);
    if (const auto failure = r.first_failure()) {
        std::cerr << "FAIL: " << *failure << "\n";
        return 1;
    }
    std::cerr << "PASS: " << r.checks.size() << " checks\n";
    return 0;
}

int run_catalog(const std::string& name, const GridArg& g, const RunConfig& cfg)
{
    write_json(cfg.output, s3_to_json(catalog_surface(name, g.nx, g.ny, cfg.order)));
    return 0;
}

int run_analyze(const RunConfig& cfg, const std::string& invariants_path)
{
    const Json doc = read_json(cfg.input);
    if (is_s3_document(doc)) return finish(check_document(doc, cfg), cfg.output);
    const SampledSurface raw = surface_from_json<6>(doc);
    const AdaptedSurface a = adapt_coordinate(raw);
    const SampledSurface& f = a.surface;
    const FrameField F = build_frame(f);
    const EllipseReport E = classify_ellipse(f);
    const Mask M = regular_mask(F, cfg.kappa);
    const Grid2& g = f.grid;

    CheckReport r;
    r.suite = "analyze";
    r.provenance = f.provenance;
    r.grid = g.nx;
    r.order = g.order;
    r.add("conformality |(f1,f1)|", max_abs(conformal_defect(raw)), cfg.tol(g, 2));
    r.add("minimality |d dbar f - mu f|", takahashi_residual(f).residual, cfg.tol(g, 2));
    r.add("normal orthogonality", normal_orthogonality(F), 1e-10);
    r.add("Gram matrix of the frame", gram_residual(F, &M), cfg.tol(g, 2));
    r.add("vol(F) + e^omega sinh 2phi", max_abs(volume_identity_residual(F)), cfg.tol(g, 2));
    r.add("frame equations", frame_equation_residual(F, &M).max(), cfg.tol(g, 1));
    r.add("F-system", residual_system_F(invariants_of(F), &M).max(), cfg.tol(g, 1));
    const NotFullReport full = fullness(f, F);
    r.details["mu"] = {a.mu.real(), a.mu.imag()};
    r.details["mean_Q"] = {a.mean_Q.real(), a.mean_Q.imag()};
    r.details["Q_spread"] = a.Q_spread;
    r.details["ellipse"] = to_string(E.classification);
    r.details["ellipse_fractions"] = E.fractions;
    r.details["degenerate_fraction"] = F.degenerate_fraction;
    r.details["max_alpha"] = max_abs(F.alpha);
    r.details["singular_values"] = std::vector<double>(full.singular_values.data(), full.singular_values.data() + 6);
    r.details["regular_mask_points"] = mask_count(M);
    if (!invariants_path.empty()) write_json(invariants_path, invariants_to_json(invariants_of(F)));
    return finish(r, cfg.output);
}

int run_sequence(const RunConfig& cfg, const std::string& steps, bool full_report)
{
    const auto [pmin, pmax] = parse_steps(steps);
    if (cfg.output.empty() || cfg.output == "-")
        throw GeometryError(ErrorKind::InvalidArgument, "--output must name a directory");
    fs::create_directories(cfg.output);
    const SampledSurface f = adapt_coordinate(surface_from_json<6>(read_json(cfg.input))).surface;
    const Grid2& g = f.grid;
    const double t2 = cfg.tol(g, 2);
    TransformSequence seq(f);

    CheckReport r;
    r.suite = full_report ? "sequence" : "transform";
    r.provenance = f.provenance;
    r.grid = g.nx;
    r.order = g.order;
    Json manifest;
    manifest["steps"] = {pmin, pmax};
    Json entries = Json::array();
    std::optional<int> broken;
    for (int p = pmin; p <= pmax; ++p) {
        try {
            const SequenceEntry e = seq.entry(p);
            const std::string file = "f_" + std::to_string(p) + ".json";
            write_json((fs::path(cfg.output) / file).string(), surface_to_json(e.surface));
            double adapted = 0.0;
            for (const Complex& q : e.frame.Q) adapted = std::max(adapted, std::abs(q + 1.0));
            Json entry = {{"p", p},
                          {"file", file},
                          {"max_alpha", max_abs(e.frame.alpha)},
                          {"max_gamma_next", max_abs(e.gamma_next)},
                          {"max_delta_prev", max_abs(e.delta_prev)},
                          {"adaptedness", adapted},
                          {"degenerate_fraction", e.frame.degenerate_fraction}};
            r.add("f^" + std::to_string(p) + " adaptedness", adapted, t2);
            for (int eps : {1, -1}) {
                if (p + eps < pmin || p + eps > pmax) continue;
                const SampledSurface back = transform(seq.surface(p + eps), seq.frame(p + eps), -eps);
                const double d = max_abs(pointwise_distance(back, e.surface));
                r.add("round trip f^" + std::to_string(p) + (eps > 0 ? " -> + -> -" : " -> - -> +"), d, t2);
            }
            if (full_report && p < pmax) {
                const SequenceEntry next = seq.entry(p + 1);
                double pair = 0.0;
                for (std::size_t k = 0; k < e.gamma_next.size(); ++k)
                    pair = std::max(pair, std::abs(next.delta_prev[k] + e.gamma_next[k]));
                r.add("delta^" + std::to_string(p + 1) + " + gamma^" + std::to_string(p), pair, t2);
            }
            entries.push_back(entry);
        } catch (const SequenceBreak& b) {
            broken = b.index();
            manifest["break"] = {{"index", b.index()}, {"error", b.what()}};
            r.require("sequence entry " + std::to_string(b.index()) + " has a valid frame", false);
            break;
        }
    }
    manifest["entries"] = entries;
    if (full_report && !broken) {
        if (const auto nf = detect_not_full(seq, 0, t2)) {
            manifest["not_full"] = {{"not_full", nf->not_full},
                                    {"max_alpha", nf->max_alpha},
                                    {"reflection_residual", nf->reflection_residual}};
        } else {
            manifest["not_full"] = nullptr;
        }
        if (pmax >= 1) {
            const CongruenceReport c = classify_congruence(seq, 0, 1);
            manifest["congruence_0_1"] = {{"parity", c.parity},
                                          {"procrustes", c.procrustes},
                                          {"det", c.det},
                                          {"min_alpha", c.min_alpha},
                                          {"alpha_index", c.alpha_index},
                                          {"min_gamma", c.min_gamma},
                                          {"gamma_index", c.gamma_index}};
        }
    }
    manifest["report"] = r.to_json();
    write_json((fs::path(cfg.output) / "manifest.json").string(), manifest, 2);
    if (const auto failure = r.first_failure()) {
        std::cerr << "FAIL: " << *failure << "\n";
        return 1;
    }
    std::cerr << "PASS: " << r.checks.size() << " checks, " << entries.size() << " surfaces\n";
    return 0;
}

int run_bipolar(const std::string& source, const GridArg& g, const RunConfig& cfg, const std::string& report_path)
{
    const S3Surface s = load_s3(source.empty() ? cfg.input : source, g, cfg.order);
    const SampledSurface f = adapted_bipolar(s);
    write_json(cfg.output, surface_to_json(f));
    if (!report_path.empty()) {
        CheckReport r;
        r.suite = "bipolar";
        r.provenance = f.provenance;
        r.grid = f.grid.nx;
        r.order = f.grid.order;
        const double t2 = cfg.tol(f.grid, 2);
        const BipolarCharacterization b = verify_bipolar_characterization(f, t2, cfg.kappa);
        r.add("max |gamma+|", b.max_gamma, t2);
        r.add("constant reflection |f+ - A f|", b.reflection_fit, t2);
        r.add("|omega - omega+|", b.omega_gap, t2);
        r.require("gamma+ = 0 iff f+ = A f", b.consistent);
        write_json(report_path, r.to_json(), 2);
    }
    return 0;
}

int run_lift(const RunConfig& cfg)
{
    const Json doc = read_json(cfg.input);
    if (is_s3_document(doc)) {
        const S3Surface s = s3_from_json(doc);
        CheckReport r = horizontal_lift_suite(s, cfg);
        r.merge(lift_suite(adapted_bipolar(s), cfg), "from (f, f+): ");
        return finish(r, cfg.output);
    }
    return finish(lift_suite(adapt_coordinate(surface_from_json<6>(doc)).surface, cfg), cfg.output);
}

int run_check(const RunConfig& cfg, const std::vector<int>& suites, bool convergence)
{
    CheckReport total;
    total.suite = "check";
    if (!suites.empty()) {
        for (int c : suites) {
            RunConfig coarse = cfg;
            CheckReport r = acceptance_suite(c, coarse);
            if (convergence) {
                RunConfig fine = cfg;
                fine.grid = 2 * cfg.grid;
                r = with_convergence(r, acceptance_suite(c, fine));
            }
            total.grid = r.grid;
            total.order = r.order;
            total.provenance = r.provenance;
            total.merge(r, std::to_string(c) + " " + acceptance_title(c) + ": ");
        }
        return finish(total, cfg.output);
    }
    const Json doc = read_json(cfg.input);
    CheckReport r = check_document(doc, cfg);
    if (convergence) {
        const Json& head = is_s3_document(doc) ? doc.at("G1") : doc;
        const Grid2 g = grid_from_json(head);
        const auto fine = regenerate(head.value("catalog", std::string()), 2 * g.nx, 2 * g.ny, g.order);
        if (!fine)
            throw GeometryError(ErrorKind::InvalidArgument,
                                "--convergence needs a document whose \"catalog\" names a reproducible surface");
        r = with_convergence(r, check_document(*fine, cfg), 3.0);
    }
    return finish(r, cfg.output);
}

int run_export(const RunConfig& cfg)
{
    const SampledSurface f = surface_from_json<6>(read_json(cfg.input));
    if (cfg.output.empty() || cfg.output == "-") {
        if (cfg.export_format == "obj")
            throw GeometryError(ErrorKind::InvalidArgument, "obj export needs --output for the projection file");
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output.empty() && cfg.output != "-") {
        file.open(cfg.output);
        if (!file) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + cfg.output);
        out = &file;
    }
    if (cfg.export_format == "csv") {
        write_csv(*out, f);
    } else if (cfg.export_format == "obj") {
        const Eigen::Matrix<double, 3, 6> P = pca_projection(f);
        write_obj(*out, f, P);
        Json proj = Json::array();
        for (int r = 0; r < 3; ++r) proj.push_back(std::vector<double>{P(r, 0), P(r, 1), P(r, 2), P(r, 3), P(r, 4), P(r, 5)});
        write_json(cfg.output + ".projection.json", Json{{"projection", proj}}, 2);
    } else {
        throw GeometryError(ErrorKind::InvalidArgument, "unknown export format '" + cfg.export_format + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal surfaces in S^5: transforms, bipolar surfaces and the Lagrangian lift"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.input = "-";
    cfg.output = "-";
    std::string grid_text = "64x64", steps = "-1..1", source, report_path, invariants_path;
    std::vector<int> suites;
    bool convergence = false;
    double t = 0.0;

    auto common = [&](CLI::App* sub, bool with_input) {
        if (with_input) sub->add_option("--input", cfg.input, "input document, '-' for stdin");
        sub->add_option("--output", cfg.output, "output path, '-' for stdout");
        sub->add_option("--grid", grid_text, "grid resolution NxN");
        sub->add_option("--order", cfg.order, "stencil order")->check(CLI::IsMember({2, 4}));
        sub->add_option("--C", cfg.C, "tolerance constant C in C*h^p")->check(CLI::PositiveNumber);
    };

    auto* catalog = app.add_subcommand("catalog", "write a catalog S^3 surface (clifford, lawson-m-k, sinhgordon-1d:E)");
    catalog->add_option("name", source, "catalog name")->required();
    common(catalog, false);

    auto* analyze = app.add_subcommand("analyze", "frame, ellipse and invariants of a surface");
    common(analyze, true);
    analyze->add_option("--invariants", invariants_path, "also write the invariant fields");

    auto* transform_cmd = app.add_subcommand("transform", "transforms f^p for p in --steps with round-trip checks");
    common(transform_cmd, true);
    transform_cmd->add_option("--steps", steps, "range A..B with A <= 0 <= B");

    auto* sequence_cmd = app.add_subcommand("sequence", "transform sequence with invariant identities and manifest");
    common(sequence_cmd, true);
    sequence_cmd->add_option("--steps", steps, "range A..B with A <= 0 <= B");

    auto* bipolar_cmd = app.add_subcommand("bipolar", "bipolar surface of a catalog name or S^3 bundle");
    bipolar_cmd->add_option("source", source, "catalog name (otherwise --input)");
    common(bipolar_cmd, true);
    bipolar_cmd->add_option("--report", report_path, "write the characterization report");

    auto* lift_cmd = app.add_subcommand("lift", "lift frame checks for an S^5 surface or S^3 bundle");
    common(lift_cmd, true);
    auto* t_opt = lift_cmd->add_option("--t", t, "single lift parameter t");

    auto* check_cmd = app.add_subcommand("check", "run checks on a document or the numbered suites");
    common(check_cmd, true);
    check_cmd->add_option("--suite", suites, "numbered suites 1..9 on the tau_{2,1} bipolar")->check(CLI::Range(1, 9));
    check_cmd->add_flag("--convergence", convergence, "also run at h/2 and report ratios");

    auto* export_cmd = app.add_subcommand("export", "export a surface as csv or obj");
    common(export_cmd, true);
    export_cmd->add_option("--export", cfg.export_format, "csv or obj")->required()->check(CLI::IsMember({"csv", "obj"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const GridArg g = parse_grid(grid_text);
        cfg.grid = g.nx;
        if (*t_opt) cfg.t = t;
        cfg.validate();
        if (*catalog) return run_catalog(source, g, cfg);
        if (*analyze) return run_analyze(cfg, invariants_path);
        if (*transform_cmd) return run_sequence(cfg, steps, false);
        if (*sequence_cmd) return run_sequence(cfg, steps, true);
        if (*bipolar_cmd) return run_bipolar(source, g, cfg, report_path);
        if (*lift_cmd) return run_lift(cfg);
        if (*check_cmd) return run_check(cfg, suites, convergence);
        if (*export_cmd) return run_export(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
