#pragma once

#include "minsurf/io.hpp"
#include "minsurf/lift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minsurf {

struct RunConfig {
    std::string input, output;
    int grid = 64;
    int order = 2;
    double C = 10.0;
    double kappa = 0.25;      // regular and coupling mask fraction
    double kappa_lift = 0.5;  // coupling mask fraction for the lift frame
    int t_samples = 9;
    std::optional<double> t;
    std::string export_format;

    void validate() const;
    /// C * h^power with h the largest grid step.
    double tol(const Grid2& g, int power) const { return C * std::pow(g.spacing(), power); }
};

/// pass <=> residual <= tolerance. `ratio_required` marks discretization
/// errors whose coarse/fine ratio is asserted by a convergence run.
struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool ratio_required = false;
};

struct Convergence {
    std::string name;
    double coarse = 0.0, fine = 0.0, ratio = 0.0, required = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::string suite;
    std::string provenance;
    int grid = 0;
    int order = 2;
    std::vector<Check> checks;
    std::vector<Convergence> convergence;
    Json details = Json::object();

    void add(const std::string& name, double residual, double tolerance, bool ratio_required = false);
    void require(const std::string& name, bool ok);
    void merge(const CheckReport& other, const std::string& prefix = "");
    bool passed() const;
    std::optional<std::string> first_failure() const;
    const Check* find(const std::string& name) const;
    Json to_json() const;
};

/// Pairs the checks of a run at h with a run at h/2 by name; ratio-required
/// checks must shrink by at least `min_ratio`.
CheckReport with_convergence(const CheckReport& coarse, const CheckReport& fine, double min_ratio = 3.0);

/// bipolar(s) relabeled to an adapted coordinate.
SampledSurface adapted_bipolar(const S3Surface& s);

/// Conformality, adaptedness and minimality of both transforms, plus the
/// closed-form jet against finite differences.
CheckReport transform_suite(const SampledSurface& f, const RunConfig& cfg);
/// (f^+)^- = f and (f^-)^+ = f.
CheckReport inverse_suite(const SampledSurface& f, const RunConfig& cfg);
/// Volume identities of the F-frame and of the B-frame for both transforms.
CheckReport volume_suite(const SampledSurface& f, const RunConfig& cfg);
/// The two integrability systems on the invariants of bipolar(s), sinh-Gordon
/// on the catalog eta, and the omega <-> eta substitution.
CheckReport integrability_suite(const S3Surface& s, const RunConfig& cfg);
/// gamma^+ = 0, the constant reflection f^+ = A f and omega = omega^+ for
/// bipolar(s), and rejection of the degenerate bipolar of `degenerate`.
CheckReport bipolar_suite(const S3Surface& s, const S3Surface& degenerate, const RunConfig& cfg);
/// delta^{p+1} = -gamma^p for p in [-2, 1] and equivariance under a coordinate reflection.
CheckReport sequence_suite(const SampledSurface& f, const RunConfig& cfg);
/// Lift frame built from (f, f^+) at t_samples points of the admissible interval.
CheckReport lift_suite(const SampledSurface& f, const RunConfig& cfg);
/// Horizontal lift F = G1 cos(t/2) + i G2 sin(t/2) of an S^3 surface.
CheckReport horizontal_lift_suite(const S3Surface& s, const RunConfig& cfg);
/// Frame integration from the invariants of f on a strip of rows where the
/// ellipse of curvature stays nondegenerate.
CheckReport reconstruction_suite(const SampledSurface& f, const RunConfig& cfg);

/// Criteria 1..9 on the Lawson tau_{2,1} bipolar (and the Clifford torus where
/// required) at cfg.grid.
CheckReport acceptance_suite(int criterion, const RunConfig& cfg);
const char* acceptance_title(int criterion);

/// Checks applicable to a surface document (S^5 surface or S^3 bundle).
CheckReport check_document(const Json& doc, const RunConfig& cfg);

} // namespace minsurf
