#pragma once

#include "minsurf/surface.hpp"

#include <string>

namespace minsurf {

/// Reparametrization y -> ytilde(y) = int_0^y dq / sqrt(m^2 cos^2 q + k^2 sin^2 q)
/// and its inverse, tabulated once per (m, k).
class LawsonCoordinate {
public:
    LawsonCoordinate(int m, int k);

    double weight(double y) const; // sqrt(m^2 cos^2 y + k^2 sin^2 y)
    double forward(double y) const;
    double inverse(double ytilde) const;
    /// ytilde(2 pi)
    double period() const { return period_; }

private:
    double integrate_from_node(double y) const;

    int m_, k_;
    int nodes_;
    double step_;
    std::vector<double> table_; // ytilde at y = n * step_
    double period_;
};

/// Lawson torus tau_{m,k} in conformal coordinates. The normal is oriented so
/// that det[G1, G1_u, G1_v, G2] > 0, and the coordinate scale mu is set so that
/// (II(d,d), II(d,d)) = 1/4 for the S^3 second fundamental form.
S3Surface conformalize_lawson(int m, int k, int nx, int ny, int order = 2);

/// Clifford torus G1 = (cos sqrt2 x, sin sqrt2 x, cos sqrt2 y, sin sqrt2 y)/sqrt2 with
/// normal G2 = (-cos sqrt2 x, -sin sqrt2 x, cos sqrt2 y, sin sqrt2 y)/sqrt2 and eta = 0.
S3Surface clifford_torus(int nx, int ny, int order = 2);

/// Solution of eta'' = -4 sinh(eta), eta(0) = acosh(E/4), eta'(0) = 0, i.e. a
/// sinh-Gordon solution depending on one real variable.
struct PendulumSolution {
    double energy = 0.0;
    double eta0 = 0.0;
    double period = 0.0;
    double max_energy_drift = 0.0;
};

PendulumSolution pendulum_period(double energy);

/// Samples (eta, eta') of the pendulum solution at the given abscissae by RK4
/// with at most `max_step`; also tracks the conserved energy.
struct PendulumSamples {
    std::vector<double> eta, deta;
    double max_energy_drift = 0.0;
};
PendulumSamples pendulum_samples(double energy, const std::vector<double>& xs, double max_step = 1e-3);

/// S^3 surface built from the one-variable sinh-Gordon solution of energy E by
/// integrating the structure equations on an open grid covering one period.
S3Surface sinh_gordon_1d(double energy, int nx, int ny, int order = 2);

/// Parses "clifford", "lawson-m-k" or "sinhgordon-1d:E".
S3Surface catalog_surface(const std::string& name, int nx, int ny, int order = 2);

} // namespace minsurf
