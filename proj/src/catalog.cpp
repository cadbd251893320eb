#include "minsurf/catalog.hpp"

#include "minsurf/integrability.hpp"

#include <cmath>
#include <numeric>
#include <regex>

namespace minsurf {

namespace {

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol)
{
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

constexpr double two_pi = 2.0 * M_PI;

} // namespace

LawsonCoordinate::LawsonCoordinate(int m, int k) : m_(m), k_(k), nodes_(2048)
{
    step_ = two_pi / nodes_;
    table_.resize(nodes_ + 1);
    table_[0] = 0.0;
    auto integrand = [this](double q) { return 1.0 / weight(q); };
    for (int n = 0; n < nodes_; ++n)
        table_[n + 1] = table_[n] + adaptive_simpson(integrand, n * step_, (n + 1) * step_, 1e-15);
    period_ = table_[nodes_];
}

double LawsonCoordinate::weight(double y) const
{
    const double c = std::cos(y), s = std::sin(y);
    return std::sqrt(m_ * m_ * c * c + k_ * k_ * s * s);
}

double LawsonCoordinate::integrate_from_node(double y) const
{
    // y in [0, 2 pi)
    int n = static_cast<int>(std::floor(y / step_));
    n = std::clamp(n, 0, nodes_ - 1);
    auto integrand = [this](double q) { return 1.0 / weight(q); };
    return table_[n] + adaptive_simpson(integrand, n * step_, y, 1e-15);
}

double LawsonCoordinate::forward(double y) const
{
    const double turns = std::floor(y / two_pi);
    return turns * period_ + integrate_from_node(y - turns * two_pi);
}

double LawsonCoordinate::inverse(double ytilde) const
{
    const double turns = std::floor(ytilde / period_);
    const double t = ytilde - turns * period_;
    // Hermite cubic on the bracketing table interval; slopes dy/dytilde = W are exact
    // and positive, so the interpolant is monotone for this smooth integrand.
    auto it = std::upper_bound(table_.begin(), table_.end(), t);
    int n = static_cast<int>(it - table_.begin()) - 1;
    n = std::clamp(n, 0, nodes_ - 1);
    const double t0 = table_[n], t1 = table_[n + 1], d = t1 - t0;
    const double y0 = n * step_, y1 = (n + 1) * step_;
    const double s = (t - t0) / d;
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    double y = h00 * y0 + h10 * d * weight(y0) + h01 * y1 + h11 * d * weight(y1);
    for (int iter = 0; iter < 3; ++iter) y -= (integrate_from_node(std::clamp(y, 0.0, two_pi)) - t) * weight(y);
    return y + turns * two_pi;
}

S3Surface conformalize_lawson(int m, int k, int nx, int ny, int order)
{
    if (m <= 0 || k <= 0 || std::gcd(m, k) != 1)
        throw GeometryError(ErrorKind::InvalidArgument, "lawson torus needs coprime positive m, k");
    const LawsonCoordinate coord(m, k);

    Grid2 g;
    g.nx = nx;
    g.ny = ny;
    g.lx = two_pi;
    g.ly = coord.period();
    g.order = order;
    g.x0 = 0.0;
    g.y0 = 0.5 * g.hy();
    g.validate();

    auto G1_at = [&](double x, double y) -> RealVec4 {
        return RealVec4(std::cos(m * x) * std::cos(y), std::sin(m * x) * std::cos(y), std::cos(k * x) * std::sin(y),
                        std::sin(k * x) * std::sin(y));
    };
    auto normal_at = [&](double x, double y) -> RealVec4 {
        return RealVec4(-k * std::sin(y) * std::sin(m * x), k * std::sin(y) * std::cos(m * x),
                        m * std::cos(y) * std::sin(k * x), -m * std::cos(y) * std::cos(k * x)) /
               coord.weight(y);
    };

    // Orientation of the listed normal against (G1, G1_x, G1_y); the sign is
    // constant on the torus, so one interior point decides it.
    double sign;
    {
        const double x = 0.3, y = 0.7;
        Eigen::Matrix4d M;
        const RealVec4 gx(-m * std::sin(m * x) * std::cos(y), m * std::cos(m * x) * std::cos(y),
                          -k * std::sin(k * x) * std::sin(y), k * std::cos(k * x) * std::sin(y));
        const RealVec4 gy(-std::cos(m * x) * std::sin(y), -std::sin(m * x) * std::sin(y),
                          std::cos(k * x) * std::cos(y), std::sin(k * x) * std::cos(y));
        M << G1_at(x, y), gx, gy, normal_at(x, y);
        sign = M.determinant() > 0 ? 1.0 : -1.0;
    }

    // With the listed normal, (d_z d_z G1, G2) = i m k / 2 in z = x + i ytilde.
    // The adapted coordinate w = mu z has (d_w d_w G1, G2) = 1/2.
    const Complex s_z = sign * Complex(0.0, 0.5 * m * k);
    g.mu = std::sqrt(2.0 * s_z);

    S3Surface s;
    s.G1.grid = s.G2.grid = g;
    s.G1.values.resize(g.size());
    s.G2.values.resize(g.size());
    s.eta.resize(g.size());
    std::vector<double> ys(ny);
    for (int j = 0; j < ny; ++j) ys[j] = coord.inverse(g.y(j));
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int idx = g.index(i, j);
            const double x = g.x(i), y = ys[j];
            s.G1.values[idx] = G1_at(x, y);
            s.G2.values[idx] = sign * normal_at(x, y);
            const double w = coord.weight(y);
            s.eta[idx] = std::log(w * w / (m * k));
        }
    }
    const std::string name = "lawson-" + std::to_string(m) + "-" + std::to_string(k);
    s.G1.provenance = s.G2.provenance = name;
    return s;
}

S3Surface clifford_torus(int nx, int ny, int order)
{
    Grid2 g;
    g.nx = nx;
    g.ny = ny;
    g.lx = g.ly = M_PI * std::sqrt(2.0);
    g.order = order;
    g.validate();
    S3Surface s;
    s.G1.grid = s.G2.grid = g;
    s.G1.values.resize(g.size());
    s.G2.values.resize(g.size());
    s.eta.assign(g.size(), 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double u = std::sqrt(2.0) * g.x(i), v = std::sqrt(2.0) * g.y(j);
            const int idx = g.index(i, j);
            s.G1.values[idx] = r * RealVec4(std::cos(u), std::sin(u), std::cos(v), std::sin(v));
            s.G2.values[idx] = r * RealVec4(-std::cos(u), -std::sin(u), std::cos(v), std::sin(v));
        }
    }
    s.G1.provenance = s.G2.provenance = "clifford";
    return s;
}

namespace {

struct PendulumState {
    double eta, deta;
};

PendulumState pendulum_rk4(PendulumState s, double h)
{
    auto rhs = [](const PendulumState& p) { return PendulumState{p.deta, -4.0 * std::sinh(p.eta)}; };
    const PendulumState k1 = rhs(s);
    const PendulumState k2 = rhs({s.eta + 0.5 * h * k1.eta, s.deta + 0.5 * h * k1.deta});
    const PendulumState k3 = rhs({s.eta + 0.5 * h * k2.eta, s.deta + 0.5 * h * k2.deta});
    const PendulumState k4 = rhs({s.eta + h * k3.eta, s.deta + h * k3.deta});
    return {s.eta + h / 6.0 * (k1.eta + 2 * k2.eta + 2 * k3.eta + k4.eta),
            s.deta + h / 6.0 * (k1.deta + 2 * k2.deta + 2 * k3.deta + k4.deta)};
}

double pendulum_energy(const PendulumState& s) { return 0.5 * s.deta * s.deta + 4.0 * std::cosh(s.eta); }

} // namespace

PendulumSolution pendulum_period(double energy)
{
    if (!(energy > 4.0))
        throw GeometryError(ErrorKind::InvalidArgument, "sinh-Gordon energy must exceed 4");
    PendulumSolution sol;
    sol.energy = energy;
    sol.eta0 = std::acosh(energy / 4.0);
    // eta' first returns to zero (from below) after half a period.
    const double h = 1e-4;
    PendulumState s{sol.eta0, 0.0};
    double t = 0.0;
    for (;;) {
        const PendulumState next = pendulum_rk4(s, h);
        sol.max_energy_drift = std::max(sol.max_energy_drift, std::abs(pendulum_energy(next) - energy));
        if (t > h && s.deta < 0.0 && next.deta >= 0.0) {
            // secant refinement of the zero of eta' inside the step
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (pendulum_rk4(s, mid).deta < 0.0) lo = mid;
                else hi = mid;
            }
            sol.period = 2.0 * (t + 0.5 * (lo + hi));
            break;
        }
        s = next;
        t += h;
        if (t > 1e3) throw GeometryError(ErrorKind::InvalidArgument, "pendulum period not found");
    }
    return sol;
}

PendulumSamples pendulum_samples(double energy, const std::vector<double>& xs, double max_step)
{
    PendulumSamples out;
    const double eta0 = std::acosh(energy / 4.0);
    PendulumState s{eta0, 0.0};
    double t = 0.0;
    for (double target : xs) {
        const double span = target - t;
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step)));
        const double h = span / steps;
        for (int n = 0; n < steps; ++n) {
            s = pendulum_rk4(s, h);
            out.max_energy_drift = std::max(out.max_energy_drift, std::abs(pendulum_energy(s) - energy));
        }
        t = target;
        out.eta.push_back(s.eta);
        out.deta.push_back(s.deta);
    }
    return out;
}

S3Surface sinh_gordon_1d(double energy, int nx, int ny, int order)
{
    const PendulumSolution sol = pendulum_period(energy);
    Grid2 g;
    g.nx = nx;
    g.ny = ny;
    g.lx = g.ly = sol.period;
    g.periodic_x = g.periodic_y = false;
    g.order = order;
    g.validate();

    std::vector<double> xs(nx);
    for (int i = 0; i < nx; ++i) xs[i] = g.x(i);
    const PendulumSamples samples = pendulum_samples(energy, xs);
    ScalarField eta(g.size());
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) eta[g.index(i, j)] = samples.eta[i];

    IntegrationOptions opts;
    opts.i0 = 0;
    opts.j0 = 0;
    S3Integration integ = integrate_s3_frame(g, eta, std::nullopt, opts);
    S3Surface s = std::move(integ.surface);
    std::string name = "sinhgordon-1d:" + std::to_string(energy);
    s.G1.provenance = s.G2.provenance = name;
    return s;
}

S3Surface catalog_surface(const std::string& name, int nx, int ny, int order)
{
    if (name == "clifford") return clifford_torus(nx, ny, order);
    std::smatch m;
    static const std::regex lawson(R"(lawson-(\d+)-(\d+))");
    static const std::regex sg(R"(sinhgordon-1d:([0-9.eE+-]+))");
    if (std::regex_match(name, m, lawson)) {
        S3Surface s = conformalize_lawson(std::stoi(m[1]), std::stoi(m[2]), nx, ny, order);
        s.G1.provenance = s.G2.provenance = name;
        return s;
    }
    if (std::regex_match(name, m, sg)) {
        S3Surface s = sinh_gordon_1d(std::stod(m[1]), nx, ny, order);
        s.G1.provenance = s.G2.provenance = name;
        return s;
    }
    throw GeometryError(ErrorKind::InvalidArgument, "unknown catalog surface '" + name + "'");
}

} // namespace minsurf
