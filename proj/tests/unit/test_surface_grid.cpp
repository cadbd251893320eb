#include "minsurf/surface.hpp"

#include <doctest.h>

using namespace minsurf;

namespace {

Grid2 make_grid(int n, double l, bool periodic, int order = 2)
{
    Grid2 g;
    g.nx = g.ny = n;
    g.lx = g.ly = l;
    g.periodic_x = g.periodic_y = periodic;
    g.order = order;
    return g;
}

template <typename F>
ScalarField sample(const Grid2& g, F fn)
{
    ScalarField out(g.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out[g.index(i, j)] = fn(g.x(i), g.y(j));
    return out;
}

} // namespace

TEST_CASE("Wirtinger derivatives of the coordinate functions on an open grid")
{
    const Grid2 g = make_grid(16, 1.0, false);
    const ScalarField x = sample(g, [](double x, double) { return x; });
    const ScalarField y = sample(g, [](double, double y) { return y; });
    ComplexField w(g.size()), wbar(g.size());
    for (int k = 0; k < g.size(); ++k) {
        w[k] = Complex(x[k], y[k]);
        wbar[k] = std::conj(w[k]);
    }
    for (const Complex v : wirtinger_d(g, w)) CHECK(std::abs(v - 1.0) < 1e-12);
    for (const Complex v : wirtinger_dbar(g, w)) CHECK(std::abs(v) < 1e-12);
    for (const Complex v : wirtinger_d(g, wbar)) CHECK(std::abs(v) < 1e-12);
    for (const Complex v : wirtinger_dbar(g, wbar)) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("coordinate scale mu rescales the Wirtinger operators")
{
    Grid2 g = make_grid(32, 2 * M_PI, true);
    g.mu = Complex(0.6, 0.8);
    const ScalarField x = sample(g, [](double x, double) { return std::sin(x); });
    const ComplexField d = wirtinger_d(g, x);
    Grid2 g1 = g;
    g1.mu = 1.0;
    const ComplexField d1 = wirtinger_d(g1, x);
    for (int k = 0; k < g.size(); ++k) CHECK(std::abs(d[k] - d1[k] / g.mu) < 1e-13);
}

TEST_CASE("second and fourth order accuracy on periodic sin(x)")
{
    for (int order : {2, 4}) {
        double err[2];
        for (int r = 0; r < 2; ++r) {
            const Grid2 g = make_grid(r == 0 ? 64 : 128, 2 * M_PI, true, order);
            const ScalarField f = sample(g, [](double x, double) { return std::sin(x); });
            const ComplexField d = wirtinger_d(g, f);
            err[r] = 0.0;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j)
                    err[r] = std::max(err[r], std::abs(d[g.index(i, j)] - 0.5 * std::cos(g.x(i))));
        }
        if (order == 2) CHECK(err[0] < 3e-3);
        CHECK(err[0] / err[1] > (order == 2 ? 3.9 : 15.0));
    }
}

TEST_CASE("one-sided boundary stencils keep the order on open grids")
{
    for (int order : {2, 4}) {
        double err[2];
        for (int r = 0; r < 2; ++r) {
            const Grid2 g = make_grid(r == 0 ? 32 : 64, 1.0, false, order);
            const ScalarField f = sample(g, [](double x, double y) { return std::exp(x) * std::cos(y); });
            const ScalarField fxx = diff_xx(g, f);
            const ScalarField fy = diff_y(g, f);
            err[r] = 0.0;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) {
                    const int k = g.index(i, j);
                    err[r] = std::max(err[r], std::abs(fxx[k] - f[k]));
                    err[r] = std::max(err[r], std::abs(fy[k] + std::exp(g.x(i)) * std::sin(g.y(j))));
                }
        }
        CHECK(err[0] / err[1] > (order == 2 ? 3.0 : 12.0));
    }
}

TEST_CASE("conjugate symmetry and d dbar of a real field")
{
    const Grid2 g = make_grid(40, 2 * M_PI, true);
    const ScalarField f = sample(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y) + std::cos(x + y); });
    const ComplexField d = wirtinger_d(g, f), dbar = wirtinger_dbar(g, f);
    for (int k = 0; k < g.size(); ++k) CHECK(std::abs(dbar[k] - std::conj(d[k])) < 1e-14);

    const ScalarField lap = d_dbar(g, f);
    const ScalarField fxx = diff_xx(g, f), fyy = diff_yy(g, f);
    for (int k = 0; k < g.size(); ++k) CHECK(std::abs(lap[k] - 0.25 * (fxx[k] + fyy[k])) < 1e-13);

    // d d f = (f_xx - f_yy - 2i f_xy) / 4 with mu = 1
    const ComplexField dd = d_d(g, f);
    const ScalarField fxy = diff_xy(g, f);
    for (int k = 0; k < g.size(); ++k)
        CHECK(std::abs(dd[k] - 0.25 * Complex(fxx[k] - fyy[k], -2 * fxy[k])) < 1e-12);
}

TEST_CASE("grid validation and masks")
{
    Grid2 g = make_grid(4, 1.0, true);
    CHECK_THROWS_AS(g.validate(), GeometryError);
    g = make_grid(8, 1.0, true, 3);
    CHECK_THROWS_AS(g.validate(), GeometryError);

    g = make_grid(10, 1.0, false);
    Mask m = full_mask(g);
    CHECK(mask_count(erode(g, m, 1)) == 64);
    Grid2 p = make_grid(10, 1.0, true);
    m = full_mask(p);
    m[p.index(0, 0)] = 0;
    CHECK(mask_count(erode(p, m, 1)) == 91);
}

TEST_CASE("surface helpers")
{
    Surface<4> s;
    s.grid = make_grid(8, 1.0, true);
    s.values.assign(s.grid.size(), RealVec4(0.6, 0.8, 0, 0));
    CHECK(max_norm_defect(s) < 1e-15);
    Eigen::Matrix4d A = Eigen::Matrix4d::Identity();
    A(0, 0) = -1;
    const Surface<4> t = apply_linear(A, s);
    for (double d : pointwise_distance(s, t)) CHECK(d == doctest::Approx(1.2));
}
