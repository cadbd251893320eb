#pragma once

#include "minsurf/algebra6.hpp"
#include "minsurf/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace minsurf {

/// Uniform grid on a rectangle (or torus) of sampling coordinates (x, y).
/// Sample (i, j) sits at (x0 + i*hx, y0 + j*hy) and is stored at i*ny + j.
/// The complex coordinate used for all Wirtinger operators is w = mu*(x + i y),
/// so rescaling or rotating a coordinate only changes mu, never the samples.
struct Grid2 {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    bool periodic_x = true;
    bool periodic_y = true;
    double x0 = 0.0;
    double y0 = 0.0;
    Complex mu{1.0, 0.0};
    int order = 2;

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    int size() const { return nx * ny; }
    int index(int i, int j) const { return i * ny + j; }
    double x(int i) const { return x0 + i * hx(); }
    double y(int j) const { return y0 + j * hy(); }
    /// Largest sampling step; the h of every tolerance C*h^p.
    double spacing() const { return std::max(hx(), hy()); }

    void validate() const
    {
        if (nx < 5 || ny < 5)
            throw GeometryError(ErrorKind::StencilUnderflow, "grid needs at least 5 samples per direction");
        if (!(lx > 0.0) || !(ly > 0.0))
            throw GeometryError(ErrorKind::InvalidArgument, "grid extents must be positive");
        if (order != 2 && order != 4)
            throw GeometryError(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
        if (std::abs(mu) == 0.0)
            throw GeometryError(ErrorKind::InvalidArgument, "coordinate scale must be nonzero");
    }
};

inline bool same_sampling(const Grid2& a, const Grid2& b)
{
    return a.nx == b.nx && a.ny == b.ny && a.lx == b.lx && a.ly == b.ly && a.periodic_x == b.periodic_x &&
           a.periodic_y == b.periodic_y;
}

template <typename T>
using Field = std::vector<T>;
using ScalarField = Field<double>;
using ComplexField = Field<Complex>;
using RealVectorField = Field<RealVec6>;
using VectorField = Field<ComplexVec6>;
using Mask = std::vector<std::uint8_t>;

// Complex counterpart of a real sample type.
template <typename T>
struct complexify {
    using type = Eigen::Matrix<Complex, T::RowsAtCompileTime, T::ColsAtCompileTime>;
};
template <>
struct complexify<double> {
    using type = Complex;
};
template <>
struct complexify<Complex> {
    using type = Complex;
};
template <typename T>
using complexify_t = typename complexify<T>::type;

template <typename T>
complexify_t<T> to_complex(const T& v)
{
    if constexpr (std::is_same_v<T, double> || std::is_same_v<T, Complex>)
        return complexify_t<T>(v);
    else
        return v.template cast<Complex>();
}

template <typename T>
Field<complexify_t<T>> to_complex(const Field<T>& f)
{
    Field<complexify_t<T>> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = to_complex(f[k]);
    return out;
}

template <typename T>
T conj_value(const T& v)
{
    if constexpr (std::is_same_v<T, double>)
        return v;
    else if constexpr (std::is_same_v<T, Complex>)
        return std::conj(v);
    else
        return v.conjugate();
}

template <typename T>
Field<T> conj(const Field<T>& f)
{
    Field<T> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = conj_value(f[k]);
    return out;
}

template <typename T>
double magnitude(const T& v)
{
    if constexpr (std::is_same_v<T, double> || std::is_same_v<T, Complex>)
        return std::abs(v);
    else
        return v.norm();
}

template <typename T>
double max_abs(const Field<T>& f, const Mask* mask = nullptr)
{
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!mask || (*mask)[k]) m = std::max(m, magnitude(f[k]));
    return m;
}

namespace detail {

struct Stencil {
    int offset;   // first sample relative to the evaluation point
    std::array<double, 6> w;
    int n;
};

// Coefficients already divided by the common denominator (2, 12, 1 or 12).
inline Stencil first_derivative_stencil(int order, int pos, int count, bool periodic)
{
    if (order == 2) {
        if (periodic || (pos > 0 && pos < count - 1)) return {-1, {-0.5, 0.0, 0.5}, 3};
        if (pos == 0) return {0, {-1.5, 2.0, -0.5}, 3};
        return {-2, {0.5, -2.0, 1.5}, 3};
    }
    const double c = 1.0 / 12.0;
    if (periodic || (pos > 1 && pos < count - 2)) return {-2, {c, -8 * c, 0.0, 8 * c, -c}, 5};
    if (pos == 0) return {0, {-25 * c, 48 * c, -36 * c, 16 * c, -3 * c}, 5};
    if (pos == 1) return {-1, {-3 * c, -10 * c, 18 * c, -6 * c, c}, 5};
    if (pos == count - 2) return {-3, {-c, 6 * c, -18 * c, 10 * c, 3 * c}, 5};
    return {-4, {3 * c, -16 * c, 36 * c, -48 * c, 25 * c}, 5};
}

inline Stencil second_derivative_stencil(int order, int pos, int count, bool periodic)
{
    if (order == 2) {
        if (periodic || (pos > 0 && pos < count - 1)) return {-1, {1.0, -2.0, 1.0}, 3};
        if (pos == 0) return {0, {2.0, -5.0, 4.0, -1.0}, 4};
        return {-3, {-1.0, 4.0, -5.0, 2.0}, 4};
    }
    const double c = 1.0 / 12.0;
    if (periodic || (pos > 1 && pos < count - 2)) return {-2, {-c, 16 * c, -30 * c, 16 * c, -c}, 5};
    if (pos == 0) return {0, {45 * c, -154 * c, 214 * c, -156 * c, 61 * c, -10 * c}, 6};
    if (pos == 1) return {-1, {10 * c, -15 * c, -4 * c, 14 * c, -6 * c, c}, 6};
    if (pos == count - 2) return {-4, {c, -6 * c, 14 * c, -4 * c, -15 * c, 10 * c}, 6};
    return {-5, {-10 * c, 61 * c, -156 * c, 214 * c, -154 * c, 45 * c}, 6};
}

template <typename T>
Field<T> apply_axis(const Grid2& g, const Field<T>& f, int axis, int derivative)
{
    g.validate();
    const int count = axis == 0 ? g.nx : g.ny;
    const bool periodic = axis == 0 ? g.periodic_x : g.periodic_y;
    const double h = axis == 0 ? g.hx() : g.hy();
    const double scale = derivative == 1 ? 1.0 / h : 1.0 / (h * h);
    Field<T> out(f.size());
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const int pos = axis == 0 ? i : j;
            const Stencil s = derivative == 1 ? first_derivative_stencil(g.order, pos, count, periodic)
                                              : second_derivative_stencil(g.order, pos, count, periodic);
            T acc{};
            bool first = true;
            for (int k = 0; k < s.n; ++k) {
                if (s.w[k] == 0.0) continue;
                int q = pos + s.offset + k;
                if (periodic) q = ((q % count) + count) % count;
                const T& v = axis == 0 ? f[g.index(q, j)] : f[g.index(i, q)];
                if (first) {
                    acc = s.w[k] * v;
                    first = false;
                } else {
                    acc += s.w[k] * v;
                }
            }
            out[g.index(i, j)] = scale * acc;
        }
    }
    return out;
}

} // namespace detail

// Partial derivatives in the sampling coordinates.
template <typename T>
Field<T> diff_x(const Grid2& g, const Field<T>& f) { return detail::apply_axis(g, f, 0, 1); }
template <typename T>
Field<T> diff_y(const Grid2& g, const Field<T>& f) { return detail::apply_axis(g, f, 1, 1); }
template <typename T>
Field<T> diff_xx(const Grid2& g, const Field<T>& f) { return detail::apply_axis(g, f, 0, 2); }
template <typename T>
Field<T> diff_yy(const Grid2& g, const Field<T>& f) { return detail::apply_axis(g, f, 1, 2); }
template <typename T>
Field<T> diff_xy(const Grid2& g, const Field<T>& f) { return diff_x(g, diff_y(g, f)); }

/// Real partials with respect to u, v where w = u + i v.
template <typename T>
Field<T> partial_u(const Grid2& g, const Field<T>& f)
{
    const Field<T> fx = diff_x(g, f), fy = diff_y(g, f);
    const double a = g.mu.real(), b = g.mu.imag(), m2 = std::norm(g.mu);
    Field<T> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = (a * fx[k] - b * fy[k]) / m2;
    return out;
}

template <typename T>
Field<T> partial_v(const Grid2& g, const Field<T>& f)
{
    const Field<T> fx = diff_x(g, f), fy = diff_y(g, f);
    const double a = g.mu.real(), b = g.mu.imag(), m2 = std::norm(g.mu);
    Field<T> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = (b * fx[k] + a * fy[k]) / m2;
    return out;
}

template <typename T>
struct Hessian {
    Field<T> uu, uv, vv;
};

/// Second partials in (u, v), from the second-difference stencils in (x, y).
template <typename T>
Hessian<T> hessian_uv(const Grid2& g, const Field<T>& f)
{
    const Field<T> fxx = diff_xx(g, f), fyy = diff_yy(g, f), fxy = diff_xy(g, f);
    const double a = g.mu.real(), b = g.mu.imag(), m4 = std::norm(g.mu) * std::norm(g.mu);
    Hessian<T> h{Field<T>(f.size()), Field<T>(f.size()), Field<T>(f.size())};
    for (std::size_t k = 0; k < f.size(); ++k) {
        h.uu[k] = (a * a * fxx[k] - 2 * a * b * fxy[k] + b * b * fyy[k]) / m4;
        h.vv[k] = (b * b * fxx[k] + 2 * a * b * fxy[k] + a * a * fyy[k]) / m4;
        h.uv[k] = (a * b * (fxx[k] - fyy[k]) + (a * a - b * b) * fxy[k]) / m4;
    }
    return h;
}

template <typename T>
Field<complexify_t<T>> wirtinger_d(const Grid2& g, const Field<T>& f)
{
    const Field<T> fx = diff_x(g, f), fy = diff_y(g, f);
    const Complex i(0.0, 1.0);
    const Complex s = 0.5 / g.mu;
    Field<complexify_t<T>> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = s * (to_complex(fx[k]) - i * to_complex(fy[k]));
    return out;
}

template <typename T>
Field<complexify_t<T>> wirtinger_dbar(const Grid2& g, const Field<T>& f)
{
    const Field<T> fx = diff_x(g, f), fy = diff_y(g, f);
    const Complex i(0.0, 1.0);
    const Complex s = 0.5 / std::conj(g.mu);
    Field<complexify_t<T>> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = s * (to_complex(fx[k]) + i * to_complex(fy[k]));
    return out;
}

/// d dbar F = Laplacian / 4 in the w coordinate.
template <typename T>
Field<T> d_dbar(const Grid2& g, const Field<T>& f)
{
    const Field<T> fxx = diff_xx(g, f), fyy = diff_yy(g, f);
    const double s = 0.25 / std::norm(g.mu);
    Field<T> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = s * (fxx[k] + fyy[k]);
    return out;
}

/// d d F = (F_uu - F_vv - 2i F_uv) / 4.
template <typename T>
Field<complexify_t<T>> d_d(const Grid2& g, const Field<T>& f)
{
    const Hessian<T> h = hessian_uv(g, f);
    const Complex i(0.0, 1.0);
    Field<complexify_t<T>> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        out[k] = 0.25 * (to_complex(h.uu[k]) - to_complex(h.vv[k]) - 2.0 * i * to_complex(h.uv[k]));
    return out;
}

inline Mask full_mask(const Grid2& g) { return Mask(g.size(), 1); }

inline std::size_t mask_count(const Mask& m)
{
    return static_cast<std::size_t>(std::count(m.begin(), m.end(), std::uint8_t(1)));
}

/// Removes every point within `cells` grid steps (Chebyshev distance) of an
/// excluded point, and on open grids of the boundary.
inline Mask erode(const Grid2& g, const Mask& m, int cells)
{
    Mask out(m.size(), 0);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            bool keep = m[g.index(i, j)] != 0;
            for (int di = -cells; keep && di <= cells; ++di) {
                int p = i + di;
                if (g.periodic_x) p = ((p % g.nx) + g.nx) % g.nx;
                else if (p < 0 || p >= g.nx) { keep = false; break; }
                for (int dj = -cells; dj <= cells; ++dj) {
                    int q = j + dj;
                    if (g.periodic_y) q = ((q % g.ny) + g.ny) % g.ny;
                    else if (q < 0 || q >= g.ny) { keep = false; break; }
                    if (!m[g.index(p, q)]) { keep = false; break; }
                }
            }
            out[g.index(i, j)] = keep;
        }
    }
    return out;
}

inline Mask mask_and(const Mask& a, const Mask& b)
{
    Mask out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] && b[k];
    return out;
}

/// Points where `value >= fraction * max(value)`, eroded by the stencil reach.
inline Mask threshold_mask(const Grid2& g, const ScalarField& value, double fraction, int erosion)
{
    const double top = *std::max_element(value.begin(), value.end());
    Mask m(value.size());
    for (std::size_t k = 0; k < value.size(); ++k) m[k] = value[k] >= fraction * top;
    return erode(g, m, erosion);
}

/// Stencil reach used when eroding masks before checks that compose
/// up to three derivative passes.
inline int stencil_reach(const Grid2& g) { return g.order == 2 ? 3 : 6; }

} // namespace minsurf
