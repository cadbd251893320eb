#pragma once

#include "minsurf/grid.hpp"

#include <optional>
#include <string>

namespace minsurf {

template <int Dim>
struct Surface {
    using Point = Eigen::Matrix<double, Dim, 1>;
    static constexpr int ambient_dim = Dim;

    Grid2 grid;
    Field<Point> values;
    /// Catalog name this surface was generated from (empty if unknown).
    std::string provenance;

    const Point& at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// Surface in S^5, the main object of the library.
using SampledSurface = Surface<6>;
using Surface4 = Surface<4>;

/// Minimal surface G1 in S^3 with unit normal G2 and conformal factor
/// e^eta of the induced metric e^eta |dw|^2.
struct S3Surface {
    Surface4 G1;
    Surface4 G2;
    ScalarField eta;

    const Grid2& grid() const { return G1.grid; }
};

template <int Dim>
double max_norm_defect(const Surface<Dim>& s)
{
    double m = 0.0;
    for (const auto& v : s.values) m = std::max(m, std::abs(v.norm() - 1.0));
    return m;
}

template <int Dim>
ScalarField pointwise_distance(const Surface<Dim>& a, const Surface<Dim>& b)
{
    ScalarField d(a.values.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (a.values[k] - b.values[k]).norm();
    return d;
}

template <int Dim>
Surface<Dim> apply_linear(const Eigen::Matrix<double, Dim, Dim>& A, const Surface<Dim>& s)
{
    Surface<Dim> out = s;
    for (auto& v : out.values) v = A * v;
    return out;
}

} // namespace minsurf
