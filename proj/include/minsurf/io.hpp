#pragma once

#include "minsurf/frames.hpp"
#include "minsurf/integrability.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace minsurf {

using Json = nlohmann::ordered_json;

/// Surface document: {"nx","ny","lx","ly","periodic_x","periodic_y","ambient_dim","values"}
/// plus "x0","y0","mu","order","catalog" so that a coordinate relabeling survives a round trip.
Json grid_to_json(const Grid2& g);
Grid2 grid_from_json(const Json& j);

template <int Dim>
Json surface_to_json(const Surface<Dim>& s);
template <int Dim>
Surface<Dim> surface_from_json(const Json& j);

/// {"G1": surface, "G2": surface, "eta": [...]}
Json s3_to_json(const S3Surface& s);
S3Surface s3_from_json(const Json& j);

bool is_s3_document(const Json& j);
int ambient_dim_of(const Json& j);

/// Surface document with an added "frame" object holding omega, phi, alpha_re, alpha_im, N.
Json frame_to_json(const SampledSurface& f, const FrameField& F);

/// {"omega","phi","alpha_re","alpha_im"} on the grid of the triple.
Json invariants_to_json(const InvariantTriple& t);
InvariantTriple invariants_from_json(const Json& j);

/// "-" reads stdin / writes stdout. Doubles use the shortest round-trip
/// formatting, so identical values give identical text.
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j, int indent = -1);

/// One row per sample: x, y, then the ambient coordinates.
void write_csv(std::ostream& out, const SampledSurface& f);
SampledSurface read_csv(std::istream& in, const Grid2& grid);

/// Orthonormal 3 x 6 projection onto the three leading principal directions
/// of the sample cloud (mean removed).
Eigen::Matrix<double, 3, 6> pca_projection(const SampledSurface& f);

/// Quad mesh of the projected samples; periodic directions wrap around.
void write_obj(std::ostream& out, const SampledSurface& f, const Eigen::Matrix<double, 3, 6>& P);

} // namespace minsurf
