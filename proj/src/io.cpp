#include "minsurf/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace minsurf {

namespace {

GeometryError bad_document(const std::string& what)
{
    return GeometryError(ErrorKind::InvalidArgument, "malformed document: " + what);
}

const Json& require(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw bad_document(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

Json scalar_array(const ScalarField& f) { return Json(f); }

ScalarField scalar_field(const Json& j, std::size_t n, const char* key)
{
    ScalarField f = require(j, key).get<ScalarField>();
    if (f.size() != n) throw bad_document(std::string("\"") + key + "\" has the wrong length");
    return f;
}

} // namespace

Json grid_to_json(const Grid2& g)
{
    Json j;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["lx"] = g.lx;
    j["ly"] = g.ly;
    j["periodic_x"] = g.periodic_x;
    j["periodic_y"] = g.periodic_y;
    j["x0"] = g.x0;
    j["y0"] = g.y0;
    j["mu"] = {g.mu.real(), g.mu.imag()};
    j["order"] = g.order;
    return j;
}

Grid2 grid_from_json(const Json& j)
{
    Grid2 g;
    try {
        g.nx = require(j, "nx").get<int>();
        g.ny = require(j, "ny").get<int>();
        g.lx = require(j, "lx").get<double>();
        g.ly = require(j, "ly").get<double>();
        g.periodic_x = require(j, "periodic_x").get<bool>();
        g.periodic_y = require(j, "periodic_y").get<bool>();
        g.x0 = j.value("x0", 0.0);
        g.y0 = j.value("y0", 0.0);
        if (j.contains("mu")) {
            const auto mu = j.at("mu").get<std::vector<double>>();
            if (mu.size() != 2) throw bad_document("\"mu\" must be [re, im]");
            g.mu = Complex(mu[0], mu[1]);
        }
        g.order = j.value("order", 2);
    } catch (const nlohmann::json::exception& e) {
        throw bad_document(e.what());
    }
    g.validate();
    return g;
}

template <int Dim>
Json surface_to_json(const Surface<Dim>& s)
{
    Json j = grid_to_json(s.grid);
    j["ambient_dim"] = Dim;
    if (!s.provenance.empty()) j["catalog"] = s.provenance;
    Json values = Json::array();
    for (const auto& v : s.values) values.push_back(std::vector<double>(v.data(), v.data() + Dim));
    j["values"] = std::move(values);
    return j;
}

template <int Dim>
Surface<Dim> surface_from_json(const Json& j)
{
    Surface<Dim> s;
    s.grid = grid_from_json(j);
    if (require(j, "ambient_dim").get<int>() != Dim)
        throw bad_document("expected ambient_dim " + std::to_string(Dim));
    s.provenance = j.value("catalog", std::string());
    const Json& values = require(j, "values");
    if (!values.is_array() || values.size() != static_cast<std::size_t>(s.grid.size()))
        throw bad_document("\"values\" must hold nx*ny samples");
    s.values.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const Json& row = values[k];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(Dim))
            throw bad_document("sample " + std::to_string(k) + " has the wrong dimension");
        for (int c = 0; c < Dim; ++c) {
            if (!row[c].is_number()) throw bad_document("sample " + std::to_string(k) + " is not numeric");
            s.values[k][c] = row[c].get<double>();
        }
    }
    return s;
}

template Json surface_to_json<4>(const Surface<4>&);
template Json surface_to_json<6>(const Surface<6>&);
template Surface<4> surface_from_json<4>(const Json&);
template Surface<6> surface_from_json<6>(const Json&);

Json s3_to_json(const S3Surface& s)
{
    Json j;
    j["G1"] = surface_to_json(s.G1);
    j["G2"] = surface_to_json(s.G2);
    j["eta"] = scalar_array(s.eta);
    return j;
}

S3Surface s3_from_json(const Json& j)
{
    S3Surface s;
    s.G1 = surface_from_json<4>(require(j, "G1"));
    s.G2 = surface_from_json<4>(require(j, "G2"));
    if (!same_sampling(s.G1.grid, s.G2.grid)) throw bad_document("G1 and G2 are sampled on different grids");
    s.G2.grid = s.G1.grid;
    s.eta = scalar_field(j, s.G1.values.size(), "eta");
    return s;
}

bool is_s3_document(const Json& j) { return j.is_object() && j.contains("G1") && j.contains("G2"); }

int ambient_dim_of(const Json& j)
{
    if (is_s3_document(j)) return 4;
    return require(j, "ambient_dim").get<int>();
}

Json frame_to_json(const SampledSurface& f, const FrameField& F)
{
    Json j = surface_to_json(f);
    Json frame;
    frame["omega"] = scalar_array(F.omega);
    frame["phi"] = scalar_array(F.phi);
    ScalarField re(F.alpha.size()), im(F.alpha.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
        re[k] = F.alpha[k].real();
        im[k] = F.alpha[k].imag();
    }
    frame["alpha_re"] = scalar_array(re);
    frame["alpha_im"] = scalar_array(im);
    Json N = Json::array();
    for (const auto& v : F.N) N.push_back(std::vector<double>(v.data(), v.data() + 6));
    frame["N"] = std::move(N);
    j["frame"] = std::move(frame);
    return j;
}

Json invariants_to_json(const InvariantTriple& t)
{
    Json j = grid_to_json(t.grid);
    j["omega"] = scalar_array(t.omega);
    j["phi"] = scalar_array(t.phi);
    ScalarField re(t.alpha.size()), im(t.alpha.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
        re[k] = t.alpha[k].real();
        im[k] = t.alpha[k].imag();
    }
    j["alpha_re"] = scalar_array(re);
    j["alpha_im"] = scalar_array(im);
    return j;
}

InvariantTriple invariants_from_json(const Json& j)
{
    InvariantTriple t;
    t.grid = grid_from_json(j);
    const std::size_t n = t.grid.size();
    t.omega = scalar_field(j, n, "omega");
    t.phi = scalar_field(j, n, "phi");
    const ScalarField re = scalar_field(j, n, "alpha_re"), im = scalar_field(j, n, "alpha_im");
    t.alpha.resize(n);
    for (std::size_t k = 0; k < n; ++k) t.alpha[k] = Complex(re[k], im[k]);
    return t;
}

Json read_json(const std::string& path)
{
    try {
        if (path == "-") return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw GeometryError(ErrorKind::InvalidArgument, "cannot open " + path);
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw bad_document(e.what());
    }
}

void write_json(const std::string& path, const Json& j, int indent)
{
    const std::string text = j.dump(indent) + "\n";
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

void write_csv(std::ostream& out, const SampledSurface& f)
{
    const Grid2& g = f.grid;
    out << "x,y,c0,c1,c2,c3,c4,c5\n";
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const RealVec6& v = f.at(i, j);
            out << Json(g.x(i)).dump() << ',' << Json(g.y(j)).dump();
            for (int c = 0; c < 6; ++c) out << ',' << Json(v[c]).dump();
            out << '\n';
        }
    }
}

SampledSurface read_csv(std::istream& in, const Grid2& grid)
{
    SampledSurface f;
    f.grid = grid;
    f.values.resize(grid.size());
    std::string line;
    std::getline(in, line);
    int k = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (k >= grid.size()) throw bad_document("csv has more rows than grid samples");
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
        if (cells.size() != 8) throw bad_document("csv row " + std::to_string(k) + " needs 8 columns");
        for (int c = 0; c < 6; ++c) f.values[k][c] = cells[2 + c];
        ++k;
    }
    if (k != grid.size()) throw bad_document("csv has fewer rows than grid samples");
    return f;
}

Eigen::Matrix<double, 3, 6> pca_projection(const SampledSurface& f)
{
    RealVec6 mean = RealVec6::Zero();
    for (const auto& v : f.values) mean += v;
    mean /= static_cast<double>(f.values.size());
    Matrix6d cov = Matrix6d::Zero();
    for (const auto& v : f.values) cov += (v - mean) * (v - mean).transpose();
    Eigen::SelfAdjointEigenSolver<Matrix6d> es(cov);
    Eigen::Matrix<double, 3, 6> P;
    for (int r = 0; r < 3; ++r) P.row(r) = es.eigenvectors().col(5 - r).transpose();
    return P;
}

void write_obj(std::ostream& out, const SampledSurface& f, const Eigen::Matrix<double, 3, 6>& P)
{
    const Grid2& g = f.grid;
    for (const auto& v : f.values) {
        const Eigen::Vector3d p = P * v;
        out << "v " << Json(p[0]).dump() << ' ' << Json(p[1]).dump() << ' ' << Json(p[2]).dump() << '\n';
    }
    const int ni = g.periodic_x ? g.nx : g.nx - 1;
    const int nj = g.periodic_y ? g.ny : g.ny - 1;
    for (int i = 0; i < ni; ++i) {
        for (int j = 0; j < nj; ++j) {
            const int i1 = (i + 1) % g.nx, j1 = (j + 1) % g.ny;
            out << "f " << g.index(i, j) + 1 << ' ' << g.index(i1, j) + 1 << ' ' << g.index(i1, j1) + 1 << ' '
                << g.index(i, j1) + 1 << '\n';
        }
    }
}

} // namespace minsurf
