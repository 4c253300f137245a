#include "vdg/mesh.hpp"

#include <cmath>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vdg {

BoundaryTag boundary_tag_from_string(const std::string& s) {
    if (s == "free_surface" || s == "free") return BoundaryTag::free_surface;
    if (s == "absorbing") return BoundaryTag::absorbing;
    if (s == "exact") return BoundaryTag::exact;
    throw std::invalid_argument("unknown boundary tag: " + s);
}

std::array<Eigen::Vector2d, 3> Mesh::vertices_of(int k) const {
    std::array<Eigen::Vector2d, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = Eigen::Vector2d(vx(tri[k][i]), vz(tri[k][i]));
    return v;
}

Mesh uniform_tri_mesh(int nx, int nz, double x0, double x1, double z0, double z1,
                      BoundaryTag left, BoundaryTag right, BoundaryTag bottom,
                      BoundaryTag top) {
    if (nx < 1 || nz < 1) throw std::invalid_argument("uniform_tri_mesh: need nx, nz >= 1");
    if (!(x1 > x0) || !(z1 > z0))
        throw std::invalid_argument("uniform_tri_mesh: degenerate bounds");
    Mesh m;
    const int nvx = nx + 1, nvz = nz + 1;
    m.vx.resize(nvx * nvz);
    m.vz.resize(nvx * nvz);
    for (int j = 0; j < nvz; ++j)
        for (int i = 0; i < nvx; ++i) {
            m.vx(j * nvx + i) = x0 + (x1 - x0) * i / nx;
            m.vz(j * nvx + i) = z0 + (z1 - z0) * j / nz;
        }
    auto vid = [nvx](int i, int j) { return j * nvx + i; };
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nx; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            m.tri.push_back({a, b, d});
            m.tri.push_back({b, c, d});
        }
    m.material.assign(m.tri.size(), 0);

    // tag boundary faces by vertex pair
    std::map<std::pair<int, int>, BoundaryTag> tags;
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (int i = 0; i < nx; ++i) {
        tags[key(vid(i, 0), vid(i + 1, 0))] = bottom;
        tags[key(vid(i, nz), vid(i + 1, nz))] = top;
    }
    for (int j = 0; j < nz; ++j) {
        tags[key(vid(0, j), vid(0, j + 1))] = left;
        tags[key(vid(nx, j), vid(nx, j + 1))] = right;
    }
    connect(m);
    for (int k = 0; k < m.num_elements(); ++k)
        for (int f = 0; f < 3; ++f)
            if (m.etoe[k][f] < 0) {
                const int a = m.tri[k][f], b = m.tri[k][(f + 1) % 3];
                m.btag[k][f] = tags.at(key(a, b));
            }
    geometric_factors(m);
    return m;
}

void connect(Mesh& mesh, BoundaryTag fallback) {
    const int K = mesh.num_elements();
    mesh.etoe.assign(K, {-1, -1, -1});
    mesh.etof.assign(K, {-1, -1, -1});
    mesh.btag.assign(K, {fallback, fallback, fallback});
    std::map<std::pair<int, int>, std::pair<int, int>> open;
    for (int k = 0; k < K; ++k) {
        for (int f = 0; f < 3; ++f) {
            const int a = mesh.tri[k][f], b = mesh.tri[k][(f + 1) % 3];
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = open.find(key);
            if (it == open.end()) {
                open[key] = {k, f};
            } else {
                const auto [k2, f2] = it->second;
                if (mesh.etoe[k2][f2] >= 0)
                    throw std::invalid_argument(
                        "connect: face shared by more than two elements near element " +
                        std::to_string(k));
                mesh.etoe[k][f] = k2;
                mesh.etof[k][f] = f2;
                mesh.etoe[k2][f2] = k;
                mesh.etof[k2][f2] = f;
                mesh.btag[k][f] = BoundaryTag::none;
                mesh.btag[k2][f2] = BoundaryTag::none;
                open.erase(it);
            }
        }
    }
}

void geometric_factors(Mesh& mesh) {
    const int K = mesh.num_elements();
    mesh.J.resize(K);
    mesh.rx.resize(K);
    mesh.rz.resize(K);
    mesh.sx.resize(K);
    mesh.sz.resize(K);
    mesh.nx.resize(K, 3);
    mesh.nz.resize(K, 3);
    mesh.Jf.resize(K, 3);
    // reference face lengths for faces 0,1,2
    const double reflen[3] = {2.0, 2.0 * std::sqrt(2.0), 2.0};
    for (int k = 0; k < K; ++k) {
        const auto v = mesh.vertices_of(k);
        const double xr = 0.5 * (v[1].x() - v[0].x()), xs = 0.5 * (v[2].x() - v[0].x());
        const double zr = 0.5 * (v[1].y() - v[0].y()), zs = 0.5 * (v[2].y() - v[0].y());
        const double J = xr * zs - xs * zr;
        if (!(J > 0.0))
            throw std::invalid_argument("geometric_factors: inverted or degenerate element " +
                                        std::to_string(k));
        mesh.J(k) = J;
        mesh.rx(k) = zs / J;
        mesh.rz(k) = -xs / J;
        mesh.sx(k) = -zr / J;
        mesh.sz(k) = xr / J;
        for (int f = 0; f < 3; ++f) {
            const Eigen::Vector2d p = v[f], q = v[(f + 1) % 3];
            const double tx = q.x() - p.x(), tz = q.y() - p.y();
            const double len = std::hypot(tx, tz);
            mesh.nx(k, f) = tz / len;   // outward normal for CCW orientation
            mesh.nz(k, f) = -tx / len;
            mesh.Jf(k, f) = len / reflen[f];
        }
    }
}

void nodal_coordinates(const Mesh& mesh, const ReferenceOperators& ops,
                       Eigen::MatrixXd& x, Eigen::MatrixXd& z) {
    const int K = mesh.num_elements();
    x.resize(K, ops.Np);
    z.resize(K, ops.Np);
    for (int k = 0; k < K; ++k) {
        const auto v = mesh.vertices_of(k);
        for (int i = 0; i < ops.Np; ++i) {
            const double l0 = -0.5 * (ops.r(i) + ops.s(i));
            const double l1 = 0.5 * (1.0 + ops.r(i));
            const double l2 = 0.5 * (1.0 + ops.s(i));
            x(k, i) = l0 * v[0].x() + l1 * v[1].x() + l2 * v[2].x();
            z(k, i) = l0 * v[0].y() + l1 * v[1].y() + l2 * v[2].y();
        }
    }
}

std::vector<std::array<std::vector<int>, 3>> build_face_permutations(
    const Mesh& mesh, const ReferenceOperators& ops, double tol) {
    Eigen::MatrixXd x, z;
    nodal_coordinates(mesh, ops, x, z);
    const int K = mesh.num_elements();
    std::vector<std::array<std::vector<int>, 3>> perm(K);
    for (int k = 0; k < K; ++k) {
        for (int f = 0; f < 3; ++f) {
            const int k2 = mesh.etoe[k][f];
            if (k2 < 0) continue;
            const int f2 = mesh.etof[k][f];
            const auto& fm = ops.fmask[f];
            const auto& fm2 = ops.fmask[f2];
            auto& p = perm[k][f];
            p.resize(ops.Nfp);
            const double scale = std::sqrt(mesh.element_area(k));
            for (int i = 0; i < ops.Nfp; ++i) {
                int best = -1;
                double bestd = std::numeric_limits<double>::max();
                for (int j = 0; j < ops.Nfp; ++j) {
                    const double d = std::hypot(x(k2, fm2[j]) - x(k, fm[i]),
                                                z(k2, fm2[j]) - z(k, fm[i]));
                    if (d < bestd) {
                        bestd = d;
                        best = j;
                    }
                }
                if (bestd > tol * scale)
                    throw std::invalid_argument(
                        "connect: non-conforming face between elements " + std::to_string(k) +
                        " and " + std::to_string(k2) + " (face " + std::to_string(f) + ")");
                p[i] = best;
            }
        }
    }
    return perm;
}

void tag_layers(Mesh& mesh, double z_split, int bottom_id, int top_id) {
    for (int k = 0; k < mesh.num_elements(); ++k) {
        const auto v = mesh.vertices_of(k);
        const double zc = (v[0].y() + v[1].y() + v[2].y()) / 3.0;
        mesh.material[k] = (zc >= z_split) ? top_id : bottom_id;
    }
}

Mesh read_mesh_text(std::istream& in) {
    Mesh m;
    std::vector<double> vx, vz;
    std::map<std::pair<int, int>, BoundaryTag> tags;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "vertex") {
            double x, z;
            if (!(ls >> x >> z))
                throw std::invalid_argument("mesh line " + std::to_string(lineno) +
                                            ": expected 'vertex x z'");
            vx.push_back(x);
            vz.push_back(z);
        } else if (kind == "triangle") {
            int a, b, c;
            if (!(ls >> a >> b >> c))
                throw std::invalid_argument("mesh line " + std::to_string(lineno) +
                                            ": expected 'triangle a b c [matid]'");
            int mat = 0;
            ls >> mat;
            m.tri.push_back({a, b, c});
            m.material.push_back(mat);
        } else if (kind == "boundary") {
            int a, b;
            std::string tag;
            if (!(ls >> a >> b >> tag))
                throw std::invalid_argument("mesh line " + std::to_string(lineno) +
                                            ": expected 'boundary a b tag'");
            tags[{std::min(a, b), std::max(a, b)}] = boundary_tag_from_string(tag);
        } else {
            throw std::invalid_argument("mesh line " + std::to_string(lineno) +
                                        ": unknown record '" + kind + "'");
        }
    }
    m.vx = Eigen::Map<Eigen::VectorXd>(vx.data(), vx.size());
    m.vz = Eigen::Map<Eigen::VectorXd>(vz.data(), vz.size());
    for (const auto& t : m.tri)
        for (int i : t)
            if (i < 0 || i >= m.vx.size())
                throw std::invalid_argument("mesh: triangle vertex index out of range");
    connect(m);
    for (int k = 0; k < m.num_elements(); ++k)
        for (int f = 0; f < 3; ++f)
            if (m.etoe[k][f] < 0) {
                const int a = m.tri[k][f], b = m.tri[k][(f + 1) % 3];
                auto it = tags.find({std::min(a, b), std::max(a, b)});
                if (it != tags.end()) m.btag[k][f] = it->second;
            }
    geometric_factors(m);
    return m;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
    out.precision(17);
    for (int i = 0; i < mesh.vx.size(); ++i)
        out << "vertex " << mesh.vx(i) << " " << mesh.vz(i) << "\n";
    for (int k = 0; k < mesh.num_elements(); ++k)
        out << "triangle " << mesh.tri[k][0] << " " << mesh.tri[k][1] << " " << mesh.tri[k][2]
            << " " << mesh.material[k] << "\n";
    for (int k = 0; k < mesh.num_elements(); ++k)
        for (int f = 0; f < 3; ++f)
            if (mesh.etoe[k][f] < 0 && mesh.btag[k][f] != BoundaryTag::none) {
                const char* names[] = {"free_surface", "absorbing", "exact"};
                out << "boundary " << mesh.tri[k][f] << " " << mesh.tri[k][(f + 1) % 3] << " "
                    << names[static_cast<int>(mesh.btag[k][f])] << "\n";
            }
}

}  // namespace vdg
