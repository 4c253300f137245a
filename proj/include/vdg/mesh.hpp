#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdg/refelem.hpp"

namespace vdg {

enum class BoundaryTag : int {
    none = -1,       // interior face
    free_surface = 0,
    absorbing = 1,
    exact = 2,       // exterior trace from a prescribed solution
};

BoundaryTag boundary_tag_from_string(const std::string& s);

/// Conforming triangle mesh with affine geometric factors.
/// Element faces: 0: (v0,v1), 1: (v1,v2), 2: (v2,v0); vertices counterclockwise.
struct Mesh {
    Eigen::VectorXd vx, vz;                    // vertex coordinates (m)
    std::vector<std::array<int, 3>> tri;       // element -> vertices, CCW
    std::vector<int> material;                 // element -> material id

    // Connectivity (filled by connect()): neighbor element/face or -1.
    std::vector<std::array<int, 3>> etoe, etof;
    std::vector<std::array<BoundaryTag, 3>> btag;

    // Affine factors (filled by geometric_factors()).
    Eigen::VectorXd J;                          // Jacobian determinant
    Eigen::VectorXd rx, rz, sx, sz;             // chain rule: d/dx = rx Dr + sx Ds
    Eigen::MatrixXd nx, nz, Jf;                 // K x 3 face normals and face Jacobians

    int num_elements() const { return static_cast<int>(tri.size()); }
    double element_area(int k) const { return 2.0 * J(k); }

    std::array<Eigen::Vector2d, 3> vertices_of(int k) const;
};

// Structured mesh of 2*nx*nz triangles: quads split along the diagonal.
// Boundary faces tagged per side.
Mesh uniform_tri_mesh(int nx, int nz, double x0, double x1, double z0, double z1,
                      BoundaryTag left = BoundaryTag::absorbing,
                      BoundaryTag right = BoundaryTag::absorbing,
                      BoundaryTag bottom = BoundaryTag::absorbing,
                      BoundaryTag top = BoundaryTag::absorbing);

// Builds etoe/etof by matching vertex pairs; throws on non-conforming input.
// Boundary faces not present in btag default to `fallback`.
void connect(Mesh& mesh, BoundaryTag fallback = BoundaryTag::absorbing);

// Fills J, chain-rule factors, normals and face Jacobians; throws on J <= 0.
void geometric_factors(Mesh& mesh);

// Physical node coordinates for a reference element (K x Np each).
void nodal_coordinates(const Mesh& mesh, const ReferenceOperators& ops,
                       Eigen::MatrixXd& x, Eigen::MatrixXd& z);

// For every interior face, the permutation p such that my face node i
// coincides with neighbor face node p[i]; validated against coordinates.
std::vector<std::array<std::vector<int>, 3>> build_face_permutations(
    const Mesh& mesh, const ReferenceOperators& ops, double tol = 1e-10);

// Assign material ids by vertical threshold: z >= z_split -> top id.
void tag_layers(Mesh& mesh, double z_split, int bottom_id, int top_id);

// Minimal text format: "vertex x z", "triangle a b c [matid]",
// "boundary a b tag" lines (# comments).  Vertices are 0-based.
Mesh read_mesh_text(std::istream& in);
void write_mesh_text(const Mesh& mesh, std::ostream& out);

}  // namespace vdg
