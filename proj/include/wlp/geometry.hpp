#pragma once

#include <functional>
#include <span>

#include "wlp/lattice_dict.hpp"

namespace wlp {

// Geometry of two triangles meeting at a shared edge.
//
// dihedral_angle lies in (0, 2*pi): pi means the two triangles are coplanar
// with consistent orientation, values below pi bend away from the normals
// (convex), values above pi bend towards them. cos_half = cos(theta/2) is
// therefore signed, and exactly 0 for flat lattice hinges.
struct HingeGeometry {
  double edge_len = 0.0;
  double dihedral_angle = 0.0;
  Vec3d bisecting_normal = Vec3d::Zero();  // unit, along n_i + n_j
  double total_area = 0.0;
  Vec3d normal_i = Vec3d::Zero();  // unit triangle normals
  Vec3d normal_j = Vec3d::Zero();
  Vec3d midpoint = Vec3d::Zero();  // midpoint of the shared edge
  double cos_half = 0.0;
  bool degenerate = false;  // anti-parallel normals (folded flat)
};

// Integrand of the curvature energy: phi(x, n, H) integrated over the
// surface plus an optional per-triangle term phi_tilde(vertices, n).
struct IntegrandSpec {
  std::function<double(const Vec3d& x, const Vec3d& n, const Vec3d& H)> phi;
  std::function<double(const std::array<Vec3d, 3>& tri, const Vec3d& n)>
      phi_tilde;

  static IntegrandSpec willmore();  // phi = |H|^2, phi_tilde = 0
  static IntegrandSpec area();      // phi = 1,     phi_tilde = 0
};

// Hinge of two dictionary triangles sharing `edge`. Angles are derived from
// exact integer cross products, so flat lattice hinges give cos_half == 0.
HingeGeometry hinge(const TriangleDictionary& dict, Index tri_i, Index tri_j,
                    const EdgeKey& edge);

// Same from raw coordinates; the shared edge is a->b and must appear as a
// directed edge of t1 (any position) with both endpoints also in t2.
HingeGeometry make_hinge(const std::array<Vec3d, 3>& t1,
                         const std::array<Vec3d, 3>& t2, const Vec3d& a,
                         const Vec3d& b);

// Polthier's edge-based mean curvature |e| cos(theta/2) N_e. Equals the
// gradient of the total area of the two triangles with respect to moving any
// point of the shared edge.
Vec3d mean_curvature_edge(const HingeGeometry& h);

// Pointwise rescaling 3|e|/A_e cos(theta/2) N_e.
Vec3d mean_curvature_pointwise(const HingeGeometry& h);

// (A_e/3) phi(midpoint, N_e, H_pw).
double energy_edge_term(const HingeGeometry& h, const IntegrandSpec& integrand);

// 3|e|^2/A_e cos^2(theta/2).
double willmore_edge_term(const HingeGeometry& h);

std::array<Vec3d, 3> triangle_coords(const TriangleDictionary& dict, Index t);
Vec3d triangle_unit_normal(const std::array<Vec3d, 3>& tri);
double triangle_area(const std::array<Vec3d, 3>& tri);

// Energy of a triangle set: hinge terms over inner edges (exactly two
// incident mesh triangles) plus the per-triangle terms. Throws on
// non-manifold inner edges and on degenerate hinges.
double mesh_energy(std::span<const Index> mesh, const TriangleDictionary& dict,
                   const IntegrandSpec& integrand);

// Same for a raw indexed mesh (no dictionary).
double mesh_energy(const std::vector<Vec3d>& vertices,
                   const std::vector<std::array<Index, 3>>& faces,
                   const IntegrandSpec& integrand);

// Adjacent pairs admissible as quadrangles: degenerate hinges (anti-parallel
// normals) are excluded along with opposite-orientation copies.
std::vector<AdjacentPair> admissible_quadrangles(const TriangleDictionary& dict);

}  // namespace wlp
