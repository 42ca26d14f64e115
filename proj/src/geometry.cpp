#include "wlp/geometry.hpp"

#include <cmath>
#include <map>

namespace wlp {

namespace {

using Vec3l = Eigen::Matrix<std::int64_t, 3, 1>;

Vec3l to64(const Vec3i& v) { return v.cast<std::int64_t>(); }

// Shared angle computation. c = n_i x n_j, d = directed shared edge of t_i,
// s = c . d resolves the fold side. Works for exact integer inputs (flat
// hinges give c == 0) and for floating input with a relative threshold.
void fill_angles(HingeGeometry& h, const Vec3d& n_i, const Vec3d& n_j,
                 const Vec3d& c, double s, double parallel_tol) {
  const double scale = n_i.norm() * n_j.norm();
  const double dot = n_i.dot(n_j);
  h.normal_i = n_i.normalized();
  h.normal_j = n_j.normalized();
  if (c.norm() <= parallel_tol * scale) {
    if (dot > 0) {
      h.dihedral_angle = M_PI;
      h.cos_half = 0.0;
      h.bisecting_normal = h.normal_i;
    } else {
      h.degenerate = true;
    }
    return;
  }
  // Both normals are perpendicular to the shared edge, so c is parallel to
  // it and s = |c| up to the fold sign: sin(beta) = s / (|n_i||n_j|).
  const double cos_beta = std::clamp(dot / scale, -1.0, 1.0);
  const double sin_beta = std::clamp(s / scale, -1.0, 1.0);
  const double beta = std::atan2(sin_beta, cos_beta);
  h.dihedral_angle = M_PI - beta;
  // cos(theta/2) = sin(beta/2), computed stably with explicit sign.
  h.cos_half = std::copysign(std::sqrt(0.5 * (1.0 - cos_beta)), sin_beta);
  h.bisecting_normal = (h.normal_i + h.normal_j).normalized();
}

}  // namespace

IntegrandSpec IntegrandSpec::willmore() {
  IntegrandSpec s;
  s.phi = [](const Vec3d&, const Vec3d&, const Vec3d& H) {
    return H.squaredNorm();
  };
  s.phi_tilde = [](const std::array<Vec3d, 3>&, const Vec3d&) { return 0.0; };
  return s;
}

IntegrandSpec IntegrandSpec::area() {
  IntegrandSpec s;
  s.phi = [](const Vec3d&, const Vec3d&, const Vec3d&) { return 1.0; };
  s.phi_tilde = [](const std::array<Vec3d, 3>&, const Vec3d&) { return 0.0; };
  return s;
}

std::array<Vec3d, 3> triangle_coords(const TriangleDictionary& dict, Index t) {
  const auto& v = dict.triangles[t].v;
  return {dict.vertex_pos(v[0]), dict.vertex_pos(v[1]), dict.vertex_pos(v[2])};
}

Vec3d triangle_unit_normal(const std::array<Vec3d, 3>& tri) {
  return (tri[1] - tri[0]).cross(tri[2] - tri[0]).normalized();
}

double triangle_area(const std::array<Vec3d, 3>& tri) {
  return 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]).norm();
}

HingeGeometry hinge(const TriangleDictionary& dict, Index tri_i, Index tri_j,
                    const EdgeKey& edge) {
  const auto& ti = dict.triangles[tri_i].v;
  const auto& tj = dict.triangles[tri_j].v;

  // Directed shared edge as induced by tri_i.
  Index p = -1, q = -1;
  for (int r = 0; r < 3; ++r) {
    Index a = ti[r], b = ti[(r + 1) % 3];
    if (EdgeKey(a, b) == edge) {
      p = a;
      q = b;
      break;
    }
  }
  if (p < 0) throw Error("hinge: edge is not an edge of the first triangle");
  bool j_has = false;
  for (int r = 0; r < 3; ++r)
    if (EdgeKey(tj[r], tj[(r + 1) % 3]) == edge) j_has = true;
  if (!j_has) throw Error("hinge: edge is not an edge of the second triangle");

  // Exact integer normals and fold side.
  const Vec3l ni = to64(dict.vertices[ti[1]] - dict.vertices[ti[0]])
                       .cross(to64(dict.vertices[ti[2]] - dict.vertices[ti[0]]));
  const Vec3l nj = to64(dict.vertices[tj[1]] - dict.vertices[tj[0]])
                       .cross(to64(dict.vertices[tj[2]] - dict.vertices[tj[0]]));
  const Vec3l c = ni.cross(nj);
  const Vec3l d = to64(dict.vertices[q] - dict.vertices[p]);
  const double s =
      static_cast<double>(c.dot(d)) / std::sqrt(static_cast<double>(d.squaredNorm()));

  HingeGeometry h;
  fill_angles(h, ni.cast<double>(), nj.cast<double>(), c.cast<double>(), s,
              /*parallel_tol=*/0.0);

  const double eps = dict.spec.epsilon();
  h.edge_len = std::sqrt(static_cast<double>(d.squaredNorm())) * eps;
  h.total_area = 0.5 * (std::sqrt(static_cast<double>(ni.squaredNorm())) +
                        std::sqrt(static_cast<double>(nj.squaredNorm()))) *
                 eps * eps;
  h.midpoint = 0.5 * (dict.vertex_pos(p) + dict.vertex_pos(q));
  return h;
}

HingeGeometry make_hinge(const std::array<Vec3d, 3>& t1,
                         const std::array<Vec3d, 3>& t2, const Vec3d& a,
                         const Vec3d& b) {
  const Vec3d n1 = (t1[1] - t1[0]).cross(t1[2] - t1[0]);
  const Vec3d n2 = (t2[1] - t2[0]).cross(t2[2] - t2[0]);
  const Vec3d c = n1.cross(n2);
  const Vec3d d = b - a;
  const double s = c.dot(d) / d.norm();

  HingeGeometry h;
  fill_angles(h, n1, n2, c, s, /*parallel_tol=*/1e-12);
  h.edge_len = d.norm();
  h.total_area = 0.5 * (n1.norm() + n2.norm());
  h.midpoint = 0.5 * (a + b);
  return h;
}

Vec3d mean_curvature_edge(const HingeGeometry& h) {
  if (h.degenerate) throw Error("mean_curvature_edge: degenerate hinge");
  return h.edge_len * h.cos_half * h.bisecting_normal;
}

Vec3d mean_curvature_pointwise(const HingeGeometry& h) {
  if (h.degenerate) throw Error("mean_curvature_pointwise: degenerate hinge");
  return (3.0 * h.edge_len / h.total_area) * h.cos_half * h.bisecting_normal;
}

double energy_edge_term(const HingeGeometry& h,
                        const IntegrandSpec& integrand) {
  if (h.degenerate) throw Error("energy_edge_term: degenerate hinge");
  const double val = integrand.phi(h.midpoint, h.bisecting_normal,
                                   mean_curvature_pointwise(h));
  if (!std::isfinite(val))
    throw Error("energy_edge_term: integrand returned a non-finite value");
  return h.total_area / 3.0 * val;
}

double willmore_edge_term(const HingeGeometry& h) {
  if (h.degenerate) throw Error("willmore_edge_term: degenerate hinge");
  return 3.0 * h.edge_len * h.edge_len / h.total_area * h.cos_half * h.cos_half;
}

double mesh_energy(std::span<const Index> mesh, const TriangleDictionary& dict,
                   const IntegrandSpec& integrand) {
  std::map<EdgeKey, std::vector<Index>> by_edge;
  double energy = 0.0;
  for (Index t : mesh) {
    const auto& v = dict.triangles[t].v;
    for (int r = 0; r < 3; ++r) by_edge[EdgeKey(v[r], v[(r + 1) % 3])].push_back(t);
    const auto tri = triangle_coords(dict, t);
    energy += integrand.phi_tilde(tri, triangle_unit_normal(tri));
  }
  for (const auto& [key, inc] : by_edge) {
    if (inc.size() == 1) continue;  // boundary edge of the mesh
    if (inc.size() > 2)
      throw Error("mesh_energy: non-manifold inner edge");
    const Index i = std::min(inc[0], inc[1]), j = std::max(inc[0], inc[1]);
    energy += energy_edge_term(hinge(dict, i, j, key), integrand);
  }
  return energy;
}

double mesh_energy(const std::vector<Vec3d>& vertices,
                   const std::vector<std::array<Index, 3>>& faces,
                   const IntegrandSpec& integrand) {
  auto coords = [&](const std::array<Index, 3>& f) {
    return std::array<Vec3d, 3>{vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  };
  std::map<EdgeKey, std::vector<Index>> by_edge;
  double energy = 0.0;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& f = faces[k];
    for (int r = 0; r < 3; ++r)
      by_edge[EdgeKey(f[r], f[(r + 1) % 3])].push_back(static_cast<Index>(k));
    const auto tri = coords(f);
    energy += integrand.phi_tilde(tri, triangle_unit_normal(tri));
  }
  for (const auto& [key, inc] : by_edge) {
    if (inc.size() == 1) continue;
    if (inc.size() > 2) throw Error("mesh_energy: non-manifold inner edge");
    const auto& fi = faces[inc[0]];
    // Directed shared edge as induced by the first face.
    Index p = -1, q = -1;
    for (int r = 0; r < 3; ++r) {
      if (EdgeKey(fi[r], fi[(r + 1) % 3]) == key) {
        p = fi[r];
        q = fi[(r + 1) % 3];
        break;
      }
    }
    const HingeGeometry h = make_hinge(coords(fi), coords(faces[inc[1]]),
                                       vertices[p], vertices[q]);
    energy += energy_edge_term(h, integrand);
  }
  return energy;
}

std::vector<AdjacentPair> admissible_quadrangles(
    const TriangleDictionary& dict) {
  std::vector<AdjacentPair> out;
  for (const AdjacentPair& p : adjacent_pairs(dict)) {
    if (!hinge(dict, p.tri_i, p.tri_j, p.edge).degenerate) out.push_back(p);
  }
  return out;
}

}  // namespace wlp
