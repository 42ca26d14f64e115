#include "wlp/qp_oracle.hpp"

namespace wlp {

QuadraticEnergy build_q(const TriangleDictionary& dict,
                        const IntegrandSpec& integrand) {
  QuadraticEnergy q;
  q.q_diag = Eigen::VectorXd::Zero(dict.num_triangles());
  for (Index t = 0; t < dict.num_triangles(); ++t) {
    const auto tri = triangle_coords(dict, t);
    q.q_diag[t] = integrand.phi_tilde(tri, triangle_unit_normal(tri));
  }
  q.pairs = admissible_quadrangles(dict);
  for (const AdjacentPair& p : q.pairs) {
    const double term =
        energy_edge_term(hinge(dict, p.tri_i, p.tri_j, p.edge), integrand);
    q.q_off[QuadraticEnergy::key(p.tri_i, p.tri_j)] = 0.5 * term;
  }
  return q;
}

double quadratic_energy(const Eigen::VectorXi& x, const QuadraticEnergy& q) {
  if (x.size() != q.q_diag.size())
    throw Error("quadratic_energy: dimension mismatch");
  double e = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i]) e += q.q_diag[i];
  for (const AdjacentPair& p : q.pairs)
    if (x[p.tri_i] && x[p.tri_j]) e += 2.0 * q.off(p.tri_i, p.tri_j);
  return e;
}

}  // namespace wlp
