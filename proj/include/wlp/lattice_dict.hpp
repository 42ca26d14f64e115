#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "wlp/types.hpp"

namespace wlp {

// Lattice parameters. Coordinates are integer multiples of epsilon = 1/n;
// max_edge_len is measured in lattice units (before scaling by epsilon).
struct LatticeSpec {
  int resolution_n = 1;
  Vec3i box = Vec3i::Zero();  // lattice extents per axis; vertices 0..box[k]
  double max_edge_len = 0.0;

  double epsilon() const { return 1.0 / resolution_n; }
  void validate() const;
};

struct OrientedTriangle {
  std::array<Index, 3> v{};  // vertex ids, ordered (orientation)
  Index id = -1;
};

struct OrientedEdge {
  std::array<Index, 2> v{};  // ordered endpoints
  Index id = -1;
};

// Finite dictionary of oriented lattice triangles and their oriented edges.
// Both orientations of every triangle and edge are present; opposite(x) is
// id ^ 1 for triangles and edges alike.
struct TriangleDictionary {
  LatticeSpec spec;
  std::vector<Vec3i> vertices;
  std::vector<OrientedTriangle> triangles;  // size N
  std::vector<OrientedEdge> edges;          // size M
  std::unordered_map<EdgeKey, std::vector<Index>, EdgeKeyHash>
      adjacency;  // unoriented edge -> incident triangle ids

  Index num_triangles() const { return static_cast<Index>(triangles.size()); }
  Index num_edges() const { return static_cast<Index>(edges.size()); }

  Index opposite_triangle(Index t) const { return t ^ 1; }
  Index opposite_edge(Index e) const { return e ^ 1; }

  // Position scaled by epsilon.
  Vec3d vertex_pos(Index v) const {
    return vertices[v].cast<double>() * spec.epsilon();
  }

  std::optional<Index> find_vertex(const Vec3i& p) const;
  std::optional<Index> find_edge(Index a, Index b) const;  // oriented a->b
  std::optional<Index> find_triangle(Index v0, Index v1, Index v2) const;

  // True if the oriented triangle t contains the directed edge a->b.
  bool triangle_has_directed_edge(Index t, Index a, Index b) const;

 private:
  mutable std::unordered_map<std::uint64_t, Index> edge_lookup_;
  mutable bool edge_lookup_built_ = false;
  void build_edge_lookup() const;
};

TriangleDictionary generate_dictionary(const LatticeSpec& spec);

// Rebuild edges and adjacency from explicit vertex and triangle lists
// (e.g. a dictionary loaded from a dump). Triangle ids must be 0..N-1 in
// list order with opposite orientations at ids 2g, 2g+1.
TriangleDictionary assemble_dictionary(const LatticeSpec& spec,
                                       std::vector<Vec3i> vertices,
                                       std::vector<OrientedTriangle> triangles);

// Sub-dictionary spanned by the given triangles (opposites are added so the
// orientation involution stays total). Edges and adjacency are rebuilt;
// vertex table and spec are kept.
TriangleDictionary restrict_dictionary(const TriangleDictionary& dict,
                                       std::span<const Index> triangle_ids);

struct AdjacentPair {
  Index tri_i = -1;  // tri_i < tri_j
  Index tri_j = -1;
  EdgeKey edge;
};

// Unordered pairs of distinct oriented triangles sharing a geometric edge.
// A triangle paired with its own opposite is not listed.
std::vector<AdjacentPair> adjacent_pairs(const TriangleDictionary& dict);

}  // namespace wlp
