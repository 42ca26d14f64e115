#include "wlp/lattice_dict.hpp"

#include <algorithm>
#include <set>

namespace wlp {

void LatticeSpec::validate() const {
  if (resolution_n < 1) throw Error("LatticeSpec: resolution_n must be >= 1");
  if (box.minCoeff() < 0) throw Error("LatticeSpec: box extents must be >= 0");
  if (max_edge_len < 1.0)
    throw Error("LatticeSpec: max_edge_len must be >= 1 (lattice units)");
}

namespace {

std::uint64_t edge_code(Index a, Index b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

bool collinear(const Vec3i& a, const Vec3i& b, const Vec3i& c) {
  const Vec3i u = b - a, v = c - a;
  return u.cross(v).isZero(0);
}

}  // namespace

void TriangleDictionary::build_edge_lookup() const {
  for (const auto& e : edges) edge_lookup_[edge_code(e.v[0], e.v[1])] = e.id;
  edge_lookup_built_ = true;
}

std::optional<Index> TriangleDictionary::find_vertex(const Vec3i& p) const {
  // Vertices are lexicographically sorted; binary search.
  auto cmp = [](const Vec3i& x, const Vec3i& y) {
    if (x.x() != y.x()) return x.x() < y.x();
    if (x.y() != y.y()) return x.y() < y.y();
    return x.z() < y.z();
  };
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p, cmp);
  if (it != vertices.end() && *it == p)
    return static_cast<Index>(it - vertices.begin());
  return std::nullopt;
}

std::optional<Index> TriangleDictionary::find_edge(Index a, Index b) const {
  if (!edge_lookup_built_) build_edge_lookup();
  auto it = edge_lookup_.find(edge_code(a, b));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> TriangleDictionary::find_triangle(Index v0, Index v1,
                                                       Index v2) const {
  // Rotate so the smallest vertex comes first, then scan the adjacency of one
  // of its edges.
  std::array<Index, 3> t{v0, v1, v2};
  auto it = adjacency.find(EdgeKey(v0, v1));
  if (it == adjacency.end()) return std::nullopt;
  for (Index ti : it->second) {
    const auto& w = triangles[ti].v;
    for (int r = 0; r < 3; ++r) {
      if (w[r] == t[0] && w[(r + 1) % 3] == t[1] && w[(r + 2) % 3] == t[2])
        return ti;
    }
  }
  return std::nullopt;
}

bool TriangleDictionary::triangle_has_directed_edge(Index t, Index a,
                                                    Index b) const {
  const auto& w = triangles[t].v;
  for (int r = 0; r < 3; ++r)
    if (w[r] == a && w[(r + 1) % 3] == b) return true;
  return false;
}

namespace {

// Rebuild edges (both orientations, lexicographic id order) and adjacency
// from a triangle list.
void index_edges(TriangleDictionary& dict) {
  std::set<std::pair<Index, Index>> unordered;
  dict.adjacency.clear();
  for (const auto& t : dict.triangles) {
    for (int r = 0; r < 3; ++r) {
      Index a = t.v[r], b = t.v[(r + 1) % 3];
      EdgeKey key(a, b);
      unordered.insert({key.a, key.b});
      auto& inc = dict.adjacency[key];
      if (inc.empty() || inc.back() != t.id) inc.push_back(t.id);
    }
  }
  dict.edges.clear();
  dict.edges.reserve(2 * unordered.size());
  for (const auto& [a, b] : unordered) {
    Index id = static_cast<Index>(dict.edges.size());
    dict.edges.push_back({{a, b}, id});
    dict.edges.push_back({{b, a}, static_cast<Index>(id + 1)});
  }
}

}  // namespace

TriangleDictionary generate_dictionary(const LatticeSpec& spec) {
  spec.validate();
  TriangleDictionary dict;
  dict.spec = spec;

  for (int i = 0; i <= spec.box.x(); ++i)
    for (int j = 0; j <= spec.box.y(); ++j)
      for (int k = 0; k <= spec.box.z(); ++k)
        dict.vertices.push_back(Vec3i(i, j, k));

  const Index nv = static_cast<Index>(dict.vertices.size());
  const double max2 = spec.max_edge_len * spec.max_edge_len + 1e-9;
  auto close = [&](Index a, Index b) {
    return (dict.vertices[a] - dict.vertices[b]).squaredNorm() <= max2;
  };

  // Sorted triples p < q < r; orientation (p,q,r) gets the even id,
  // (p,r,q) the odd one.
  for (Index p = 0; p < nv; ++p) {
    for (Index q = p + 1; q < nv; ++q) {
      if (!close(p, q)) continue;
      for (Index r = q + 1; r < nv; ++r) {
        if (!close(p, r) || !close(q, r)) continue;
        if (collinear(dict.vertices[p], dict.vertices[q], dict.vertices[r]))
          continue;
        Index id = static_cast<Index>(dict.triangles.size());
        dict.triangles.push_back({{p, q, r}, id});
        dict.triangles.push_back({{p, r, q}, static_cast<Index>(id + 1)});
      }
    }
  }
  if (dict.triangles.empty())
    throw Error("generate_dictionary: empty dictionary (box too small or "
                "max_edge_len too short)");
  index_edges(dict);
  return dict;
}

TriangleDictionary assemble_dictionary(const LatticeSpec& spec,
                                       std::vector<Vec3i> vertices,
                                       std::vector<OrientedTriangle> triangles) {
  spec.validate();
  TriangleDictionary dict;
  dict.spec = spec;
  dict.vertices = std::move(vertices);
  dict.triangles = std::move(triangles);
  const Index nv = static_cast<Index>(dict.vertices.size());
  for (std::size_t g = 0; g < dict.triangles.size(); ++g) {
    auto& t = dict.triangles[g];
    if (t.id != static_cast<Index>(g))
      throw Error("assemble_dictionary: triangle ids must be dense");
    for (Index v : t.v)
      if (v < 0 || v >= nv)
        throw Error("assemble_dictionary: vertex index out of range");
  }
  if (dict.triangles.empty() || dict.triangles.size() % 2 != 0)
    throw Error("assemble_dictionary: triangles must come in orientation pairs");
  for (std::size_t g = 0; g + 1 < dict.triangles.size(); g += 2) {
    const auto& a = dict.triangles[g].v;
    const auto& b = dict.triangles[g + 1].v;
    std::array<Index, 3> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      throw Error("assemble_dictionary: ids 2g, 2g+1 must be opposite "
                  "orientations of one triangle");
  }
  index_edges(dict);
  return dict;
}

TriangleDictionary restrict_dictionary(const TriangleDictionary& dict,
                                       std::span<const Index> triangle_ids) {
  std::set<Index> keep;
  for (Index t : triangle_ids) {
    keep.insert(t);
    keep.insert(dict.opposite_triangle(t));
  }
  TriangleDictionary out;
  out.spec = dict.spec;
  out.vertices = dict.vertices;
  for (Index t : keep) {
    OrientedTriangle tri = dict.triangles[t];
    tri.id = static_cast<Index>(out.triangles.size());
    out.triangles.push_back(tri);
  }
  if (out.triangles.empty())
    throw Error("restrict_dictionary: empty dictionary");
  index_edges(out);
  return out;
}

std::vector<AdjacentPair> adjacent_pairs(const TriangleDictionary& dict) {
  // pair -> shared edge, deduplicated (two triangles may share only one
  // geometric edge unless they are equal or opposite).
  std::vector<AdjacentPair> pairs;
  std::vector<EdgeKey> keys;
  keys.reserve(dict.adjacency.size());
  for (const auto& [key, _] : dict.adjacency) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  for (const EdgeKey& key : keys) {
    const auto& inc = dict.adjacency.at(key);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        Index a = inc[i], b = inc[j];
        if (dict.opposite_triangle(a) == b) continue;
        pairs.push_back({std::min(a, b), std::max(a, b), key});
      }
    }
  }
  return pairs;
}

}  // namespace wlp
