#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wlp {

using Vec3d = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Index = std::int32_t;

// Unordered lattice edge, endpoints stored as vertex ids with a <= b.
struct EdgeKey {
  Index a = -1;
  Index b = -1;

  EdgeKey() = default;
  EdgeKey(Index u, Index v) : a(u < v ? u : v), b(u < v ? v : u) {}

  bool operator==(const EdgeKey&) const = default;
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.a)) << 32) |
        static_cast<std::uint32_t>(e.b));
  }
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wlp
