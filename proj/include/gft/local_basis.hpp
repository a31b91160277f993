#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include <Eigen/Dense>

#include "gft/graph.hpp"

namespace gft {

/// Default cap on aggregate size for local eigenbases.
inline constexpr int kLocalBasisCap = 16;

/// Largest aggregate size served from the pattern dictionary.
inline constexpr int kDictionaryMaxSize = 5;

/// Orthonormal eigenbasis of one aggregate's Laplacian.
///
/// Columns are eigenvectors in ascending eigenvalue order. Column 0 is
/// exactly the constant vector 1/sqrt(m).
struct LocalBasis {
  Eigen::MatrixXd basis;
  Eigen::VectorXd eigenvalues;

  Eigen::Index size() const { return basis.rows(); }
  bool operator==(const LocalBasis& o) const { return basis == o.basis && eigenvalues == o.eigenvalues; }
};

/// Eigendecomposition of the Laplacian of a connected graph with
/// 1 <= m <= cap vertices.
///
/// The solver's null vector is replaced by the exact constant vector, the
/// remaining columns are re-orthonormalized (modified Gram-Schmidt, ascending
/// order) and each column is sign-fixed so its largest-magnitude entry is
/// positive. m == 2 returns the Haar pair analytically.
///
/// Throws GraphError if `sub` is disconnected or larger than `cap`.
LocalBasis local_eigenbasis(const Graph& sub, int cap = kLocalBasisCap);

/// Upper-triangle adjacency bitmask of a graph with at most 6 vertices;
/// bit k enumerates pairs (p, q), p < q, lexicographically.
std::uint32_t adjacency_pattern(const Graph& sub);
Graph pattern_graph(int m, std::uint32_t pattern);

/// Cache of local bases for small aggregates, keyed by (size, adjacency
/// pattern in local vertex order). Safe for concurrent lookups.
class BasisDictionary {
 public:
  std::shared_ptr<const LocalBasis> lookup(const Graph& sub);
  std::shared_ptr<const LocalBasis> lookup(int m, std::uint32_t pattern);

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }
  std::size_t entries() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint32_t, std::shared_ptr<const LocalBasis>> cache_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace gft
