#include "gft/local_basis.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "gft/error.hpp"
#include "gft/jacobi.hpp"

namespace gft {

namespace {

constexpr double kConnectivityTolerance = 1e-10;
constexpr double kJacobiTolerance = 1e-14;

LocalBasis haar_pair() {
  const double h = 1.0 / std::sqrt(2.0);
  LocalBasis lb;
  lb.basis.resize(2, 2);
  lb.basis << h, h, h, -h;
  lb.eigenvalues.resize(2);
  lb.eigenvalues << 0.0, 2.0;
  return lb;
}

}  // namespace

LocalBasis local_eigenbasis(const Graph& sub, int cap) {
  const Eigen::Index m = sub.vertex_count();
  if (m < 1) throw std::invalid_argument("local_eigenbasis: empty aggregate");
  if (m > cap) {
    throw GraphError("aggregate of size " + std::to_string(m) + " exceeds the local basis cap of " +
                     std::to_string(cap) + "; inspect the aggregation statistics for star-like structure");
  }
  if (m == 1) {
    LocalBasis lb;
    lb.basis = Eigen::MatrixXd::Ones(1, 1);
    lb.eigenvalues = Eigen::VectorXd::Zero(1);
    return lb;
  }
  if (m == 2) {
    if (sub.edge_count() != 1) throw GraphError("aggregate of size 2 is not connected");
    return haar_pair();
  }

  const auto eig = jacobi_eigen(laplacian_matrix<double>(sub), kJacobiTolerance);
  if (eig.eigenvalues(1) <= kConnectivityTolerance) {
    throw GraphError("aggregate of size " + std::to_string(m) + " is not connected");
  }

  LocalBasis lb;
  lb.eigenvalues = eig.eigenvalues;
  lb.eigenvalues(0) = 0.0;
  lb.basis = eig.eigenvectors;
  lb.basis.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
  for (Eigen::Index c = 1; c < m; ++c) {
    Eigen::VectorXd v = lb.basis.col(c);
    for (Eigen::Index p = 0; p < c; ++p) v -= lb.basis.col(p).dot(v) * lb.basis.col(p);
    lb.basis.col(c) = v / v.norm();
  }
  auto tail = lb.basis.rightCols(m - 1);
  fix_column_signs(tail);
  return lb;
}

std::uint32_t adjacency_pattern(const Graph& sub) {
  const Vertex m = sub.vertex_count();
  if (m > 6) throw std::invalid_argument("adjacency_pattern: at most 6 vertices");
  std::uint32_t mask = 0;
  int bit = 0;
  for (Vertex p = 0; p < m; ++p) {
    for (Vertex q = p + 1; q < m; ++q, ++bit) {
      if (sub.has_edge(p, q)) mask |= 1u << bit;
    }
  }
  return mask;
}

Graph pattern_graph(int m, std::uint32_t pattern) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  int bit = 0;
  for (Vertex p = 0; p < m; ++p) {
    for (Vertex q = p + 1; q < m; ++q, ++bit) {
      if (pattern & (1u << bit)) edges.emplace_back(p, q);
    }
  }
  return Graph::from_edges(m, edges);
}

std::shared_ptr<const LocalBasis> BasisDictionary::lookup(const Graph& sub) {
  if (sub.vertex_count() > kDictionaryMaxSize) {
    misses_.fetch_add(1);
    return std::make_shared<const LocalBasis>(local_eigenbasis(sub));
  }
  return lookup(sub.vertex_count(), adjacency_pattern(sub));
}

std::shared_ptr<const LocalBasis> BasisDictionary::lookup(int m, std::uint32_t pattern) {
  if (m < 1 || m > kDictionaryMaxSize) throw std::invalid_argument("BasisDictionary: size out of range");
  const std::uint32_t key = (static_cast<std::uint32_t>(m) << 16) | pattern;
  {
    std::shared_lock lock(mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) {
      hits_.fetch_add(1);
      return it->second;
    }
  }
  auto computed = std::make_shared<const LocalBasis>(local_eigenbasis(pattern_graph(m, pattern)));
  std::unique_lock lock(mutex_);
  const auto [it, inserted] = cache_.try_emplace(key, std::move(computed));
  if (inserted) {
    misses_.fetch_add(1);
  } else {
    hits_.fetch_add(1);
  }
  return it->second;
}

std::size_t BasisDictionary::entries() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace gft
