#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gft {

/// Vertex index. Zero-based in memory, one-based in every file format.
using Vertex = std::int32_t;

/// One real value per vertex.
using Signal = Eigen::VectorXd;

/// Simple undirected graph in compressed adjacency form.
///
/// Every neighbor list is strictly increasing, contains no self-loop, and
/// adjacency is symmetric. Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Builds from an undirected edge list. Duplicate edges and both
  /// orientations of one edge collapse to a single edge. Throws GraphError on
  /// a self-loop and std::out_of_range on an endpoint outside [0, n).
  static Graph from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

  /// Builds from compressed adjacency arrays, validating all invariants.
  static Graph from_adjacency(std::vector<std::int64_t> offsets, std::vector<Vertex> neighbors);

  /// Same as from_adjacency without the O(|E| log d) validation pass; the
  /// caller guarantees the invariants (used for quotient graphs).
  static Graph from_adjacency_unchecked(std::vector<std::int64_t> offsets,
                                        std::vector<Vertex> neighbors);

  Vertex vertex_count() const { return static_cast<Vertex>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(neighbors_.size() / 2); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }
  Vertex degree(Vertex v) const { return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]); }
  bool has_edge(Vertex a, Vertex b) const;

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  const std::vector<Vertex>& adjacency() const { return neighbors_; }

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

/// Parses an edge list or a Matrix Market coordinate pattern file.
///
/// Edge lists hold one "i j" pair per line with 1-based indices; lines
/// starting with '#' or '%' are comments, except "# vertices: N" which
/// declares the vertex count (otherwise the largest index seen). Matrix
/// Market input must be "coordinate pattern" with a "symmetric" or
/// "general" qualifier; general files are symmetrized.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

/// Canonical edge-list text: a "# vertices: N" header and one "i j" line per
/// edge with i < j, sorted. parse_graph(format_edge_list(g)) == g.
std::string format_edge_list(const Graph& g);

/// Breadth-first reachability from vertex 0.
bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  /// Local index -> vertex of the parent graph.
  std::vector<Vertex> to_parent;
};

/// Subgraph induced by `vertices`, numbered in the given order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Sum over edges of (u_i - u_j)(v_i - v_j); each undirected edge once.
double laplacian_quadratic(const Graph& g, const Signal& u, const Signal& v);

/// max over edges |u_i - u_j|, or 0 for an edgeless graph.
double smoothness_seminorm(const Graph& g, const Signal& u);

/// Dense unnormalized Laplacian D - A.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> laplacian_matrix(const Graph& g) {
  const Eigen::Index n = g.vertex_count();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> L =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Vertex i = 0; i < n; ++i) {
    L(i, i) = Scalar(g.degree(i));
    for (Vertex j : g.neighbors(i)) L(i, j) = Scalar(-1);
  }
  return L;
}

}  // namespace gft
