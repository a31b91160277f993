#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gft/graph.hpp"

namespace gft {

/// Partition of a graph's vertices into connected aggregates.
///
/// Aggregates are stored back to back; the order of vertices inside an
/// aggregate is significant. Position 0 receives the constant (+) output of
/// the local transform, position 1 the Fiedler (-) output, and positions 2
/// and up the remaining (*) outputs.
class Aggregation {
 public:
  Aggregation() = default;

  /// Builds from explicit aggregates over vertices [0, n). Throws
  /// std::invalid_argument unless the aggregates partition the vertex set.
  static Aggregation from_aggregates(Vertex n, const std::vector<std::vector<Vertex>>& aggregates);
  static Aggregation from_flat(Vertex n, std::vector<std::int64_t> offsets, std::vector<Vertex> members);

  Vertex vertex_count() const { return static_cast<Vertex>(owner_.size()); }
  Vertex size() const { return static_cast<Vertex>(offsets_.size() - 1); }

  std::span<const Vertex> aggregate(Vertex a) const {
    return {members_.data() + offsets_[a], static_cast<std::size_t>(offsets_[a + 1] - offsets_[a])};
  }
  Vertex aggregate_size(Vertex a) const { return static_cast<Vertex>(offsets_[a + 1] - offsets_[a]); }

  Vertex aggregate_of(Vertex v) const { return owner_[v]; }
  Vertex position_of(Vertex v) const { return position_[v]; }

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  const std::vector<Vertex>& members() const { return members_; }

  std::vector<std::vector<Vertex>> to_nested() const;

  bool operator==(const Aggregation& o) const { return offsets_ == o.offsets_ && members_ == o.members_; }

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> members_;
  std::vector<Vertex> owner_;
  std::vector<Vertex> position_;
};

/// Randomized greedy matching with singleton attachment.
///
/// Vertices are visited in a seeded Fisher-Yates order. An unvisited vertex
/// with unmatched neighbors pairs with the one of smallest dynamic degree
/// (ties: smallest index); the dynamic degrees of both endpoints' neighbors
/// drop by one. Vertices left without a partner then join the smallest
/// adjacent aggregate (ties: lowest aggregate index), in increasing vertex
/// order. Pairs are numbered by their smaller endpoint.
///
/// When `forced_pairs` is given, it replaces the matching phase and the pair
/// order is kept as supplied.
///
/// Throws GraphError for a disconnected graph and std::invalid_argument for
/// forced pairs that are not a matching of `g`.
Aggregation build_aggregation(const Graph& g, std::uint64_t seed,
                              std::optional<std::span<const std::pair<Vertex, Vertex>>> forced_pairs = std::nullopt);

/// Same matching with an explicit visit order (a permutation of the vertices).
Aggregation build_aggregation_with_order(const Graph& g, std::span<const Vertex> visit_order);

/// Seeded Fisher-Yates permutation of [0, n) on a 64-bit Mersenne twister.
/// Uses its own bounded draw so the order is identical on every platform.
std::vector<Vertex> seeded_permutation(Vertex n, std::uint64_t seed);

/// Graph on aggregates: an edge wherever some edge of `g` crosses two
/// aggregates.
Graph quotient_graph(const Graph& g, const Aggregation& agg);

/// Checks that `agg` partitions `g` into connected aggregates of size >= 2
/// (size 1 only when n == 1). Throws std::invalid_argument otherwise.
void validate_aggregation(const Graph& g, const Aggregation& agg);

struct AggregationStats {
  Vertex max_size = 0;
  std::map<Vertex, Vertex> histogram;  // size -> count
  double pair_fraction = 0.0;
};

AggregationStats aggregation_stats(const Aggregation& agg);

/// One line per aggregate, 1-based vertex indices in position order.
std::string format_aggregation(const Aggregation& agg);
Aggregation parse_aggregation(std::string_view text, Vertex n);

}  // namespace gft
