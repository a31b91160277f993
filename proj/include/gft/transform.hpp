#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gft/aggregation.hpp"
#include "gft/graph.hpp"
#include "gft/local_basis.hpp"

namespace gft {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One level of the multilevel transform: an aggregation of the level graph
/// and the local orthonormal basis of every aggregate. The same blocks act
/// on each of the 2^level channels.
class LevelTransform {
 public:
  LevelTransform() = default;
  /// `bases` holds the row-major local basis of each aggregate back to back.
  LevelTransform(int level, Aggregation aggregation, std::vector<double> bases);

  int level() const { return level_; }
  Vertex size() const { return aggregation_.vertex_count(); }      // n_j
  Vertex next_size() const { return aggregation_.size(); }         // n_{j+1}
  Vertex leftover() const { return size() - 2 * next_size(); }     // * outputs per channel
  std::int64_t channel_count() const { return std::int64_t{1} << level_; }

  const Aggregation& aggregation() const { return aggregation_; }
  const std::vector<double>& bases() const { return bases_; }
  Eigen::Map<const RowMajorMatrix> local_basis(Vertex a) const;
  /// Offset of aggregate a's * outputs inside a channel's * block.
  std::int64_t star_offset(Vertex a) const { return aggregation_.offsets()[a] - 2 * std::int64_t{a}; }

  /// Applies the local blocks to one channel of length n_j, writing the
  /// +, - (each n_{j+1} long) and * (leftover long) outputs.
  void analyze(std::span<const double> channel, std::span<double> plus, std::span<double> minus,
               std::span<double> star) const;
  /// Inverse of analyze.
  void synthesize(std::span<const double> plus, std::span<const double> minus, std::span<const double> star,
                  std::span<double> channel) const;

 private:
  int level_ = 0;
  Aggregation aggregation_;
  std::vector<double> bases_;
  std::vector<std::int64_t> basis_offsets_{0};
};

/// Band label of the single coefficient on the all-+ path.
inline constexpr int kSpineBand = -1;

/// Complete multilevel orthogonal transform for one graph.
///
/// Working layout at level j: 2^j channels of length n_j followed by a
/// frozen tail of m_j coefficients, with 2^j n_j + m_j = n. Level j maps
/// channel c to new channels 2c (+) and 2c+1 (-) and prepends the * blocks
/// of all channels, highest channel first, to the tail.
class TransformPlan {
 public:
  TransformPlan() = default;
  /// Validates dimension conservation, derives tail sizes and bands, and
  /// computes the checksum.
  TransformPlan(Eigen::Index n, std::uint64_t seed, std::vector<LevelTransform> levels);

  Eigen::Index size() const { return n_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  /// J, the index of the last level; absent for the single-vertex plan.
  std::optional<int> depth() const {
    return levels_.empty() ? std::nullopt : std::optional<int>(level_count() - 1);
  }
  const std::vector<LevelTransform>& levels() const { return levels_; }
  const LevelTransform& level(int j) const { return levels_[static_cast<std::size_t>(j)]; }

  /// n_0 .. n_{J+1}.
  std::vector<Vertex> level_sizes() const;
  /// m_0 .. m_{J+1}.
  const std::vector<std::int64_t>& tail_sizes() const { return tail_sizes_; }
  const std::vector<int>& band_map() const { return bands_; }
  Vertex observed_max_aggregate() const { return observed_max_aggregate_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t checksum() const { return checksum_; }

 private:
  Eigen::Index n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<LevelTransform> levels_;
  std::vector<std::int64_t> tail_sizes_{0};
  std::vector<int> bands_;
  Vertex observed_max_aggregate_ = 1;
  std::uint64_t checksum_ = 0;
};

/// Coefficients of a signal in a plan's frequency basis.
struct FrequencyVector {
  Eigen::VectorXd coefficients;
  std::uint64_t plan_checksum = 0;
};

struct BuildOptions {
  /// Aggregations for levels 0, 1, ... (by position); later levels use the
  /// seeded matching.
  std::vector<Aggregation> forced_aggregations;
  int local_basis_cap = kLocalBasisCap;
  /// Shared cache for small aggregates; a private one is used when null.
  BasisDictionary* dictionary = nullptr;
};

/// Aggregates the graph, then each quotient graph in turn, until one vertex
/// is left. Throws GraphError for a disconnected graph or an aggregate
/// over the local basis cap.
TransformPlan build_plan(const Graph& g, std::uint64_t seed, const BuildOptions& options = {});

/// Seed used for the matching of level j.
std::uint64_t level_seed(std::uint64_t seed, int level);

FrequencyVector forward(const TransformPlan& plan, const Signal& u);
/// Throws ChecksumError if `f` was produced by a different plan.
Signal inverse(const TransformPlan& plan, const FrequencyVector& f);

/// Column i is inverse(e_i). Throws std::invalid_argument above n = 4096.
Eigen::MatrixXd assemble_dense_basis(const TransformPlan& plan);
inline constexpr Eigen::Index kDenseGuard = 4096;

/// Level at which coefficient `index` left the all-+ path, or kSpineBand.
int band_of(const TransformPlan& plan, Eigen::Index index);

struct PlanSummary {
  Eigen::Index n = 0;
  std::optional<int> depth;
  std::vector<Vertex> level_sizes;
  std::vector<std::int64_t> tail_sizes;
  Vertex observed_max_aggregate = 0;
  std::uint64_t storage_bytes = 0;
};

PlanSummary plan_summary(const TransformPlan& plan);

}  // namespace gft
