#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gft/filtering.hpp"
#include "gft/transform.hpp"

namespace gft {

/// Tree of coefficient snapshots recorded during one forward pass.
///
/// Node (d, c) is channel c at depth d, taken before the level-d transform;
/// its children are (d+1, 2c), (d+1, 2c+1) and the * outputs of level d for
/// channel c. Depth 0 is the raw signal, depth level_count() the
/// single-coefficient leaves.
class BasisTree {
 public:
  BasisTree(const TransformPlan& plan, const Signal& u);

  int depth() const { return static_cast<int>(sizes_.size()) - 1; }  // level count
  Eigen::Index channel_size(int d) const { return sizes_[static_cast<std::size_t>(d)]; }
  Eigen::Index star_size(int d) const { return leftovers_[static_cast<std::size_t>(d)]; }
  std::uint64_t plan_checksum() const { return checksum_; }

  Eigen::Map<const Eigen::VectorXd> snapshot(int d, std::int64_t c) const;
  Eigen::Map<const Eigen::VectorXd> star(int d, std::int64_t c) const;

 private:
  std::vector<Eigen::Index> sizes_;
  std::vector<Eigen::Index> leftovers_;
  std::vector<std::vector<double>> snapshots_;
  std::vector<std::vector<double>> stars_;
  std::uint64_t checksum_ = 0;
};

inline BasisTree build_basis_tree(const TransformPlan& plan, const Signal& u) { return BasisTree(plan, u); }

/// l1 norm of node (d, c)'s coefficients.
double node_cost(const BasisTree& tree, int d, std::int64_t c);

/// Heap index of internal node (d, c): 2^d - 1 + c.
inline std::size_t node_index(int d, std::int64_t c) {
  return static_cast<std::size_t>((std::int64_t{1} << d) - 1 + c);
}

/// Keep/expand decision per internal node, heap-ordered. Nodes below a kept
/// node are normalized to "keep".
struct BasisSelection {
  int depth = 0;
  std::vector<std::uint8_t> keep;  // 2^depth - 1 entries
  double total_cost = 0.0;
  /// Minimum cost of every node's subtree (internal nodes then leaves, heap
  /// order). Filled by best_basis only.
  std::vector<double> subtree_costs;

  bool kept(int d, std::int64_t c) const { return d >= depth || keep[node_index(d, c)] != 0; }
  bool operator==(const BasisSelection& o) const { return depth == o.depth && keep == o.keep; }
};

/// Selection with every internal node expanded (the fixed transform basis)
/// or only the root kept (the natural basis).
BasisSelection full_expansion(int depth);
BasisSelection root_only(int depth);

/// Bottom-up minimization of the l1 cost. Ties keep the parent.
BasisSelection best_basis(const BasisTree& tree);

struct CoefficientBlock {
  int depth;
  std::int64_t channel;
  bool star;  // * outputs of the node rather than its snapshot
  Eigen::Index offset;
  Eigen::Index length;
};

struct AdaptiveCoefficients {
  Eigen::VectorXd values;
  std::vector<CoefficientBlock> layout;
};

/// Coefficients of the selected basis in canonical order: depth first,
/// + subtree before - subtree, * outputs after both.
AdaptiveCoefficients coefficients_for_selection(const BasisTree& tree, const BasisSelection& sel);

/// Inverse of coefficients_for_selection using only the plan.
Signal reconstruct_from_selection(const TransformPlan& plan, const BasisSelection& sel,
                                  const Eigen::VectorXd& coefficients);

/// Pre-order keep bits of the reachable internal nodes.
std::vector<bool> selection_encode(const BasisSelection& sel);
/// Throws FormatError when the bits do not describe a selection for `plan`.
BasisSelection selection_decode(const std::vector<bool>& bits, const TransformPlan& plan);

struct AdaptiveFilterResult {
  FilterResult filter;
  BasisSelection selection;
  AdaptiveCoefficients coefficients;
};

/// k-term filter in the best basis for u.
AdaptiveFilterResult adaptive_filter_k(const TransformPlan& plan, const Signal& u, Eigen::Index k);

}  // namespace gft
