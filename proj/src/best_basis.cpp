#include "gft/best_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gft/error.hpp"

namespace gft {

namespace {

std::span<double> slice(std::vector<double>& v, std::int64_t c, Eigen::Index len) {
  return {v.data() + c * len, static_cast<std::size_t>(len)};
}

void normalize_unreachable(BasisSelection& sel) {
  for (int d = 0; d + 1 < sel.depth; ++d) {
    for (std::int64_t c = 0; c < (std::int64_t{1} << d); ++c) {
      if (sel.keep[node_index(d, c)]) {
        sel.keep[node_index(d + 1, 2 * c)] = 1;
        sel.keep[node_index(d + 1, 2 * c + 1)] = 1;
      }
    }
  }
}

void append_node(const BasisTree& tree, const BasisSelection& sel, int d, std::int64_t c,
                 std::vector<double>& values, std::vector<CoefficientBlock>& layout) {
  if (sel.kept(d, c)) {
    const auto snap = tree.snapshot(d, c);
    layout.push_back({d, c, false, static_cast<Eigen::Index>(values.size()), snap.size()});
    values.insert(values.end(), snap.data(), snap.data() + snap.size());
    return;
  }
  append_node(tree, sel, d + 1, 2 * c, values, layout);
  append_node(tree, sel, d + 1, 2 * c + 1, values, layout);
  const auto star = tree.star(d, c);
  if (star.size() > 0) {
    layout.push_back({d, c, true, static_cast<Eigen::Index>(values.size()), star.size()});
    values.insert(values.end(), star.data(), star.data() + star.size());
  }
}

std::vector<double> rebuild_node(const TransformPlan& plan, const BasisSelection& sel, int d, std::int64_t c,
                                 const Eigen::VectorXd& coefficients, Eigen::Index& cursor) {
  const Eigen::Index len = d < plan.level_count() ? plan.level(d).size() : 1;
  if (sel.kept(d, c)) {
    if (cursor + len > coefficients.size()) throw std::invalid_argument("selection needs more coefficients");
    std::vector<double> out(coefficients.data() + cursor, coefficients.data() + cursor + len);
    cursor += len;
    return out;
  }
  const auto& L = plan.level(d);
  const auto plus = rebuild_node(plan, sel, d + 1, 2 * c, coefficients, cursor);
  const auto minus = rebuild_node(plan, sel, d + 1, 2 * c + 1, coefficients, cursor);
  if (cursor + L.leftover() > coefficients.size()) throw std::invalid_argument("selection needs more coefficients");
  std::span<const double> star(coefficients.data() + cursor, static_cast<std::size_t>(L.leftover()));
  cursor += L.leftover();
  std::vector<double> out(static_cast<std::size_t>(len));
  L.synthesize(plus, minus, star, out);
  return out;
}

void encode_node(const BasisSelection& sel, int d, std::int64_t c, std::vector<bool>& bits) {
  if (d >= sel.depth) return;
  const bool keep = sel.keep[node_index(d, c)] != 0;
  bits.push_back(keep);
  if (keep) return;
  encode_node(sel, d + 1, 2 * c, bits);
  encode_node(sel, d + 1, 2 * c + 1, bits);
}

void decode_node(BasisSelection& sel, int d, std::int64_t c, const std::vector<bool>& bits, std::size_t& pos) {
  if (d >= sel.depth) return;
  if (pos >= bits.size()) throw FormatError("selection bit stream ends early");
  const bool keep = bits[pos++];
  sel.keep[node_index(d, c)] = keep ? 1 : 0;
  if (keep) return;
  decode_node(sel, d + 1, 2 * c, bits, pos);
  decode_node(sel, d + 1, 2 * c + 1, bits, pos);
}

}  // namespace

BasisTree::BasisTree(const TransformPlan& plan, const Signal& u) : checksum_(plan.checksum()) {
  if (u.size() != plan.size()) throw std::invalid_argument("build_basis_tree: signal length does not match plan");
  const int levels = plan.level_count();
  for (int d = 0; d < levels; ++d) {
    sizes_.push_back(plan.level(d).size());
    leftovers_.push_back(plan.level(d).leftover());
  }
  sizes_.push_back(1);
  leftovers_.push_back(0);

  snapshots_.resize(static_cast<std::size_t>(levels) + 1);
  stars_.resize(static_cast<std::size_t>(levels) + 1);
  snapshots_[0].assign(u.data(), u.data() + u.size());
  for (int d = 0; d < levels; ++d) {
    const auto& L = plan.level(d);
    const std::int64_t channels = L.channel_count();
    snapshots_[d + 1].resize(static_cast<std::size_t>(2 * channels * L.next_size()));
    stars_[d].resize(static_cast<std::size_t>(channels * L.leftover()));
    for (std::int64_t c = 0; c < channels; ++c) {
      L.analyze(slice(snapshots_[d], c, L.size()), slice(snapshots_[d + 1], 2 * c, L.next_size()),
                slice(snapshots_[d + 1], 2 * c + 1, L.next_size()), slice(stars_[d], c, L.leftover()));
    }
  }
}

Eigen::Map<const Eigen::VectorXd> BasisTree::snapshot(int d, std::int64_t c) const {
  if (d < 0 || d > depth() || c < 0 || c >= (std::int64_t{1} << d)) throw std::out_of_range("invalid tree node");
  const Eigen::Index len = channel_size(d);
  return {snapshots_[static_cast<std::size_t>(d)].data() + c * len, len};
}

Eigen::Map<const Eigen::VectorXd> BasisTree::star(int d, std::int64_t c) const {
  if (d < 0 || d > depth() || c < 0 || c >= (std::int64_t{1} << d)) throw std::out_of_range("invalid tree node");
  const Eigen::Index len = star_size(d);
  return {stars_[static_cast<std::size_t>(d)].data() + c * len, len};
}

double node_cost(const BasisTree& tree, int d, std::int64_t c) { return tree.snapshot(d, c).lpNorm<1>(); }

BasisSelection full_expansion(int depth) {
  BasisSelection sel;
  sel.depth = depth;
  sel.keep.assign(static_cast<std::size_t>((std::int64_t{1} << depth) - 1), 0);
  return sel;
}

BasisSelection root_only(int depth) {
  BasisSelection sel;
  sel.depth = depth;
  sel.keep.assign(static_cast<std::size_t>((std::int64_t{1} << depth) - 1), 1);
  return sel;
}

BasisSelection best_basis(const BasisTree& tree) {
  const int depth = tree.depth();
  BasisSelection sel = full_expansion(depth);
  sel.subtree_costs.assign(static_cast<std::size_t>((std::int64_t{1} << (depth + 1)) - 1), 0.0);
  for (std::int64_t c = 0; c < (std::int64_t{1} << depth); ++c) {
    sel.subtree_costs[node_index(depth, c)] = node_cost(tree, depth, c);
  }
  for (int d = depth - 1; d >= 0; --d) {
    for (std::int64_t c = 0; c < (std::int64_t{1} << d); ++c) {
      const double parent = node_cost(tree, d, c);
      const double children = sel.subtree_costs[node_index(d + 1, 2 * c)] +
                              sel.subtree_costs[node_index(d + 1, 2 * c + 1)] + tree.star(d, c).lpNorm<1>();
      const bool keep = parent <= children;
      sel.keep[node_index(d, c)] = keep ? 1 : 0;
      sel.subtree_costs[node_index(d, c)] = keep ? parent : children;
    }
  }
  sel.total_cost = sel.subtree_costs[0];
  normalize_unreachable(sel);
  return sel;
}

AdaptiveCoefficients coefficients_for_selection(const BasisTree& tree, const BasisSelection& sel) {
  if (sel.depth != tree.depth() ||
      sel.keep.size() != static_cast<std::size_t>((std::int64_t{1} << sel.depth) - 1)) {
    throw std::invalid_argument("selection does not match the basis tree");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(tree.channel_size(0)));
  AdaptiveCoefficients out;
  append_node(tree, sel, 0, 0, values, out.layout);
  out.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return out;
}

Signal reconstruct_from_selection(const TransformPlan& plan, const BasisSelection& sel,
                                  const Eigen::VectorXd& coefficients) {
  if (sel.depth != plan.level_count()) throw std::invalid_argument("selection does not match the plan");
  if (coefficients.size() != plan.size()) throw std::invalid_argument("coefficient count does not match the plan");
  Eigen::Index cursor = 0;
  const auto out = rebuild_node(plan, sel, 0, 0, coefficients, cursor);
  return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

std::vector<bool> selection_encode(const BasisSelection& sel) {
  std::vector<bool> bits;
  encode_node(sel, 0, 0, bits);
  return bits;
}

BasisSelection selection_decode(const std::vector<bool>& bits, const TransformPlan& plan) {
  BasisSelection sel = root_only(plan.level_count());
  std::size_t pos = 0;
  decode_node(sel, 0, 0, bits, pos);
  if (pos != bits.size()) {
    throw FormatError("selection bit stream has " + std::to_string(bits.size() - pos) + " trailing bits");
  }
  return sel;
}

AdaptiveFilterResult adaptive_filter_k(const TransformPlan& plan, const Signal& u, Eigen::Index k) {
  const BasisTree tree(plan, u);
  AdaptiveFilterResult r;
  r.selection = best_basis(tree);
  r.coefficients = coefficients_for_selection(tree, r.selection);
  const auto& values = r.coefficients.values;
  r.filter.support = top_k_support(values, k);
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(values.size());
  for (Eigen::Index i : r.filter.support) kept(i) = values(i);
  r.filter.kept_energy = kept.squaredNorm();
  r.filter.residual_energy = (values - kept).squaredNorm();
  r.filter.filtered = reconstruct_from_selection(plan, r.selection, kept);
  const double norm = u.norm();
  r.filter.relative_error = norm > 0.0 ? (u - r.filter.filtered).norm() / norm : 0.0;
  return r;
}

}  // namespace gft
