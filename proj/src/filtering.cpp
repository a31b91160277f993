#include "gft/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gft/error.hpp"

namespace gft {

std::vector<Eigen::Index> top_k_support(const Eigen::VectorXd& coefficients, Eigen::Index k) {
  const Eigen::Index n = coefficients.size();
  if (k < 0 || k > n) {
    throw std::invalid_argument("top_k_support: k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Strict total order: larger magnitude first, then smaller index.
  const auto before = [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(coefficients(a));
    const double mb = std::abs(coefficients(b));
    return ma > mb || (ma == mb && a < b);
  };
  if (k < n) std::nth_element(order.begin(), order.begin() + k, order.end(), before);
  order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

FilterResult filter_k(const TransformPlan& plan, const Signal& u, Eigen::Index k) {
  const FrequencyVector f = forward(plan, u);
  FilterResult r;
  r.support = top_k_support(f, k);
  FrequencyVector kept{Eigen::VectorXd::Zero(f.coefficients.size()), f.plan_checksum};
  for (Eigen::Index i : r.support) kept.coefficients(i) = f.coefficients(i);
  r.kept_energy = kept.coefficients.squaredNorm();
  r.residual_energy = (f.coefficients - kept.coefficients).squaredNorm();
  r.filtered = inverse(plan, kept);
  const double norm = u.norm();
  r.relative_error = norm > 0.0 ? (u - r.filtered).norm() / norm : 0.0;
  return r;
}

std::vector<BandEnergy> band_energies(const TransformPlan& plan, const FrequencyVector& f) {
  if (f.plan_checksum != plan.checksum()) {
    throw ChecksumError("band_energies: coefficient vector does not belong to this plan");
  }
  if (f.coefficients.size() != plan.size()) throw std::invalid_argument("band_energies: length mismatch");
  std::vector<double> per_level(static_cast<std::size_t>(plan.level_count()), 0.0);
  double spine = 0.0;
  const auto& bands = plan.band_map();
  for (Eigen::Index i = 0; i < plan.size(); ++i) {
    const double e = f.coefficients(i) * f.coefficients(i);
    if (bands[i] == kSpineBand) {
      spine += e;
    } else {
      per_level[bands[i]] += e;
    }
  }
  std::vector<BandEnergy> out;
  for (std::size_t j = 0; j < per_level.size(); ++j) out.push_back({static_cast<int>(j), per_level[j]});
  out.push_back({kSpineBand, spine});
  return out;
}

double decay_bound(double n, double k, double max_aggregate, double seminorm) {
  if (k < 1 || k > n) throw std::invalid_argument("decay_bound: k must lie in [1, n]");
  if (max_aggregate < 2) throw std::invalid_argument("decay_bound: aggregate size bound must be >= 2");
  if (seminorm < 0) throw std::invalid_argument("decay_bound: negative seminorm");
  const double c3 = max_aggregate * max_aggregate * max_aggregate;
  return c3 * n / 12.0 * std::pow(n / k, std::log2(c3) - 1.0) * seminorm * seminorm;
}

double band_bound(double n, int band, double max_aggregate, double seminorm) {
  if (n < 1 || band < 0) throw std::invalid_argument("band_bound: need n >= 1 and band >= 0");
  if (max_aggregate < 2) throw std::invalid_argument("band_bound: aggregate size bound must be >= 2");
  if (seminorm < 0) throw std::invalid_argument("band_bound: negative seminorm");
  const double c3 = max_aggregate * max_aggregate * max_aggregate;
  return n / 12.0 * std::pow(c3 / 2.0, band + 1) * seminorm * seminorm;
}

double constant_fit_residual(const Eigen::VectorXd& u) {
  if (u.size() == 0) throw std::invalid_argument("constant_fit_residual: empty vector");
  const double mean = u.mean();
  // Centered form; equals ||u||^2 - (sum u)^2 / m without the cancellation.
  return (u.array() - mean).square().sum();
}

}  // namespace gft
