#include "gft/spectral.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "gft/best_basis.hpp"
#include "gft/filtering.hpp"
#include "gft/jacobi.hpp"

namespace gft {

namespace {

double relative_error(const Signal& u, const Signal& v) {
  const double norm = u.norm();
  return norm > 0.0 ? (u - v).norm() / norm : 0.0;
}

}  // namespace

SpectralBasis dense_spectral_basis(const Graph& g) {
  const Eigen::Index n = g.vertex_count();
  if (n > kSpectralGuard) {
    throw std::invalid_argument("dense_spectral_basis: n = " + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(kSpectralGuard));
  }
  auto eig = jacobi_eigen(laplacian_matrix<double>(g));
  SpectralBasis out{std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
  fix_column_signs(out.eigenvectors);
  return out;
}

Signal spectral_filter_k(const SpectralBasis& basis, const Signal& u, Eigen::Index k, bool preprocess) {
  const Eigen::Index n = basis.eigenvectors.rows();
  if (u.size() != n) throw std::invalid_argument("spectral_filter_k: signal length does not match the graph");
  if (k < 0 || k > n) throw std::invalid_argument("spectral_filter_k: k outside [0, n]");
  if (!preprocess) {
    const auto V = basis.eigenvectors.leftCols(k);
    return V * (V.transpose() * u);
  }
  const double mean = u.mean();
  Eigen::VectorXd centered = u.array() - mean;
  const double scale = centered.norm();
  if (scale == 0.0) return Eigen::VectorXd::Constant(n, mean);
  centered /= scale;
  const Eigen::Index kk = std::min(k, n - 1);
  const auto V = basis.eigenvectors.middleCols(1, kk);
  Eigen::VectorXd projected = V * (V.transpose() * centered);
  return (projected * scale).array() + mean;
}

Signal spectral_filter_k(const Graph& g, const Signal& u, Eigen::Index k, bool preprocess) {
  return spectral_filter_k(dense_spectral_basis(g), u, k, preprocess);
}

std::vector<ComparisonRow> compare_filters(const Graph& g, const TransformPlan& plan, const Signal& u,
                                           const std::vector<Eigen::Index>& ks, Eigen::Index max_spectral_n) {
  if (g.vertex_count() != plan.size()) throw std::invalid_argument("compare_filters: graph and plan differ in size");
  std::optional<SpectralBasis> spectral;
  if (g.vertex_count() <= std::min(max_spectral_n, kSpectralGuard)) spectral = dense_spectral_basis(g);

  const BasisTree tree(plan, u);
  const BasisSelection selection = best_basis(tree);
  const Eigen::VectorXd adaptive = coefficients_for_selection(tree, selection).values;
  const FrequencyVector f = forward(plan, u);

  std::vector<ComparisonRow> rows;
  for (Eigen::Index k : ks) {
    ComparisonRow row;
    row.k = k;
    FrequencyVector kept{Eigen::VectorXd::Zero(plan.size()), f.plan_checksum};
    for (Eigen::Index i : top_k_support(f, k)) kept.coefficients(i) = f.coefficients(i);
    row.err_alg2 = relative_error(u, inverse(plan, kept));

    Eigen::VectorXd kept_adaptive = Eigen::VectorXd::Zero(plan.size());
    for (Eigen::Index i : top_k_support(adaptive, k)) kept_adaptive(i) = adaptive(i);
    row.err_adaptive = relative_error(u, reconstruct_from_selection(plan, selection, kept_adaptive));

    if (spectral) row.err_spectral = relative_error(u, spectral_filter_k(*spectral, u, k, true));
    rows.push_back(row);
  }
  return rows;
}

std::string format_comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "k,err_alg2,err_adaptive,err_spectral\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,", static_cast<long long>(r.k), r.err_alg2, r.err_adaptive);
    out += buf;
    if (r.err_spectral) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.err_spectral);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace gft
