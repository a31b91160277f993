#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gft/graph.hpp"
#include "gft/transform.hpp"

namespace gft {

/// Full eigendecomposition of a graph Laplacian (desk scale only).
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;   // ascending, eigenvalues(0) == 0
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

inline constexpr Eigen::Index kSpectralGuard = 4096;

/// Dense cyclic-Jacobi eigendecomposition; each column is sign-fixed so its
/// largest-magnitude entry is positive. Throws std::invalid_argument above
/// the size guard.
SpectralBasis dense_spectral_basis(const Graph& g);

/// Projection onto the lowest eigenvectors.
///
/// With `preprocess`, u is centered and scaled to unit norm, projected onto
/// the k lowest nontrivial eigenvectors (constant excluded, k clamped to
/// n - 1), and the scaling is undone. Without it, u is projected onto the k
/// lowest eigenvectors including the constant.
Signal spectral_filter_k(const SpectralBasis& basis, const Signal& u, Eigen::Index k, bool preprocess);
Signal spectral_filter_k(const Graph& g, const Signal& u, Eigen::Index k, bool preprocess);

struct ComparisonRow {
  Eigen::Index k = 0;
  double err_alg2 = 0.0;
  double err_adaptive = 0.0;
  std::optional<double> err_spectral;  // absent above the spectral guard
};

/// Relative errors of the fixed-basis, adaptive and spectral k-term filters.
/// The spectral column is computed only when n <= max_spectral_n.
std::vector<ComparisonRow> compare_filters(const Graph& g, const TransformPlan& plan, const Signal& u,
                                           const std::vector<Eigen::Index>& ks,
                                           Eigen::Index max_spectral_n = kSpectralGuard);

/// CSV with header "k,err_alg2,err_adaptive,err_spectral"; an omitted
/// spectral value is left empty.
std::string format_comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace gft
