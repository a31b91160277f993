#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gft/transform.hpp"

namespace gft {

struct FilterResult {
  Signal filtered;
  std::vector<Eigen::Index> support;  // ascending
  double kept_energy = 0.0;
  double residual_energy = 0.0;
  double relative_error = 0.0;  // ||u - v|| / ||u||, 0 for u == 0
};

/// Indices of the k largest |coefficients|, ascending. Ties at the
/// threshold magnitude go to the smaller index. Throws std::invalid_argument
/// for k > size.
std::vector<Eigen::Index> top_k_support(const Eigen::VectorXd& coefficients, Eigen::Index k);
inline std::vector<Eigen::Index> top_k_support(const FrequencyVector& f, Eigen::Index k) {
  return top_k_support(f.coefficients, k);
}

/// Best k-term approximation of u in the plan's basis. k = 0 yields zero.
FilterResult filter_k(const TransformPlan& plan, const Signal& u, Eigen::Index k);

struct BandEnergy {
  int band;  // kSpineBand or a level
  double energy;
};

/// Energy per band, levels ascending, spine last.
std::vector<BandEnergy> band_energies(const TransformPlan& plan, const FrequencyVector& f);

/// Upper bound on ||u - v_k||^2 for the k-term filter:
/// (C^3 n / 12) (n / k)^(log2 C^3 - 1) |u|^2.
double decay_bound(double n, double k, double max_aggregate, double seminorm);

/// Upper bound on the energy of band `band`: (n / 12) (C^3 / 2)^(band + 1) |u|^2.
double band_bound(double n, int band, double max_aggregate, double seminorm);

/// Squared distance from u to the constant vectors, ||u||^2 - (sum u)^2 / m.
double constant_fit_residual(const Eigen::VectorXd& u);

}  // namespace gft
