#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

namespace gft {

template <typename Scalar>
struct SymmetricEigen {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;                 // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // columns
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a dense symmetric matrix.
///
/// Rotations are applied in fixed row-cyclic order (p, q), p < q, so the
/// result is a deterministic function of the input bits. Iteration stops
/// once the off-diagonal Frobenius norm is at most `tolerance` times
/// max(1, ||A||_F). Eigenpairs are returned in ascending eigenvalue order;
/// equal eigenvalues keep the order in which the sweeps left them.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      typename Derived::Scalar tolerance = 1e-14,
                                                      int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (input.rows() != input.cols()) throw std::invalid_argument("jacobi_eigen: matrix is not square");

  Matrix a = input;
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const Scalar scale = std::max(Scalar(1), a.norm());

  auto off_norm = [&] {
    Scalar s = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen<Scalar> out;
  while (off_norm() > tolerance * scale) {
    if (out.sweeps == max_sweeps) throw std::runtime_error("jacobi_eigen: no convergence");
    ++out.sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Flips each column so that its largest-magnitude entry is positive. Entries
/// within a relative 1e-10 of the column maximum count as tied; the earliest
/// of them decides.
template <typename Derived>
void fix_column_signs(Eigen::MatrixBase<Derived>& m) {
  using std::abs;
  using Real = typename Derived::RealScalar;
  const Real tie = Real(1e-10);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Real peak = m.col(c).cwiseAbs().maxCoeff();
    Eigen::Index first = 0;
    while (abs(m(first, c)) < peak * (Real(1) - tie)) ++first;
    if (m(first, c) < 0) m.col(c) = -m.col(c);
  }
}

}  // namespace gft
