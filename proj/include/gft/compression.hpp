#pragma once

#include <Eigen/Dense>

#include "gft/io.hpp"
#include "gft/transform.hpp"

namespace gft {

struct CompressionReport {
  CompressedSignal payload;
  double relative_error = 0.0;
  std::uint64_t bytes = 0;
};

/// Keeps the k largest coefficients of u, in the plan's basis or, when
/// `adaptive`, in the best l1 basis for u.
CompressionReport compress(const TransformPlan& plan, const Signal& u, Eigen::Index k, bool adaptive);

/// Rebuilds the filtered signal. Throws ChecksumError if the payload was made
/// with a different plan.
Signal decompress(const TransformPlan& plan, const CompressedSignal& payload);

}  // namespace gft
