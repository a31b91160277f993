#include "gft/compression.hpp"

#include <cstdio>
#include <stdexcept>

#include "gft/best_basis.hpp"
#include "gft/error.hpp"
#include "gft/filtering.hpp"

namespace gft {

namespace {

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

CompressionReport compress(const TransformPlan& plan, const Signal& u, Eigen::Index k, bool adaptive) {
  CompressionReport report;
  auto& cs = report.payload;
  cs.n = static_cast<std::uint64_t>(plan.size());
  cs.plan_checksum = plan.checksum();
  if (adaptive) {
    const auto r = adaptive_filter_k(plan, u, k);
    cs.mode = CompressionMode::adaptive;
    cs.selection_bits = selection_encode(r.selection);
    for (Eigen::Index i : r.filter.support) {
      cs.indices.push_back(static_cast<std::uint64_t>(i));
      cs.values.push_back(r.coefficients.values(i));
    }
    report.relative_error = r.filter.relative_error;
  } else {
    const FrequencyVector f = forward(plan, u);
    for (Eigen::Index i : top_k_support(f, k)) {
      cs.indices.push_back(static_cast<std::uint64_t>(i));
      cs.values.push_back(f.coefficients(i));
    }
    const Signal v = decompress(plan, cs);
    const double norm = u.norm();
    report.relative_error = norm > 0.0 ? (u - v).norm() / norm : 0.0;
  }
  report.bytes = compressed_size(cs.k(), cs.selection_bits.size());
  return report;
}

Signal decompress(const TransformPlan& plan, const CompressedSignal& payload) {
  if (payload.plan_checksum != plan.checksum()) {
    throw ChecksumError("payload was compressed with plan " + hex(payload.plan_checksum) + " but plan " +
                        hex(plan.checksum()) + " was supplied");
  }
  if (payload.n != static_cast<std::uint64_t>(plan.size())) throw FormatError("payload size does not match the plan");
  if (payload.indices.size() != payload.values.size()) throw FormatError("payload index/value count differ");
  Eigen::VectorXd coefficients = Eigen::VectorXd::Zero(plan.size());
  for (std::size_t i = 0; i < payload.indices.size(); ++i) {
    if (payload.indices[i] >= payload.n) throw FormatError("payload: coefficient index out of range");
    coefficients(static_cast<Eigen::Index>(payload.indices[i])) = payload.values[i];
  }
  if (payload.mode == CompressionMode::adaptive) {
    return reconstruct_from_selection(plan, selection_decode(payload.selection_bits, plan), coefficients);
  }
  return inverse(plan, FrequencyVector{std::move(coefficients), plan.checksum()});
}

}  // namespace gft
