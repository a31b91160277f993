#pragma once

// Canonical byte encoding of a plan body. The plan checksum is FNV-1a over
// exactly these bytes, and the plan file embeds them between the header and
// the checksum.

#include <cstdint>

#include "gft/binary.hpp"
#include "gft/transform.hpp"

namespace gft::detail {

template <typename Sink>
void encode_plan_body(Sink& sink, Eigen::Index n, std::uint64_t seed, const std::vector<LevelTransform>& levels,
                      const std::vector<std::int64_t>& tail_sizes) {
  using namespace binary;
  put_u64(sink, static_cast<std::uint64_t>(n));
  put_u64(sink, levels.size());
  for (const auto& level : levels) {
    const auto& agg = level.aggregation();
    put_u64(sink, static_cast<std::uint64_t>(level.size()));
    put_u64(sink, static_cast<std::uint64_t>(agg.size()));
    for (Vertex a = 0; a < agg.size(); ++a) put_u32(sink, static_cast<std::uint32_t>(agg.aggregate_size(a)));
    for (Vertex v : agg.members()) put_u32(sink, static_cast<std::uint32_t>(v) + 1);
    for (double x : level.bases()) put_f64(sink, x);
  }
  for (std::int64_t m : tail_sizes) put_u64(sink, static_cast<std::uint64_t>(m));
  put_u64(sink, seed);
}

template <typename Sink>
void encode_plan_body(Sink& sink, const TransformPlan& plan) {
  encode_plan_body(sink, plan.size(), plan.seed(), plan.levels(), plan.tail_sizes());
}

}  // namespace gft::detail
