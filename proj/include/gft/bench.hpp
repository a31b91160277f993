#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gft/graph.hpp"

namespace gft {

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t edges = 0;
  double build_ms = 0.0;    // median
  double forward_ms = 0.0;  // median
  std::uint64_t plan_bytes = 0;
  Vertex max_aggregate = 0;  // observed C_A; not part of the CSV
};

struct BenchOptions {
  int repeats = 5;
  int warmups = 1;
  std::uint64_t seed = 1;
  /// Sizes above this are skipped (memory guard).
  std::int64_t max_n = std::int64_t{1} << 22;
};

/// Times build_plan and forward on one synthetic graph per size (smooth
/// signal). Each timing is the median of `repeats` runs after `warmups`
/// discarded runs.
std::vector<BenchRow> run_bench(std::string_view family, const std::vector<std::int64_t>& sizes,
                                const BenchOptions& options = {});

/// Header "n,edges,build_ms,forward_ms,plan_bytes".
std::string format_bench_csv(const std::vector<BenchRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace gft
