#include "gft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gft/generators.hpp"
#include "gft/transform.hpp"

namespace gft {

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(values.begin(), mid));
}

std::vector<BenchRow> run_bench(std::string_view family, const std::vector<std::int64_t>& sizes,
                                const BenchOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("run_bench: repeats must be positive");
  std::vector<BenchRow> rows;
  for (std::int64_t size : sizes) {
    if (size < 2 || size > options.max_n) {
      std::fprintf(stderr, "warning: skipping size %lld (outside [2, %lld])\n", static_cast<long long>(size),
                   static_cast<long long>(options.max_n));
      continue;
    }
    const SyntheticGraph g = make_synthetic_graph(family, static_cast<Vertex>(size), options.seed);
    const Signal u = make_synthetic_signal("smooth", g, options.seed);

    TransformPlan plan;
    std::vector<double> build_times, forward_times;
    for (int r = 0; r < options.warmups + options.repeats; ++r) {
      const double ms = time_ms([&] { plan = build_plan(g.graph, options.seed); });
      if (r >= options.warmups) build_times.push_back(ms);
    }
    FrequencyVector f;
    for (int r = 0; r < options.warmups + options.repeats; ++r) {
      const double ms = time_ms([&] { f = forward(plan, u); });
      if (r >= options.warmups) forward_times.push_back(ms);
    }

    BenchRow row;
    row.n = g.graph.vertex_count();
    row.edges = g.graph.edge_count();
    row.build_ms = median(build_times);
    row.forward_ms = median(forward_times);
    row.plan_bytes = plan_summary(plan).storage_bytes;
    row.max_aggregate = plan.observed_max_aggregate();
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,edges,build_ms,forward_ms,plan_bytes\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%lld,%.6f,%.6f,%llu\n", static_cast<long long>(r.n),
                  static_cast<long long>(r.edges), r.build_ms, r.forward_ms,
                  static_cast<unsigned long long>(r.plan_bytes));
    out += buf;
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  const double count = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace gft
