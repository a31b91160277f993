// gft: build, apply and inspect multilevel graph frequency transforms.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gft/bench.hpp"
#include "gft/best_basis.hpp"
#include "gft/compression.hpp"
#include "gft/error.hpp"
#include "gft/filtering.hpp"
#include "gft/generators.hpp"
#include "gft/io.hpp"
#include "gft/spectral.hpp"
#include "gft/transform.hpp"

namespace {

using namespace gft;

enum ExitCode { kOk = 0, kOther = 1, kGraph = 2, kFormat = 3, kChecksum = 4 };

struct RunConfig {
  std::string graph;
  std::string plan;
  std::string signal;
  std::string payload;
  std::string out;
  std::vector<std::string> aggregations;
  std::uint64_t seed = 1;
  long long k = 0;
  std::vector<long long> ks;
  bool adaptive = false;
  std::vector<long long> sizes;
  std::string family = "lattice";
  long long n = 0;
  std::string kind = "smooth";
  std::string graph_out;
  std::string signal_out;
  long long max_spectral_n = kSpectralGuard;
  long long max_n = 1LL << 22;
  int repeats = 5;
};

std::string join(const auto& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ',';
    s += std::to_string(v);
  }
  return s;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

int cmd_build(const RunConfig& cfg) {
  const Graph g = read_graph_file(cfg.graph);
  BuildOptions options;
  Vertex level_n = g.vertex_count();
  for (const auto& path : cfg.aggregations) {
    const auto bytes = read_binary_file(path);
    options.forced_aggregations.push_back(
        parse_aggregation({reinterpret_cast<const char*>(bytes.data()), bytes.size()}, level_n));
    level_n = options.forced_aggregations.back().size();
  }
  const auto start = std::chrono::steady_clock::now();
  TransformPlan plan;
  try {
    plan = build_plan(g, cfg.seed, options);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("aggregation: ") + e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  save_plan(plan, cfg.out);

  const PlanSummary s = plan_summary(plan);
  std::cout << "n=" << s.n << " J=" << (s.depth ? std::to_string(*s.depth) : std::string("none"))
            << " C_A=" << s.observed_max_aggregate << " n_j=" << join(s.level_sizes) << " m_j=" << join(s.tail_sizes)
            << " plan_bytes=" << s.storage_bytes << " checksum=" << fmt("%016llx", (unsigned long long)plan.checksum())
            << '\n';
  std::cerr << fmt("build_ms=%.3f\n", ms);
  return kOk;
}

int cmd_forward(const RunConfig& cfg) {
  const TransformPlan plan = load_plan(cfg.plan);
  const Signal u = read_signal_file(cfg.signal);
  emit(cfg.out, format_frequency_vector(forward(plan, u)));
  return kOk;
}

int cmd_inverse(const RunConfig& cfg) {
  const TransformPlan plan = load_plan(cfg.plan);
  const auto bytes = read_binary_file(cfg.signal);
  const FrequencyVector f = parse_frequency_vector({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
  emit(cfg.out, format_signal(inverse(plan, f)));
  return kOk;
}

int cmd_compress(const RunConfig& cfg) {
  const TransformPlan plan = load_plan(cfg.plan);
  const Signal u = read_signal_file(cfg.signal);
  const CompressionReport r = compress(plan, u, cfg.k, cfg.adaptive);
  save_compressed(r.payload, cfg.out);
  std::cout << "k,relative_error,bytes\n"
            << fmt("%lld,%.17g,%llu\n", cfg.k, r.relative_error, (unsigned long long)r.bytes);
  return kOk;
}

int cmd_decompress(const RunConfig& cfg) {
  const TransformPlan plan = load_plan(cfg.plan);
  emit(cfg.out, format_signal(decompress(plan, load_compressed(cfg.payload))));
  return kOk;
}

int cmd_analyze(const RunConfig& cfg) {
  const TransformPlan plan = load_plan(cfg.plan);
  const Graph g = read_graph_file(cfg.graph);
  const Signal u = read_signal_file(cfg.signal);
  if (g.vertex_count() != plan.size() || u.size() != plan.size()) {
    throw FormatError("graph, plan and signal sizes differ");
  }
  const double n = static_cast<double>(plan.size());
  const double norm = u.norm();
  const double seminorm = smoothness_seminorm(g, u);
  const double ca = plan.observed_max_aggregate();

  std::string csv = "k,log2_k,err_standard,err_adaptive,bound\n";
  const FrequencyVector f = forward(plan, u);
  const BasisTree tree(plan, u);
  const BasisSelection sel = best_basis(tree);
  const Eigen::VectorXd adaptive = coefficients_for_selection(tree, sel).values;
  for (Eigen::Index k = 1;; k = std::min<Eigen::Index>(2 * k, plan.size())) {
    FrequencyVector kept{Eigen::VectorXd::Zero(plan.size()), f.plan_checksum};
    for (Eigen::Index i : top_k_support(f, k)) kept.coefficients(i) = f.coefficients(i);
    Eigen::VectorXd kept_adaptive = Eigen::VectorXd::Zero(plan.size());
    for (Eigen::Index i : top_k_support(adaptive, k)) kept_adaptive(i) = adaptive(i);
    const double err = norm > 0 ? (u - inverse(plan, kept)).norm() / norm : 0.0;
    const double err_a = norm > 0 ? (u - reconstruct_from_selection(plan, sel, kept_adaptive)).norm() / norm : 0.0;
    const double bound = norm > 0 ? std::sqrt(decay_bound(n, static_cast<double>(k), ca, seminorm)) / norm : 0.0;
    csv += fmt("%lld,%.6f,%.17g,%.17g,%.17g\n", (long long)k, std::log2(static_cast<double>(k)), err, err_a, bound);
    if (k == plan.size()) break;
  }
  csv += "\nband,energy,bound\n";
  for (const auto& b : band_energies(plan, f)) {
    if (b.band == kSpineBand) {
      csv += fmt("spine,%.17g,\n", b.energy);
    } else {
      csv += fmt("%d,%.17g,%.17g\n", b.band, b.energy, band_bound(n, b.band, ca, seminorm));
    }
  }
  emit(cfg.out, csv);
  return kOk;
}

int cmd_bench(const RunConfig& cfg) {
  BenchOptions options;
  options.seed = cfg.seed;
  options.repeats = cfg.repeats;
  options.max_n = cfg.max_n;
  const auto rows = run_bench(cfg.family, {cfg.sizes.begin(), cfg.sizes.end()}, options);
  emit(cfg.out, format_bench_csv(rows));
  if (rows.size() >= 2) {
    std::vector<double> x, y;
    double lo = INFINITY, hi = 0;
    for (const auto& r : rows) {
      x.push_back(static_cast<double>(r.n));
      y.push_back(r.build_ms + r.forward_ms);
      const double per = static_cast<double>(r.plan_bytes) / static_cast<double>(r.n);
      lo = std::min(lo, per);
      hi = std::max(hi, per);
    }
    std::cerr << fmt("slope(build+forward)=%.4f plan_bytes_per_n=[%.3f, %.3f]\n", loglog_slope(x, y), lo, hi);
  }
  return kOk;
}

int cmd_compare(const RunConfig& cfg) {
  const Graph g = read_graph_file(cfg.graph);
  const Signal u = read_signal_file(cfg.signal);
  const TransformPlan plan = cfg.plan.empty() ? build_plan(g, cfg.seed) : load_plan(cfg.plan);
  if (u.size() != g.vertex_count()) throw FormatError("signal length does not match the graph");
  const Eigen::Index limit = std::min<Eigen::Index>(cfg.max_spectral_n, kSpectralGuard);
  if (g.vertex_count() > limit) {
    std::cerr << "warning: n = " << g.vertex_count() << " exceeds the spectral limit " << limit
              << "; err_spectral column omitted\n";
  }
  std::vector<Eigen::Index> ks(cfg.ks.begin(), cfg.ks.end());
  if (ks.empty()) {
    for (Eigen::Index k = 1; k < plan.size(); k *= 2) ks.push_back(k);
    ks.push_back(plan.size());
  }
  emit(cfg.out, format_comparison_csv(compare_filters(g, plan, u, ks, limit)));
  return kOk;
}

int cmd_gen(const RunConfig& cfg) {
  const SyntheticGraph s = make_synthetic_graph(cfg.family, static_cast<Vertex>(cfg.n), cfg.seed);
  if (!cfg.graph_out.empty()) write_text_file(cfg.graph_out, format_edge_list(s.graph));
  if (!cfg.signal_out.empty()) {
    write_text_file(cfg.signal_out, format_signal(make_synthetic_signal(cfg.kind, s, cfg.seed)));
  }
  std::cout << "n=" << s.graph.vertex_count() << " edges=" << s.graph.edge_count() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel orthogonal frequency transforms on graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Matching seed")->capture_default_str(); };
  auto existing = CLI::ExistingFile;

  auto* build = app.add_subcommand("build", "Aggregate a graph and write its transform plan");
  build->add_option("--graph", cfg.graph, "Edge list or Matrix Market file")->required()->check(existing);
  build->add_option("--out", cfg.out, "Plan file to write")->required();
  build->add_option("--aggregation", cfg.aggregations, "Aggregation file for the next level (repeatable)")
      ->check(existing);
  add_seed(build);

  auto* fwd = app.add_subcommand("forward", "Write the frequency coefficients of a signal");
  fwd->add_option("--plan", cfg.plan)->required()->check(existing);
  fwd->add_option("--signal", cfg.signal)->required()->check(existing);
  fwd->add_option("--out", cfg.out, "Coefficient file (default stdout)");

  auto* inv = app.add_subcommand("inverse", "Reconstruct a signal from a coefficient file");
  inv->add_option("--plan", cfg.plan)->required()->check(existing);
  inv->add_option("--signal", cfg.signal, "Coefficient file written by forward")->required()->check(existing);
  inv->add_option("--out", cfg.out, "Signal file (default stdout)");

  auto* comp = app.add_subcommand("compress", "Keep the k largest coefficients of a signal");
  comp->add_option("--plan", cfg.plan)->required()->check(existing);
  comp->add_option("--signal", cfg.signal)->required()->check(existing);
  comp->add_option("--k", cfg.k, "Coefficients to keep")->required()->check(CLI::NonNegativeNumber);
  comp->add_flag("--adaptive", cfg.adaptive, "Use the best l1 basis for the signal");
  comp->add_option("--out", cfg.out, "Payload file")->required();

  auto* decomp = app.add_subcommand("decompress", "Rebuild a signal from a payload");
  decomp->add_option("--plan", cfg.plan)->required()->check(existing);
  decomp->add_option("--payload", cfg.payload)->required()->check(existing);
  decomp->add_option("--out", cfg.out, "Signal file (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Error versus k and band energies, with bounds");
  analyze->add_option("--plan", cfg.plan)->required()->check(existing);
  analyze->add_option("--graph", cfg.graph, "Graph the plan was built from")->required()->check(existing);
  analyze->add_option("--signal", cfg.signal)->required()->check(existing);
  analyze->add_option("--out", cfg.out, "CSV file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Time plan construction and the forward transform");
  bench->add_option("--sizes", cfg.sizes, "Comma-separated vertex counts")->required()->delimiter(',');
  bench->add_option("--family", cfg.family, "path, cycle, lattice, er")->capture_default_str();
  bench->add_option("--repeats", cfg.repeats, "Timed runs per size")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--max-n", cfg.max_n, "Skip larger sizes")->capture_default_str();
  bench->add_option("--out", cfg.out, "CSV file (default stdout)");
  add_seed(bench);

  auto* compare = app.add_subcommand("compare", "Compare fixed, adaptive and spectral k-term filters");
  compare->add_option("--graph", cfg.graph)->required()->check(existing);
  compare->add_option("--signal", cfg.signal)->required()->check(existing);
  compare->add_option("--plan", cfg.plan, "Plan to use (built from --graph and --seed when absent)")
      ->check(existing);
  compare->add_option("--k", cfg.ks, "Comma-separated k values (default 1, 2, 4, ..., n)")->delimiter(',');
  compare->add_option("--max-spectral-n", cfg.max_spectral_n, "Largest n for the dense spectral filter")
      ->capture_default_str();
  compare->add_option("--out", cfg.out, "CSV file (default stdout)");
  add_seed(compare);

  auto* gen = app.add_subcommand("gen", "Write a synthetic graph and signal");
  gen->add_option("--family", cfg.family, "path, cycle, lattice, er, states")->capture_default_str();
  gen->add_option("--n", cfg.n, "Vertex count (ignored for states)")->check(CLI::Range(1LL, 1LL << 30));
  gen->add_option("--kind", cfg.kind, "constant, ramp, sine, smooth, noise")->capture_default_str();
  gen->add_option("--graph-out", cfg.graph_out, "Edge list to write");
  gen->add_option("--signal-out", cfg.signal_out, "Signal to write");
  add_seed(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kOther;
  }
  if (gen->parsed() && cfg.family != "states" && cfg.n < 1) {
    std::cerr << "error: gen --n is required for family " << cfg.family << '\n';
    return kOther;
  }

  try {
    if (build->parsed()) return cmd_build(cfg);
    if (fwd->parsed()) return cmd_forward(cfg);
    if (inv->parsed()) return cmd_inverse(cfg);
    if (comp->parsed()) return cmd_compress(cfg);
    if (decomp->parsed()) return cmd_decompress(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    if (gen->parsed()) return cmd_gen(cfg);
  } catch (const GraphError& e) {
    std::cerr << "graph error: " << e.what() << '\n';
    return kGraph;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kFormat;
  } catch (const ChecksumError& e) {
    std::cerr << "checksum mismatch: " << e.what() << '\n';
    return kChecksum;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
