// Acceptance checks, one PASS/FAIL line per criterion.
//
//   gft_acceptance          run all criteria
//   gft_acceptance 3 7      run the listed criteria
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gft/bench.hpp"
#include "gft/best_basis.hpp"
#include "gft/compression.hpp"
#include "gft/error.hpp"
#include "gft/filtering.hpp"
#include "gft/generators.hpp"
#include "gft/io.hpp"
#include "gft/spectral.hpp"
#include "gft/transform.hpp"
#include "oracles.hpp"

using namespace gft;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 50 connected graphs with n in [2, 2000]: G(n, ceil(n ln n)), paths,
// cycles and lattices, sizes log-uniform with both ends included.
std::vector<Graph> orthogonality_corpus() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> logn(std::log(2.0), std::log(2000.0));
  std::vector<Graph> out;
  for (int t = 0; t < 50; ++t) {
    Vertex n = t == 0 ? 2 : t == 1 ? 2000 : static_cast<Vertex>(std::lround(std::exp(logn(rng))));
    switch (t % 4) {
      case 0: {
        const auto m = static_cast<std::int64_t>(std::ceil(n * std::log(std::max<double>(n, 2))));
        out.push_back(connected_erdos_renyi_graph(n, m, rng()));
        break;
      }
      case 1:
        out.push_back(path_graph(n));
        break;
      case 2:
        out.push_back(cycle_graph(std::max<Vertex>(n, 3)));
        break;
      default: {
        const Vertex w = lattice_width(n);
        out.push_back(lattice_graph(w, n / w));
      }
    }
  }
  return out;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  double worst_orth = 0.0, worst_round = 0.0;
  int dense = 0;
  Vertex largest = 0;
  for (const Graph& g : orthogonality_corpus()) {
    const TransformPlan plan = build_plan(g, rng());
    largest = std::max(largest, g.vertex_count());
    if (plan.size() <= 512) {
      const Eigen::MatrixXd Q = assemble_dense_basis(plan);
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(plan.size(), plan.size());
      worst_orth = std::max(worst_orth, (Q.transpose() * Q - I).cwiseAbs().maxCoeff());
      ++dense;
    }
    const Signal u = oracle::random_signal(plan.size(), rng);
    worst_round = std::max(worst_round, (inverse(plan, forward(plan, u)) - u).norm() / u.norm());
  }
  const double elapsed = seconds_since(start);
  return {worst_orth <= 1e-10 && worst_round <= 1e-12 && elapsed < 60.0,
          fmt("max|QtQ-I|=%.3g over %d dense plans (tol 1e-10), max round-trip rel err=%.3g (tol 1e-12), "
              "largest n=%d, %.2fs (limit 60s)",
              worst_orth, dense, worst_round, largest, elapsed)};
}

Outcome criterion2() {
  // Level-0 aggregates numbered {1,2}, {6,7}, {5,8,9}, {3,4} so that the
  // level-1 pairs {1,3}, {2,4} are connected in the quotient graph.
  const TransformPlan plan = build_plan(oracle::example_graph(), 0, oracle::example_options());
  bool ok = plan.level_sizes() == std::vector<Vertex>{9, 4, 2, 1} &&
            plan.tail_sizes() == std::vector<std::int64_t>{0, 1, 1, 1} && plan.depth() == 2 &&
            plan.observed_max_aggregate() == 3;
  const double h = 1.0 / std::sqrt(2.0);
  int pairs = 0, triangles = 0;
  double tri_orth = 0.0, tri_eig = 0.0;
  for (int j = 0; j < plan.level_count(); ++j) {
    const auto& L = plan.level(j);
    for (Vertex a = 0; a < L.aggregation().size(); ++a) {
      const Eigen::MatrixXd Q = L.local_basis(a);
      if (Q.rows() == 2) {
        ok = ok && Q(0, 0) == h && Q(1, 0) == h && Q(0, 1) == h && Q(1, 1) == -h;
        ++pairs;
        continue;
      }
      ++triangles;
      const Eigen::MatrixXd lambda = Q.transpose() * laplacian_matrix(complete_graph(3)) * Q;
      tri_orth = std::max(tri_orth, (Q.transpose() * Q - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
      tri_eig = std::max(tri_eig, (lambda - Eigen::Vector3d(0, 3, 3).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff());
    }
  }
  ok = ok && pairs == 6 && triangles == 1 && tri_orth <= 1e-12 && tri_eig <= 1e-12;
  const PlanSummary s = plan_summary(plan);
  return {ok, fmt("n=9 J=%d C_A=%d, %d exact Haar pair blocks, triangle |QtQ-I|=%.2g, |QtLQ-diag(0,3,3)|=%.2g",
                  s.depth.value_or(-1), s.observed_max_aggregate, pairs, tri_orth, tri_eig)};
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  double worst_norm = 0.0, worst_bands = 0.0;
  for (const Graph& g : orthogonality_corpus()) {
    const TransformPlan plan = build_plan(g, rng());
    const Signal u = oracle::random_signal(plan.size(), rng);
    const FrequencyVector f = forward(plan, u);
    worst_norm = std::max(worst_norm, std::abs(f.coefficients.norm() - u.norm()) / u.norm());
    double total = 0.0;
    for (const auto& b : band_energies(plan, f)) total += b.energy;
    worst_bands = std::max(worst_bands, std::abs(total - u.squaredNorm()) / u.squaredNorm());
  }
  return {worst_norm <= 1e-10 && worst_bands <= 1e-10,
          fmt("max rel |  ||f|| - ||u||  | = %.3g, max rel band-sum error = %.3g (tol 1e-10)", worst_norm,
              worst_bands)};
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  int violations = 0, cases = 0;
  double tightest = 0.0;
  for (int m = 2; m <= 12; ++m) {
    for (int t = 0; t < 100; ++t) {
      const double alpha = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
      std::uniform_real_distribution<double> step(-alpha, alpha);
      Eigen::VectorXd u(m);
      u(0) = std::normal_distribution<double>(0, 10)(rng);
      // Every tenth vector is a full-slope ramp, the extremal case.
      for (int i = 1; i < m; ++i) u(i) = u(i - 1) + (t % 10 == 0 ? alpha : step(rng));
      const double bound = alpha * alpha * m * m * m / 12.0;
      const double r = constant_fit_residual(u);
      tightest = std::max(tightest, r / bound);
      if (r > bound) ++violations;
      ++cases;
    }
  }
  return {violations == 0, fmt("%d vectors, m = 2..12, %d violations, max residual/bound = %.4f", cases, violations,
                               tightest)};
}

Outcome criterion5() {
  struct Case {
    const char* family;
    Vertex n;
  };
  int decay_violations = 0, band_violations = 0, checks = 0, band_checks = 0;
  std::string worst;
  double worst_band_ratio = 0.0, worst_decay_ratio = 0.0;
  for (const Case c : {Case{"path", 256}, Case{"cycle", 256}, Case{"lattice", 1024}}) {
    const SyntheticGraph sg = make_synthetic_graph(c.family, c.n, 1);
    const TransformPlan plan = build_plan(sg.graph, 1);
    const double ca = plan.observed_max_aggregate();
    for (const char* kind : {"ramp", "sine"}) {
      const Signal u = make_synthetic_signal(kind, sg, 1);
      const double s = smoothness_seminorm(sg.graph, u);
      for (Eigen::Index k = 1;; k = std::min<Eigen::Index>(2 * k, c.n)) {
        const double err = filter_k(plan, u, k).residual_energy;
        const double bound = decay_bound(c.n, static_cast<double>(k), ca, s);
        worst_decay_ratio = std::max(worst_decay_ratio, bound > 0 ? err / bound : 0.0);
        if (err > bound) ++decay_violations;
        ++checks;
        if (k == c.n) break;
      }
      for (const auto& b : band_energies(plan, forward(plan, u))) {
        if (b.band == kSpineBand) continue;
        const double bound = band_bound(c.n, b.band, ca, s);
        ++band_checks;
        if (b.energy > bound) {
          ++band_violations;
          if (b.energy / bound > worst_band_ratio) {
            worst_band_ratio = b.energy / bound;
            worst = fmt("%s-%d %s band %d energy/bound=%.3g", c.family, c.n, kind, b.band, worst_band_ratio);
          }
        }
      }
    }
  }
  std::string detail = fmt("decay bound: %d/%d violations (max err/bound %.3g); band bound: %d/%d violations",
                           decay_violations, checks, worst_decay_ratio, band_violations, band_checks);
  if (!worst.empty()) detail += " (worst " + worst + ")";
  return {decay_violations == 0 && band_violations == 0, detail};
}

Outcome criterion6() {
  // Perfect pairings (2i, 2i+1) at every level of cycle-1024.
  constexpr Vertex n = 1024;
  BuildOptions options;
  for (Vertex m = n; m > 1; m /= 2) {
    std::vector<std::vector<Vertex>> pairs;
    for (Vertex i = 0; i < m; i += 2) pairs.push_back({i, i + 1});
    options.forced_aggregations.push_back(Aggregation::from_aggregates(m, pairs));
  }
  const SyntheticGraph sg = make_synthetic_graph("cycle", n, 1);
  const TransformPlan plan = build_plan(sg.graph, 1, options);
  const Signal u = make_synthetic_signal("smooth", sg, 1);
  bool ok = plan.observed_max_aggregate() == 2;
  double weakest = INFINITY;
  std::string ratios;
  for (Eigen::Index k = 8; k <= 256; k *= 2) {
    const double a = filter_k(plan, u, k).residual_energy, b = filter_k(plan, u, 2 * k).residual_energy;
    const double ratio = b > 0 ? a / b : INFINITY;
    weakest = std::min(weakest, ratio);
    ok = ok && ratio >= 3.0;
    ratios += fmt("%s%lld:%.3g", ratios.empty() ? "" : " ", static_cast<long long>(k), ratio);
  }
  return {ok, fmt("C_A=%d, min ratio %.3g (need >= 3); k:ratio %s", plan.observed_max_aggregate(), weakest,
                  ratios.c_str())};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  int mismatches = 0, dominance = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 16);
    const Graph g = oracle::random_connected_graph(n, 0.05 + 0.3 * static_cast<double>(rng() % 100) / 100, rng);
    const TransformPlan plan = build_plan(g, rng());
    const Signal u = oracle::random_signal(n, rng);
    const BasisSelection sel = best_basis(BasisTree(plan, u));
    double brute = INFINITY;
    for (const auto& s : oracle::all_selections(plan.level_count())) {
      brute = std::min(brute, oracle::selection_cost(plan, u, s));
    }
    const double gap = std::abs(sel.total_cost - brute) / std::max(1.0, brute);
    worst = std::max(worst, gap);
    if (gap > 1e-12) ++mismatches;
    const double fixed = std::min(u.lpNorm<1>(), forward(plan, u).coefficients.lpNorm<1>());
    if (sel.total_cost > fixed * (1 + 1e-12)) ++dominance;
  }
  return {mismatches == 0 && dominance == 0,
          fmt("200 graphs (n <= 16): %d DP/brute-force mismatches (max rel gap %.2g), %d dominance violations",
              mismatches, worst, dominance)};
}

Outcome criterion8() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::int64_t> sizes;
  for (int e = 14; e <= 20; ++e) sizes.push_back(std::int64_t{1} << e);
  const auto rows = run_bench("lattice", sizes);
  std::vector<double> x, y;
  double lo = INFINITY, hi = 0.0;
  bool storage_ok = rows.size() == sizes.size();
  for (const auto& r : rows) {
    x.push_back(static_cast<double>(r.n));
    y.push_back(r.build_ms + r.forward_ms);
    const double per = static_cast<double>(r.plan_bytes) / static_cast<double>(r.n);
    lo = std::min(lo, per);
    hi = std::max(hi, per);
    const double c = r.max_aggregate;
    storage_ok = storage_ok && per <= 8.0 * 2.0 * c * c + 64.0;
  }
  const double slope = loglog_slope(x, y);
  const double elapsed = seconds_since(start);
  return {slope <= 1.15 && storage_ok && elapsed < 600.0,
          fmt("lattices 2^14..2^20: slope(build+forward)=%.3f (limit 1.15), plan bytes/n in [%.2f, %.2f] "
              "(limit 16 C_A^2 + 64), %.1fs (limit 600s)",
              slope, lo, hi, elapsed)};
}

Outcome criterion9() {
  const SyntheticGraph sg = make_synthetic_graph("lattice", 256, 1);
  const Signal u = make_synthetic_signal("smooth", sg, 1);
  const TransformPlan plan = build_plan(sg.graph, 1);
  std::vector<Eigen::Index> ks;
  for (Eigen::Index k = 1; k <= 256; ++k) ks.push_back(k);
  const auto rows = compare_filters(sg.graph, plan, u, ks);
  int increases = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].err_alg2 > rows[i - 1].err_alg2 + 1e-12) ++increases;
    if (rows[i].err_adaptive > rows[i - 1].err_adaptive + 1e-12) ++increases;
    if (!rows[i].err_spectral || *rows[i].err_spectral > *rows[i - 1].err_spectral + 1e-12) ++increases;
  }
  const auto& k3 = rows[2];
  const bool direction = k3.err_spectral && *k3.err_spectral <= k3.err_alg2;
  return {increases == 0 && direction,
          fmt("16x16 smooth field: %d increases across k = 1..256; at k=3 err_alg2=%.4f err_adaptive=%.4f "
              "err_spectral=%.4f",
              increases, k3.err_alg2, k3.err_adaptive, k3.err_spectral.value_or(NAN))};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  int plan_failures = 0, payload_failures = 0, size_failures = 0, refusals = 0, plans = 0, payloads = 0;
  std::vector<Graph> graphs{oracle::example_graph(), path_graph(1), lattice_graph(20, 17)};
  for (int t = 0; t < 7; ++t) {
    graphs.push_back(oracle::random_connected_graph(2 + static_cast<Vertex>(rng() % 400), 0.01, rng));
  }
  for (const Graph& g : graphs) {
    const TransformPlan plan = build_plan(g, rng());
    const auto bytes = encode_plan(plan);
    const TransformPlan back = decode_plan(bytes);
    const Signal u = oracle::random_signal(plan.size(), rng);
    const Eigen::VectorXd a = forward(plan, u).coefficients, b = forward(back, u).coefficients;
    ++plans;
    if (encode_plan(back) != bytes || back.checksum() != plan.checksum() ||
        std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) != 0) {
      ++plan_failures;
    }
    const TransformPlan other = build_plan(g.vertex_count() > 1 ? cycle_graph(std::max<Vertex>(3, g.vertex_count()))
                                                                : path_graph(2),
                                           rng());
    for (bool adaptive : {false, true}) {
      const Eigen::Index k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(plan.size() + 1));
      const CompressionReport r = compress(plan, u, k, adaptive);
      const auto encoded = encode_compressed(r.payload);
      ++payloads;
      if (decode_compressed(encoded) != r.payload || encode_compressed(decode_compressed(encoded)) != encoded) {
        ++payload_failures;
      }
      const std::uint64_t expected =
          38 + 16 * static_cast<std::uint64_t>(k) + (r.payload.selection_bits.size() + 7) / 8;
      if (encoded.size() != expected || r.bytes != expected) ++size_failures;
      try {
        decompress(other, decode_compressed(encoded));
      } catch (const ChecksumError&) {
        ++refusals;
      }
    }
  }
  return {plan_failures == 0 && payload_failures == 0 && size_failures == 0 && refusals == payloads,
          fmt("%d plans: %d round-trip failures; %d payloads: %d round-trip failures, %d size-formula mismatches, "
              "%d/%d refused with a foreign plan",
              plans, plan_failures, payloads, payload_failures, size_failures, refusals, payloads)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"orthogonality and round-trip", criterion1},
    {"nine-vertex golden fixture", criterion2},
    {"Parseval and band energy partition", criterion3},
    {"constant-fit residual bound", criterion4},
    {"decay and band bounds", criterion5},
    {"k^-2 decay on cycle-1024", criterion6},
    {"best-basis optimality", criterion7},
    {"near-linear scaling", criterion8},
    {"spectral comparison", criterion9},
    {"serialization", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s' (expected 1..%zu)\n", argv[i], kCriteria.size());
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty()) {
    for (int c = 1; c <= static_cast<int>(kCriteria.size()); ++c) selected.push_back(c);
  }
  bool all = true;
  for (int c : selected) {
    const auto& [name, run] = kCriteria[static_cast<std::size_t>(c - 1)];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
