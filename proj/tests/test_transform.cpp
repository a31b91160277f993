#include <doctest.h>

#include <cmath>
#include <random>

#include "gft/error.hpp"
#include "gft/generators.hpp"
#include "gft/transform.hpp"
#include "oracles.hpp"

using namespace gft;

namespace {

Signal vec(std::initializer_list<double> v) {
  Signal s(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) s(i++) = x;
  return s;
}

std::vector<Graph> corpus(std::mt19937_64& rng) {
  std::vector<Graph> out;
  for (Vertex n : {2, 3, 5, 16, 37, 100}) out.push_back(path_graph(n));
  for (Vertex n : {3, 8, 63}) out.push_back(cycle_graph(n));
  out.push_back(lattice_graph(7, 9));
  out.push_back(oracle::example_graph());
  for (int t = 0; t < 10; ++t) {
    out.push_back(oracle::random_connected_graph(2 + static_cast<Vertex>(rng() % 120), 0.04, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("nine-vertex example: structure of the forced plan") {
  const TransformPlan plan = build_plan(oracle::example_graph(), 0, oracle::example_options());
  CHECK(plan.size() == 9);
  CHECK(plan.depth() == 2);
  CHECK(plan.level_sizes() == std::vector<Vertex>{9, 4, 2, 1});
  CHECK(plan.tail_sizes() == std::vector<std::int64_t>{0, 1, 1, 1});
  CHECK(plan.observed_max_aggregate() == 3);
  const PlanSummary s = plan_summary(plan);
  CHECK(s.depth == 2);
  CHECK(s.observed_max_aggregate == 3);

  const double h = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < plan.level_count(); ++j) {
    const auto& L = plan.level(j);
    for (Vertex a = 0; a < L.aggregation().size(); ++a) {
      const Eigen::MatrixXd Q = L.local_basis(a);
      if (Q.rows() == 2) {
        CHECK(Q(0, 0) == h);
        CHECK(Q(1, 0) == h);
        CHECK(Q(0, 1) == h);
        CHECK(Q(1, 1) == -h);
      } else {
        CHECK(Q.rows() == 3);
        CHECK((Q.transpose() * Q - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
        // Columns 1 and 2 span the complement of the constants.
        CHECK(std::abs(Q.col(1).sum()) <= 1e-12);
        CHECK(std::abs(Q.col(2).sum()) <= 1e-12);
        const Eigen::MatrixXd L3 = laplacian_matrix(complete_graph(3));
        CHECK((L3 * Q.col(1) - 3.0 * Q.col(1)).norm() <= 1e-12);
        CHECK((L3 * Q.col(2) - 3.0 * Q.col(2)).norm() <= 1e-12);
      }
    }
  }
  // The tail coefficient is the * output of {5,8,9} at level 0.
  CHECK(band_of(plan, 8) == 0);
  CHECK(band_of(plan, 0) == kSpineBand);
}

TEST_CASE("path-4: structure, forward and inverse by hand") {
  const TransformPlan plan = oracle::path4_plan();
  CHECK(plan.depth() == 1);
  CHECK(plan.level_sizes() == std::vector<Vertex>{4, 2, 1});
  CHECK(plan.tail_sizes() == std::vector<std::int64_t>{0, 0, 0});
  CHECK(plan.level(0).channel_count() == 1);
  CHECK(plan.level(1).channel_count() == 2);
  CHECK(plan.observed_max_aggregate() == 2);

  const FrequencyVector f = forward(plan, vec({0, 1, 2, 3}));
  CHECK((f.coefficients - vec({3, -2, -1, 0})).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(f.plan_checksum == plan.checksum());
  CHECK((inverse(plan, f) - vec({0, 1, 2, 3})).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((inverse(plan, {vec({3, -2, -1, 0}), plan.checksum()}) - vec({0, 1, 2, 3})).norm() <= 1e-14);

  CHECK(band_of(plan, 0) == kSpineBand);
  CHECK(band_of(plan, 1) == 1);
  CHECK(band_of(plan, 2) == 0);
  CHECK(band_of(plan, 3) == 0);
  CHECK_THROWS(band_of(plan, 4));

  const Eigen::MatrixXd B = assemble_dense_basis(plan);
  CHECK((B.col(0) - Signal::Constant(4, 0.5)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((B.transpose() * B - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("n = 2 plan is exactly the Haar matrix") {
  const TransformPlan plan = build_plan(path_graph(2), 9);
  const Eigen::MatrixXd B = assemble_dense_basis(plan);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(B(0, 0) == h);
  CHECK(B(1, 0) == h);
  CHECK(std::abs(B(0, 1)) == h);
  CHECK(B(0, 1) == -B(1, 1));
}

TEST_CASE("n = 1 plan has no levels and is the identity") {
  const TransformPlan plan = build_plan(path_graph(1), 4);
  CHECK(plan.level_count() == 0);
  CHECK_FALSE(plan.depth().has_value());
  CHECK_FALSE(plan_summary(plan).depth.has_value());
  const FrequencyVector f = forward(plan, vec({2.5}));
  CHECK(f.coefficients(0) == 2.5);
  CHECK(inverse(plan, f)(0) == 2.5);
  CHECK(band_of(plan, 0) == kSpineBand);
}

TEST_CASE("forward agrees with the dense level-matrix oracle; bands agree with genealogy") {
  std::mt19937_64 rng(41);
  for (const Graph& g : corpus(rng)) {
    const TransformPlan plan = build_plan(g, rng());
    const Eigen::MatrixXd Q = oracle::dense_transform(plan);
    const Signal u = oracle::random_signal(plan.size(), rng);
    const FrequencyVector f = forward(plan, u);
    CHECK((f.coefficients - Q * u).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, u.norm()));
    if (plan.size() <= 128) {
      CHECK((assemble_dense_basis(plan) - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK(plan.band_map() == oracle::bands(plan));
  }
}

TEST_CASE("Parseval, round-trip and dimension conservation") {
  std::mt19937_64 rng(42);
  for (const Graph& g : corpus(rng)) {
    const TransformPlan plan = build_plan(g, rng());
    const Signal u = oracle::random_signal(plan.size(), rng);
    const FrequencyVector f = forward(plan, u);
    CHECK(std::abs(f.coefficients.norm() - u.norm()) <= 1e-10 * u.norm());
    CHECK((inverse(plan, f) - u).norm() <= 1e-12 * u.norm());

    const auto sizes = plan.level_sizes();
    const auto& tails = plan.tail_sizes();
    for (int j = 0; j <= plan.level_count(); ++j) {
      CHECK((std::int64_t{1} << j) * sizes[j] + tails[j] == plan.size());
    }
    for (int j = 0; j < plan.level_count(); ++j) {
      const auto& L = plan.level(j);
      CHECK(2 * L.next_size() + L.leftover() == L.size());
      CHECK(tails[j + 1] == tails[j] + (std::int64_t{1} << j) * (sizes[j] - 2 * sizes[j + 1]));
    }
    CHECK(sizes.back() == 1);
    if (plan.size() > 1) CHECK(plan.level_count() <= static_cast<int>(std::ceil(std::log2(plan.size()))));
  }
}

TEST_CASE("constant signal: level-0 outputs vanish; spine concentration on uniform plans") {
  std::mt19937_64 rng(43);
  for (const Graph& g : corpus(rng)) {
    const TransformPlan plan = build_plan(g, rng());
    const Eigen::Index n = plan.size();
    const FrequencyVector f = forward(plan, Signal::Constant(n, 2.0));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (band_of(plan, i) == 0) CHECK(std::abs(f.coefficients(i)) <= 1e-12);
    }
    Signal e = Signal::Zero(n);
    e(0) = 1.0;
    const Signal col = inverse(plan, {e, plan.checksum()});
    CHECK(col.minCoeff() > 0.0);  // the spine vector is positive everywhere
  }
  // Complete graphs on 2^k vertices match perfectly at every level, so the
  // + outputs stay constant and all energy reaches the spine.
  for (Vertex n : {2, 4, 8, 16, 32}) {
    const TransformPlan plan = build_plan(complete_graph(n), 5);
    CHECK(plan.observed_max_aggregate() == 2);
    const FrequencyVector f = forward(plan, Signal::Constant(n, 2.0));
    CHECK(f.coefficients(0) == doctest::Approx(2.0 * std::sqrt(static_cast<double>(n))).epsilon(1e-13));
    if (n > 1) CHECK(f.coefficients.tail(n - 1).cwiseAbs().maxCoeff() <= 1e-12);
    Signal e = Signal::Zero(n);
    e(0) = 1.0;
    const Signal col = inverse(plan, {e, plan.checksum()});
    CHECK((col.array() - 1.0 / std::sqrt(static_cast<double>(n))).abs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("dense basis orthogonality and guard") {
  std::mt19937_64 rng(44);
  const TransformPlan plan = build_plan(oracle::random_connected_graph(300, 0.02, rng), 3);
  const Eigen::MatrixXd B = assemble_dense_basis(plan);
  CHECK((B.transpose() * B - Eigen::MatrixXd::Identity(300, 300)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK_THROWS_AS(assemble_dense_basis(build_plan(path_graph(4097), 1)), std::invalid_argument);
}

TEST_CASE("determinism and seeds") {
  const Graph g = lattice_graph(12, 10);
  const TransformPlan a = build_plan(g, 17);
  const TransformPlan b = build_plan(g, 17);
  CHECK(a.checksum() == b.checksum());
  CHECK(a.band_map() == b.band_map());
  const Signal u = Signal::LinSpaced(120, 0, 1);
  CHECK(forward(a, u).coefficients == forward(b, u).coefficients);
  CHECK(build_plan(g, 18).checksum() != a.checksum());
  CHECK(level_seed(1, 0) != level_seed(1, 1));
  CHECK(level_seed(1, 0) == level_seed(1, 0));
}

TEST_CASE("shared dictionary gives identical plans") {
  const Graph g = lattice_graph(9, 9);
  BasisDictionary dict;
  BuildOptions with;
  with.dictionary = &dict;
  CHECK(build_plan(g, 5, with).checksum() == build_plan(g, 5).checksum());
  CHECK(dict.hits() + dict.misses() > 0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(build_plan(parse_graph("1 2\n3 4\n"), 1), GraphError);
  const TransformPlan plan = oracle::path4_plan();
  CHECK_THROWS(forward(plan, Signal::Zero(3)));
  const FrequencyVector f = forward(plan, vec({1, 2, 3, 4}));
  const TransformPlan other = build_plan(path_graph(4), 99);
  if (other.checksum() != plan.checksum()) CHECK_THROWS_AS(inverse(other, f), ChecksumError);
  CHECK_THROWS(inverse(plan, {Signal::Zero(3), plan.checksum()}));

  BuildOptions bad;
  bad.forced_aggregations.push_back(Aggregation::from_aggregates(4, {{0, 2}, {1, 3}}));
  CHECK_THROWS_AS(build_plan(path_graph(4), 1, bad), std::invalid_argument);

  BuildOptions capped;
  capped.local_basis_cap = 2;
  CHECK_THROWS_AS(build_plan(star_graph(3), 1, capped), GraphError);
}

TEST_CASE("plan constructor validates conservation") {
  const TransformPlan plan = oracle::path4_plan();
  std::vector<LevelTransform> only_first{plan.level(0)};
  CHECK_THROWS_AS(TransformPlan(4, 0, only_first), std::invalid_argument);  // does not reach one vertex
  std::vector<LevelTransform> levels = plan.levels();
  CHECK_THROWS_AS(TransformPlan(5, 0, levels), std::invalid_argument);
  CHECK_NOTHROW(TransformPlan(4, 0, levels));
}
