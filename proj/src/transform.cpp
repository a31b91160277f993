#include "gft/transform.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "gft/error.hpp"
#include "gft/plan_codec.hpp"

namespace gft {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Local basis of every aggregate, row-major, back to back.
std::vector<double> local_bases_for(const Graph& g, const Aggregation& agg, int cap, BasisDictionary& dict) {
  std::vector<double> bases;
  bases.reserve(static_cast<std::size_t>(2 * g.vertex_count()));
  // Per-build cache in front of the shared dictionary; indexed by size and
  // pattern for aggregates of at most 4 vertices (6 pattern bits).
  std::array<std::array<const LocalBasis*, 64>, 5> fast{};
  std::vector<std::shared_ptr<const LocalBasis>> keep_alive;

  for (Vertex a = 0; a < agg.size(); ++a) {
    const auto members = agg.aggregate(a);
    const int m = static_cast<int>(members.size());
    if (m > cap) {
      throw GraphError("aggregate " + std::to_string(a + 1) + " of size " + std::to_string(m) +
                       " exceeds the local basis cap of " + std::to_string(cap) +
                       "; inspect the aggregation statistics for star-like structure");
    }
    std::shared_ptr<const LocalBasis> owned;
    const LocalBasis* basis = nullptr;
    if (m <= kDictionaryMaxSize) {
      std::uint32_t pattern = 0;
      for (int p = 0; p < m; ++p) {
        for (Vertex w : g.neighbors(members[p])) {
          if (agg.aggregate_of(w) != a) continue;
          const int q = agg.position_of(w);
          if (q <= p) continue;
          // Bit index of pair (p, q) in lexicographic order.
          const int bit = p * (2 * m - p - 1) / 2 + (q - p - 1);
          pattern |= 1u << bit;
        }
      }
      if (m <= 4 && fast[m][pattern]) {
        basis = fast[m][pattern];
      } else {
        owned = dict.lookup(m, pattern);
        basis = owned.get();
        if (m <= 4) {
          fast[m][pattern] = basis;
          keep_alive.push_back(owned);
        }
      }
    } else {
      owned = std::make_shared<const LocalBasis>(local_eigenbasis(induced_subgraph(g, members).graph, cap));
      basis = owned.get();
    }
    for (int p = 0; p < m; ++p)
      for (int r = 0; r < m; ++r) bases.push_back(basis->basis(p, r));
  }
  return bases;
}

void check_signal(const TransformPlan& plan, Eigen::Index size, const char* what) {
  if (size != plan.size()) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(size) +
                                " does not match plan size " + std::to_string(plan.size()));
  }
}

}  // namespace

LevelTransform::LevelTransform(int level, Aggregation aggregation, std::vector<double> bases)
    : level_(level), aggregation_(std::move(aggregation)), bases_(std::move(bases)) {
  basis_offsets_.assign(1, 0);
  basis_offsets_.reserve(static_cast<std::size_t>(aggregation_.size()) + 1);
  for (Vertex a = 0; a < aggregation_.size(); ++a) {
    const std::int64_t m = aggregation_.aggregate_size(a);
    basis_offsets_.push_back(basis_offsets_.back() + m * m);
  }
  if (basis_offsets_.back() != static_cast<std::int64_t>(bases_.size())) {
    throw std::invalid_argument("local basis storage does not match aggregate sizes");
  }
}

Eigen::Map<const RowMajorMatrix> LevelTransform::local_basis(Vertex a) const {
  const Eigen::Index m = aggregation_.aggregate_size(a);
  return {bases_.data() + basis_offsets_[a], m, m};
}

void LevelTransform::analyze(std::span<const double> channel, std::span<double> plus, std::span<double> minus,
                             std::span<double> star) const {
  const auto& offsets = aggregation_.offsets();
  const auto& members = aggregation_.members();
  const double* q = bases_.data();
  std::array<double, kLocalBasisCap> x{};
  std::vector<double> wide;
  for (Vertex a = 0; a < aggregation_.size(); ++a) {
    const std::int64_t begin = offsets[a];
    const int m = static_cast<int>(offsets[a + 1] - begin);
    double* xs = x.data();
    if (m > kLocalBasisCap) {
      wide.resize(static_cast<std::size_t>(m));
      xs = wide.data();
    }
    for (int p = 0; p < m; ++p) xs[p] = channel[members[begin + p]];
    // y_r = sum_p Q(p, r) x_p, summed in increasing p.
    for (int r = 0; r < m; ++r) {
      double y = 0.0;
      for (int p = 0; p < m; ++p) y += q[p * m + r] * xs[p];
      if (r == 0) {
        plus[a] = y;
      } else if (r == 1) {
        minus[a] = y;
      } else {
        star[begin - 2 * a + r - 2] = y;
      }
    }
    q += m * m;
  }
}

void LevelTransform::synthesize(std::span<const double> plus, std::span<const double> minus,
                                std::span<const double> star, std::span<double> channel) const {
  const auto& offsets = aggregation_.offsets();
  const auto& members = aggregation_.members();
  const double* q = bases_.data();
  std::array<double, kLocalBasisCap> y{};
  std::vector<double> wide;
  for (Vertex a = 0; a < aggregation_.size(); ++a) {
    const std::int64_t begin = offsets[a];
    const int m = static_cast<int>(offsets[a + 1] - begin);
    double* ys = y.data();
    if (m > kLocalBasisCap) {
      wide.resize(static_cast<std::size_t>(m));
      ys = wide.data();
    }
    ys[0] = plus[a];
    if (m > 1) ys[1] = minus[a];
    for (int r = 2; r < m; ++r) ys[r] = star[begin - 2 * a + r - 2];
    for (int p = 0; p < m; ++p) {
      double x = 0.0;
      for (int r = 0; r < m; ++r) x += q[p * m + r] * ys[r];
      channel[members[begin + p]] = x;
    }
    q += m * m;
  }
}

TransformPlan::TransformPlan(Eigen::Index n, std::uint64_t seed, std::vector<LevelTransform> levels)
    : n_(n), seed_(seed), levels_(std::move(levels)) {
  if (n < 1) throw std::invalid_argument("plan size must be positive");
  tail_sizes_.assign(1, 0);
  observed_max_aggregate_ = 1;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const auto& L = levels_[j];
    if (L.level() != static_cast<int>(j)) throw std::invalid_argument("level indices out of order");
    const std::int64_t channels = L.channel_count();
    if (channels * L.size() + tail_sizes_.back() != n_) {
      throw std::invalid_argument("dimension conservation violated at level " + std::to_string(j));
    }
    if (L.next_size() < 1 || L.leftover() < 0) {
      throw std::invalid_argument("level " + std::to_string(j) + " does not at least halve the graph");
    }
    if (j + 1 < levels_.size() && levels_[j + 1].size() != L.next_size()) {
      throw std::invalid_argument("level " + std::to_string(j + 1) + " size does not match aggregate count");
    }
    tail_sizes_.push_back(tail_sizes_.back() + channels * L.leftover());
    for (Vertex a = 0; a < L.aggregation().size(); ++a) {
      observed_max_aggregate_ = std::max(observed_max_aggregate_, L.aggregation().aggregate_size(a));
    }
  }
  if (!levels_.empty() && levels_.back().next_size() != 1) {
    throw std::invalid_argument("recursion did not reach a single aggregate");
  }
  if (levels_.empty() && n_ != 1) throw std::invalid_argument("only a single-vertex plan may have no levels");

  // Band of each final position: track, per channel, the level at which its
  // path first took a - branch.
  bands_.assign(static_cast<std::size_t>(n_), kSpineBand);
  std::vector<int> departed{kSpineBand};
  for (const auto& L : levels_) {
    const int j = L.level();
    const std::int64_t channels = L.channel_count();
    const std::int64_t star_base = 2 * channels * L.next_size();
    std::vector<int> next(static_cast<std::size_t>(2 * channels));
    for (std::int64_t c = 0; c < channels; ++c) {
      const int d = departed[c];
      next[2 * c] = d;
      next[2 * c + 1] = d == kSpineBand ? j : d;
      const std::int64_t star_begin = star_base + (channels - 1 - c) * L.leftover();
      std::fill_n(bands_.begin() + star_begin, L.leftover(), d == kSpineBand ? j : d);
    }
    departed = std::move(next);
  }
  if (!levels_.empty()) std::copy(departed.begin(), departed.end(), bands_.begin());

  binary::Fnv1a hash;
  detail::encode_plan_body(hash, n_, seed_, levels_, tail_sizes_);
  checksum_ = hash.value();
}

std::vector<Vertex> TransformPlan::level_sizes() const {
  std::vector<Vertex> sizes;
  for (const auto& L : levels_) sizes.push_back(L.size());
  sizes.push_back(levels_.empty() ? static_cast<Vertex>(n_) : levels_.back().next_size());
  return sizes;
}

std::uint64_t level_seed(std::uint64_t seed, int level) {
  return splitmix64(seed ^ (0x51ed270b27c5e3a1ULL * static_cast<std::uint64_t>(level + 1)));
}

TransformPlan build_plan(const Graph& g, std::uint64_t seed, const BuildOptions& options) {
  if (g.vertex_count() < 1 || !is_connected(g)) throw GraphError("graph is not connected");
  BasisDictionary local_dict;
  BasisDictionary& dict = options.dictionary ? *options.dictionary : local_dict;

  std::vector<LevelTransform> levels;
  Graph current = g;
  int j = 0;
  while (current.vertex_count() > 1) {
    Aggregation agg;
    if (static_cast<std::size_t>(j) < options.forced_aggregations.size()) {
      agg = options.forced_aggregations[static_cast<std::size_t>(j)];
      try {
        validate_aggregation(current, agg);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("forced aggregation for level " + std::to_string(j) + ": " + e.what());
      }
    } else {
      agg = build_aggregation(current, level_seed(seed, j));
    }
    auto bases = local_bases_for(current, agg, options.local_basis_cap, dict);
    Graph next = quotient_graph(current, agg);
    levels.emplace_back(j, std::move(agg), std::move(bases));
    current = std::move(next);
    ++j;
  }
  return TransformPlan(g.vertex_count(), seed, std::move(levels));
}

FrequencyVector forward(const TransformPlan& plan, const Signal& u) {
  check_signal(plan, u.size(), "forward");
  Eigen::VectorXd cur = u;
  Eigen::VectorXd next(u.size());
  const Eigen::Index n = plan.size();
  for (const auto& L : plan.levels()) {
    const std::int64_t channels = L.channel_count();
    const std::int64_t nj = L.size();
    const std::int64_t half = L.next_size();
    const std::int64_t rest = L.leftover();
    const std::int64_t active = channels * nj;
    const std::int64_t star_base = 2 * channels * half;
    next.segment(active, n - active) = cur.segment(active, n - active);
    for (std::int64_t c = 0; c < channels; ++c) {
      L.analyze({cur.data() + c * nj, static_cast<std::size_t>(nj)},
                {next.data() + 2 * c * half, static_cast<std::size_t>(half)},
                {next.data() + (2 * c + 1) * half, static_cast<std::size_t>(half)},
                {next.data() + star_base + (channels - 1 - c) * rest, static_cast<std::size_t>(rest)});
    }
    cur.swap(next);
  }
  return {std::move(cur), plan.checksum()};
}

Signal inverse(const TransformPlan& plan, const FrequencyVector& f) {
  if (f.plan_checksum != plan.checksum()) {
    throw ChecksumError("coefficient vector belongs to plan " + std::to_string(f.plan_checksum) +
                        ", not " + std::to_string(plan.checksum()));
  }
  check_signal(plan, f.coefficients.size(), "inverse");
  Eigen::VectorXd cur = f.coefficients;
  Eigen::VectorXd next(cur.size());
  const Eigen::Index n = plan.size();
  for (auto it = plan.levels().rbegin(); it != plan.levels().rend(); ++it) {
    const auto& L = *it;
    const std::int64_t channels = L.channel_count();
    const std::int64_t nj = L.size();
    const std::int64_t half = L.next_size();
    const std::int64_t rest = L.leftover();
    const std::int64_t active = channels * nj;
    const std::int64_t star_base = 2 * channels * half;
    next.segment(active, n - active) = cur.segment(active, n - active);
    for (std::int64_t c = 0; c < channels; ++c) {
      L.synthesize({cur.data() + 2 * c * half, static_cast<std::size_t>(half)},
                   {cur.data() + (2 * c + 1) * half, static_cast<std::size_t>(half)},
                   {cur.data() + star_base + (channels - 1 - c) * rest, static_cast<std::size_t>(rest)},
                   {next.data() + c * nj, static_cast<std::size_t>(nj)});
    }
    cur.swap(next);
  }
  return cur;
}

Eigen::MatrixXd assemble_dense_basis(const TransformPlan& plan) {
  const Eigen::Index n = plan.size();
  if (n > kDenseGuard) {
    throw std::invalid_argument("assemble_dense_basis: n = " + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(kDenseGuard));
  }
  Eigen::MatrixXd basis(n, n);
  FrequencyVector e{Eigen::VectorXd::Zero(n), plan.checksum()};
  for (Eigen::Index i = 0; i < n; ++i) {
    e.coefficients(i) = 1.0;
    basis.col(i) = inverse(plan, e);
    e.coefficients(i) = 0.0;
  }
  return basis;
}

int band_of(const TransformPlan& plan, Eigen::Index index) {
  if (index < 0 || index >= plan.size()) throw std::out_of_range("band_of: coefficient index out of range");
  return plan.band_map()[static_cast<std::size_t>(index)];
}

PlanSummary plan_summary(const TransformPlan& plan) {
  PlanSummary s;
  s.n = plan.size();
  s.depth = plan.depth();
  s.level_sizes = plan.level_sizes();
  s.tail_sizes = plan.tail_sizes();
  s.observed_max_aggregate = plan.observed_max_aggregate();
  binary::ByteCounter counter;
  detail::encode_plan_body(counter, plan);
  // magic + version + checksum around the body
  s.storage_bytes = counter.value() + 4 + 1 + 8;
  return s;
}

}  // namespace gft
