#include "gft/aggregation.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <stdexcept>

#include "gft/error.hpp"

namespace gft {

namespace {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t range) {
  // Rejection keeps the accepted interval a multiple of `range`.
  const std::uint64_t threshold = (std::uint64_t{0} - range) % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

Aggregation attach_singletons(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                              const std::vector<Vertex>& singletons) {
  const Vertex n = g.vertex_count();
  const auto count = static_cast<Vertex>(pairs.size());
  std::vector<Vertex> owner(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> size(static_cast<std::size_t>(count), 2);
  for (Vertex a = 0; a < count; ++a) {
    owner[pairs[a].first] = a;
    owner[pairs[a].second] = a;
  }

  std::vector<std::pair<Vertex, Vertex>> attached;  // (aggregate, vertex) in attach order
  attached.reserve(singletons.size());
  for (Vertex v : singletons) {
    Vertex best = -1;
    for (Vertex w : g.neighbors(v)) {
      const Vertex b = owner[w];
      if (b < 0) continue;
      if (best < 0 || size[b] < size[best] || (size[b] == size[best] && b < best)) best = b;
    }
    if (best < 0) {
      throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                  " has no adjacent aggregate to join; the pairs are not a maximal matching");
    }
    owner[v] = best;
    ++size[best];
    attached.emplace_back(best, v);
  }

  std::vector<std::int64_t> offsets(static_cast<std::size_t>(count) + 1, 0);
  for (Vertex a = 0; a < count; ++a) offsets[a + 1] = offsets[a] + size[a];
  std::vector<Vertex> members(static_cast<std::size_t>(n));
  std::vector<std::int64_t> fill(offsets.begin(), offsets.end() - 1);
  for (Vertex a = 0; a < count; ++a) {
    members[fill[a]++] = pairs[a].first;
    members[fill[a]++] = pairs[a].second;
  }
  for (const auto& [a, v] : attached) members[fill[a]++] = v;
  return Aggregation::from_flat(n, std::move(offsets), std::move(members));
}

Aggregation single_vertex_aggregation() { return Aggregation::from_flat(1, {0, 1}, {0}); }

void require_connected(const Graph& g) {
  if (g.vertex_count() < 1) throw GraphError("graph has no vertices");
  if (!is_connected(g)) throw GraphError("graph is not connected");
}

}  // namespace

Aggregation Aggregation::from_aggregates(Vertex n, const std::vector<std::vector<Vertex>>& aggregates) {
  std::vector<std::int64_t> offsets{0};
  std::vector<Vertex> members;
  members.reserve(static_cast<std::size_t>(n));
  for (const auto& a : aggregates) {
    members.insert(members.end(), a.begin(), a.end());
    offsets.push_back(static_cast<std::int64_t>(members.size()));
  }
  return from_flat(n, std::move(offsets), std::move(members));
}

Aggregation Aggregation::from_flat(Vertex n, std::vector<std::int64_t> offsets, std::vector<Vertex> members) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != static_cast<std::int64_t>(members.size())) {
    throw std::invalid_argument("malformed aggregate offsets");
  }
  if (static_cast<std::int64_t>(members.size()) != n) {
    throw std::invalid_argument("aggregates cover " + std::to_string(members.size()) + " vertices, expected " +
                                std::to_string(n));
  }
  Aggregation agg;
  agg.owner_.assign(static_cast<std::size_t>(n), -1);
  agg.position_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t a = 0; a + 1 < offsets.size(); ++a) {
    if (offsets[a + 1] <= offsets[a]) throw std::invalid_argument("empty aggregate");
    for (std::int64_t k = offsets[a]; k < offsets[a + 1]; ++k) {
      const Vertex v = members[k];
      if (v < 0 || v >= n) throw std::invalid_argument("aggregate member out of range");
      if (agg.owner_[v] >= 0) throw std::invalid_argument("vertex " + std::to_string(v + 1) + " in two aggregates");
      agg.owner_[v] = static_cast<Vertex>(a);
      agg.position_[v] = static_cast<Vertex>(k - offsets[a]);
    }
  }
  agg.offsets_ = std::move(offsets);
  agg.members_ = std::move(members);
  return agg;
}

std::vector<std::vector<Vertex>> Aggregation::to_nested() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Vertex a = 0; a < size(); ++a) {
    const auto span = aggregate(a);
    out.emplace_back(span.begin(), span.end());
  }
  return out;
}

std::vector<Vertex> seeded_permutation(Vertex n, std::uint64_t seed) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (Vertex i = n - 1; i > 0; --i) {
    const auto j = static_cast<Vertex>(bounded_draw(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

Aggregation build_aggregation_with_order(const Graph& g, std::span<const Vertex> visit_order) {
  require_connected(g);
  const Vertex n = g.vertex_count();
  if (n == 1) return single_vertex_aggregation();
  if (static_cast<Vertex>(visit_order.size()) != n) throw std::invalid_argument("visit order is not a permutation");

  std::vector<Vertex> degree(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(static_cast<std::size_t>(n / 2));
  std::vector<Vertex> singletons;

  for (Vertex i : visit_order) {
    if (i < 0 || i >= n || visited[i]) throw std::invalid_argument("visit order is not a permutation");
    visited[i] = 1;
    if (removed[i]) continue;
    Vertex partner = -1;
    for (Vertex w : g.neighbors(i)) {
      // Neighbor lists are increasing, so strict '<' keeps the smallest index on ties.
      if (!removed[w] && (partner < 0 || degree[w] < degree[partner])) partner = w;
    }
    if (partner < 0) {
      removed[i] = 1;
      singletons.push_back(i);
      continue;
    }
    removed[i] = removed[partner] = 1;
    pairs.emplace_back(i, partner);
    for (Vertex k : g.neighbors(i)) --degree[k];
    for (Vertex k : g.neighbors(partner)) --degree[k];
  }

  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return std::min(x.first, x.second) < std::min(y.first, y.second);
  });
  std::sort(singletons.begin(), singletons.end());
  return attach_singletons(g, pairs, singletons);
}

Aggregation build_aggregation(const Graph& g, std::uint64_t seed,
                              std::optional<std::span<const std::pair<Vertex, Vertex>>> forced_pairs) {
  if (!forced_pairs) {
    require_connected(g);
    return build_aggregation_with_order(g, seeded_permutation(g.vertex_count(), seed));
  }
  require_connected(g);
  const Vertex n = g.vertex_count();
  if (n == 1) {
    if (!forced_pairs->empty()) throw std::invalid_argument("forced pairs given for a single-vertex graph");
    return single_vertex_aggregation();
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Vertex, Vertex>> pairs(forced_pairs->begin(), forced_pairs->end());
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("forced pair vertex out of range");
    if (!g.has_edge(a, b)) {
      throw std::invalid_argument("forced pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                                  ") is not an edge");
    }
    if (used[a] || used[b]) throw std::invalid_argument("forced pairs overlap");
    used[a] = used[b] = 1;
  }
  std::vector<Vertex> singletons;
  for (Vertex v = 0; v < n; ++v) {
    if (!used[v]) singletons.push_back(v);
  }
  return attach_singletons(g, pairs, singletons);
}

Graph quotient_graph(const Graph& g, const Aggregation& agg) {
  const Vertex count = agg.size();
  std::vector<Vertex> last_seen(static_cast<std::size_t>(count), -1);
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(count) + 1, 0);
  std::vector<Vertex> neighbors;
  neighbors.reserve(static_cast<std::size_t>(g.edge_count()));
  for (Vertex a = 0; a < count; ++a) {
    const auto begin = neighbors.size();
    for (Vertex v : agg.aggregate(a)) {
      for (Vertex w : g.neighbors(v)) {
        const Vertex b = agg.aggregate_of(w);
        if (b != a && last_seen[b] != a) {
          last_seen[b] = a;
          neighbors.push_back(b);
        }
      }
    }
    std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(begin), neighbors.end());
    offsets[a + 1] = static_cast<std::int64_t>(neighbors.size());
  }
  return Graph::from_adjacency_unchecked(std::move(offsets), std::move(neighbors));
}

void validate_aggregation(const Graph& g, const Aggregation& agg) {
  const Vertex n = g.vertex_count();
  if (agg.vertex_count() != n) throw std::invalid_argument("aggregation does not match the graph size");
  std::vector<Vertex> queue;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex a = 0; a < agg.size(); ++a) {
    const auto members = agg.aggregate(a);
    if (members.size() < 2 && n > 1) {
      throw std::invalid_argument("aggregate " + std::to_string(a + 1) + " has fewer than two vertices");
    }
    queue.assign(1, members.front());
    seen[members.front()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex w : g.neighbors(queue[head])) {
        if (agg.aggregate_of(w) == a && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != members.size()) {
      throw std::invalid_argument("aggregate " + std::to_string(a + 1) + " is not connected");
    }
  }
}

AggregationStats aggregation_stats(const Aggregation& agg) {
  AggregationStats stats;
  Vertex pairs = 0;
  for (Vertex a = 0; a < agg.size(); ++a) {
    const Vertex m = agg.aggregate_size(a);
    stats.max_size = std::max(stats.max_size, m);
    ++stats.histogram[m];
    if (m == 2) ++pairs;
  }
  stats.pair_fraction = agg.size() > 0 ? static_cast<double>(pairs) / agg.size() : 0.0;
  return stats;
}

std::string format_aggregation(const Aggregation& agg) {
  std::string out;
  for (Vertex a = 0; a < agg.size(); ++a) {
    bool first = true;
    for (Vertex v : agg.aggregate(a)) {
      if (!first) out += ' ';
      out += std::to_string(v + 1);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Aggregation parse_aggregation(std::string_view text, Vertex n) {
  std::vector<std::int64_t> offsets{0};
  std::vector<Vertex> members;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::size_t i = 0;
    bool any = false;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size() || line[i] == '#') break;
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      if (ec != std::errc{} || value < 1 || value > n) {
        throw FormatError("aggregation line " + std::to_string(line_no) + ": bad vertex index");
      }
      members.push_back(static_cast<Vertex>(value - 1));
      any = true;
      i = static_cast<std::size_t>(ptr - line.data());
    }
    if (any) offsets.push_back(static_cast<std::int64_t>(members.size()));
  }
  try {
    return Aggregation::from_flat(n, std::move(offsets), std::move(members));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("aggregation: ") + e.what());
  }
}

}  // namespace gft
