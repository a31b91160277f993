#include "gft/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace gft {

Graph path_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(Vertex n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph lattice_graph(Vertex width, Vertex height) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(2) * width * height);
  for (Vertex y = 0; y < height; ++y) {
    for (Vertex x = 0; x < width; ++x) {
      const Vertex v = y * width + x;
      if (x + 1 < width) edges.emplace_back(v, v + 1);
      if (y + 1 < height) edges.emplace_back(v, v + width);
    }
  }
  return Graph::from_edges(width * height, edges);
}

Graph star_graph(Vertex leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < leaves; ++i) edges.emplace_back(i, leaves);
  return Graph::from_edges(leaves + 1, edges);
}

Graph complete_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

Graph erdos_renyi_graph(Vertex n, std::int64_t edges, std::uint64_t seed) {
  const std::int64_t max_edges = std::int64_t{n} * (n - 1) / 2;
  edges = std::min(edges, max_edges);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::set<std::pair<Vertex, Vertex>> chosen;
  while (static_cast<std::int64_t>(chosen.size()) < edges) {
    Vertex a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    chosen.emplace(a, b);
  }
  std::vector<std::pair<Vertex, Vertex>> list(chosen.begin(), chosen.end());
  return Graph::from_edges(n, list);
}

Graph connected_erdos_renyi_graph(Vertex n, std::int64_t edges, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Graph g = erdos_renyi_graph(n, edges, seed + 7919 * attempt);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("connected_erdos_renyi_graph: no connected sample found");
}

Vertex lattice_width(Vertex n) {
  Vertex w = static_cast<Vertex>(std::floor(std::sqrt(static_cast<double>(n))));
  while (w > 1 && n % w != 0) --w;
  return std::max<Vertex>(w, 1);
}

SyntheticGraph make_synthetic_graph(std::string_view family, Vertex n, std::uint64_t seed) {
  SyntheticGraph s;
  auto line_coordinates = [&](Vertex count) {
    s.coordinates.resize(count, 2);
    for (Vertex i = 0; i < count; ++i) {
      s.coordinates(i, 0) = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
      s.coordinates(i, 1) = 0.0;
    }
  };
  auto grid_coordinates = [&](Vertex w, Vertex h) {
    s.coordinates.resize(std::int64_t{w} * h, 2);
    for (Vertex y = 0; y < h; ++y) {
      for (Vertex x = 0; x < w; ++x) {
        s.coordinates(y * w + x, 0) = w > 1 ? static_cast<double>(x) / (w - 1) : 0.0;
        s.coordinates(y * w + x, 1) = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
      }
    }
  };

  if (family == "path") {
    s.graph = path_graph(n);
    line_coordinates(n);
  } else if (family == "cycle") {
    // On a circle, so that every synthetic signal is periodic.
    s.graph = cycle_graph(n);
    s.coordinates.resize(n, 2);
    for (Vertex i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * i / n;
      s.coordinates(i, 0) = 0.5 + 0.5 * std::cos(t);
      s.coordinates(i, 1) = 0.5 + 0.5 * std::sin(t);
    }
  } else if (family == "lattice") {
    const Vertex w = lattice_width(n);
    s.graph = lattice_graph(w, n / w);
    grid_coordinates(w, n / w);
  } else if (family == "er") {
    const auto m = static_cast<std::int64_t>(std::ceil(n * std::log(std::max<double>(n, 2))));
    s.graph = connected_erdos_renyi_graph(n, m, seed);
    line_coordinates(n);
  } else if (family == "states") {
    // Grid of 6 x 8 "regions"; each cell also touches a diagonal neighbor
    // with probability 1/2, giving the irregular degrees of a map adjacency.
    constexpr Vertex w = 8, h = 6;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::mt19937_64 rng(seed);
    for (Vertex y = 0; y < h; ++y) {
      for (Vertex x = 0; x < w; ++x) {
        const Vertex v = y * w + x;
        if (x + 1 < w) edges.emplace_back(v, v + 1);
        if (y + 1 < h) edges.emplace_back(v, v + w);
        if (x + 1 < w && y + 1 < h && (rng() & 1u)) edges.emplace_back(v, v + w + 1);
        if (x > 0 && y + 1 < h && (rng() & 1u)) edges.emplace_back(v, v + w - 1);
      }
    }
    s.graph = Graph::from_edges(w * h, edges);
    grid_coordinates(w, h);
  } else {
    throw std::invalid_argument("unknown graph family '" + std::string(family) + "'");
  }
  return s;
}

Signal make_synthetic_signal(std::string_view kind, const SyntheticGraph& g, std::uint64_t seed) {
  const Eigen::Index n = g.graph.vertex_count();
  const auto x = g.coordinates.col(0).array();
  const auto y = g.coordinates.col(1).array();
  constexpr double pi = std::numbers::pi;
  if (kind == "constant") return Signal::Constant(n, 1.0);
  if (kind == "ramp") return (x + y).matrix();
  if (kind == "sine") return (2.0 * pi * x).sin().matrix();
  if (kind == "smooth") {
    return (0.5 * x + 0.3 * y + (pi * x).sin() * (pi * y).cos() + 0.4 * (2.0 * pi * (x + 0.5 * y)).cos()).matrix();
  }
  if (kind == "noise") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Signal u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = normal(rng);
    return u;
  }
  throw std::invalid_argument("unknown signal kind '" + std::string(kind) + "'");
}

}  // namespace gft
