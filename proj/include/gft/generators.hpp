#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "gft/graph.hpp"

namespace gft {

Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);
/// width x height grid, vertex index y * width + x.
Graph lattice_graph(Vertex width, Vertex height);
Graph star_graph(Vertex leaves);  // center is the last vertex
Graph complete_graph(Vertex n);
/// G(n, m): m distinct edges drawn uniformly (m clamped to n(n-1)/2);
/// may be disconnected.
Graph erdos_renyi_graph(Vertex n, std::int64_t edges, std::uint64_t seed);
/// G(n, m) redrawn with derived seeds until connected.
Graph connected_erdos_renyi_graph(Vertex n, std::int64_t edges, std::uint64_t seed);

/// A graph plus planar coordinates in [0, 1]^2 used to synthesize signals.
struct SyntheticGraph {
  Graph graph;
  Eigen::MatrixX2d coordinates;
};

/// Families: "path", "cycle" (vertices on a circle), "lattice" (near-square
/// grid with about n vertices), "er" (connected G(n, n log n)), "states"
/// (6 x 8 grid with seeded diagonal adjacencies, n ignored). Throws std::invalid_argument for
/// an unknown family.
SyntheticGraph make_synthetic_graph(std::string_view family, Vertex n, std::uint64_t seed);

/// Signal kinds: "constant", "ramp" (x + y), "sine" (one low-frequency
/// period along x), "smooth" (linear ramp plus a few low-frequency
/// sinusoids), "noise" (iid standard normal).
Signal make_synthetic_signal(std::string_view kind, const SyntheticGraph& g, std::uint64_t seed);

/// Width of the near-square lattice used for n vertices (largest divisor
/// of n not above sqrt(n)).
Vertex lattice_width(Vertex n);

}  // namespace gft
