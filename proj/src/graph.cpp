#include "gft/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gft/error.hpp"

namespace gft {

namespace {

void check_length(const Graph& g, const Signal& u, const char* what) {
  if (u.size() != g.vertex_count()) {
    throw std::invalid_argument(std::string(what) + ": signal length " + std::to_string(u.size()) +
                                " does not match vertex count " + std::to_string(g.vertex_count()));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                      std::string(token) + "'");
  }
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct RawEdge {
  std::int64_t a, b;
  std::size_t line;
};

Graph assemble(std::int64_t n, const std::vector<RawEdge>& raw) {
  if (n < 1) throw FormatError("graph has no vertices");
  if (n > std::numeric_limits<Vertex>::max()) throw FormatError("vertex count exceeds 32-bit range");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    if (e.a < 1 || e.a > n || e.b < 1 || e.b > n) {
      throw FormatError("line " + std::to_string(e.line) + ": vertex index out of range [1, " +
                        std::to_string(n) + "]");
    }
    if (e.a == e.b) {
      throw GraphError("line " + std::to_string(e.line) + ": self-loop at vertex " + std::to_string(e.a));
    }
    edges.emplace_back(static_cast<Vertex>(e.a - 1), static_cast<Vertex>(e.b - 1));
  }
  return Graph::from_edges(static_cast<Vertex>(n), edges);
}

Graph parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::getline(in, line);
  ++line_no;
  const std::string header_text = lower(trim(line));
  const auto header = split_ws(header_text);
  if (header.size() < 5 || header[1] != "matrix" || header[2] != "coordinate" || header[3] != "pattern") {
    throw FormatError("line 1: only '%%MatrixMarket matrix coordinate pattern' files are supported");
  }
  if (header[4] != "symmetric" && header[4] != "general") {
    throw FormatError("line 1: unsupported symmetry qualifier '" + std::string(header[4]) + "'");
  }

  std::int64_t rows = -1, cols = -1, nnz = -1;
  std::vector<RawEdge> raw;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '%') continue;
    const auto tokens = split_ws(body);
    if (rows < 0) {
      if (tokens.size() != 3) throw FormatError("line " + std::to_string(line_no) + ": expected 'rows cols nnz'");
      rows = parse_int(tokens[0], line_no);
      cols = parse_int(tokens[1], line_no);
      nnz = parse_int(tokens[2], line_no);
      if (rows != cols) throw FormatError("line " + std::to_string(line_no) + ": matrix is not square");
      if (nnz < 0) throw FormatError("line " + std::to_string(line_no) + ": negative entry count");
      raw.reserve(static_cast<std::size_t>(nnz));
      continue;
    }
    if (tokens.size() != 2) {
      throw FormatError("line " + std::to_string(line_no) + ": pattern entries take exactly two indices");
    }
    raw.push_back({parse_int(tokens[0], line_no), parse_int(tokens[1], line_no), line_no});
  }
  if (rows < 0) throw FormatError("missing size line");
  if (static_cast<std::int64_t>(raw.size()) != nnz) {
    throw FormatError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(raw.size()));
  }
  return assemble(rows, raw);
}

Graph parse_edge_list(std::string_view text) {
  std::int64_t declared = -1;
  std::int64_t max_index = 0;
  std::vector<RawEdge> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#' || body.front() == '%') {
      auto rest = trim(body.substr(1));
      constexpr std::string_view directive = "vertices:";
      if (rest.substr(0, directive.size()) == directive) {
        declared = parse_int(trim(rest.substr(directive.size())), line_no);
      }
      continue;
    }
    const auto tokens = split_ws(body);
    if (tokens.size() != 2) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'i j', got '" + std::string(body) + "'");
    }
    RawEdge e{parse_int(tokens[0], line_no), parse_int(tokens[1], line_no), line_no};
    if (e.a < 1 || e.b < 1) {
      throw FormatError("line " + std::to_string(line_no) + ": vertex indices are 1-based");
    }
    max_index = std::max({max_index, e.a, e.b});
    raw.push_back(e);
  }
  return assemble(declared >= 0 ? declared : max_index, raw);
}

}  // namespace

Graph Graph::from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a + 1));
    ++degree[a + 1];
    ++degree[b + 1];
  }
  for (Vertex v = 0; v < n; ++v) degree[v + 1] += degree[v];
  std::vector<Vertex> adj(static_cast<std::size_t>(degree[n]));
  std::vector<std::int64_t> fill(degree.begin(), degree.end() - 1);
  for (const auto& [a, b] : edges) {
    adj[fill[a]++] = b;
    adj[fill[b]++] = a;
  }

  std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> neighbors;
  neighbors.reserve(adj.size());
  for (Vertex v = 0; v < n; ++v) {
    auto first = adj.begin() + degree[v];
    auto last = adj.begin() + degree[v + 1];
    std::sort(first, last);
    last = std::unique(first, last);
    neighbors.insert(neighbors.end(), first, last);
    offsets[v + 1] = static_cast<std::int64_t>(neighbors.size());
  }
  return from_adjacency_unchecked(std::move(offsets), std::move(neighbors));
}

Graph Graph::from_adjacency(std::vector<std::int64_t> offsets, std::vector<Vertex> neighbors) {
  if (offsets.empty() || offsets.front() != 0 ||
      offsets.back() != static_cast<std::int64_t>(neighbors.size())) {
    throw std::invalid_argument("malformed adjacency offsets");
  }
  Graph g = from_adjacency_unchecked(std::move(offsets), std::move(neighbors));
  const Vertex n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    if (g.offsets_[v + 1] < g.offsets_[v]) throw std::invalid_argument("offsets not monotone");
    const auto nb = g.neighbors(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] < 0 || nb[k] >= n) throw std::out_of_range("neighbor index out of range");
      if (nb[k] == v) throw GraphError("self-loop at vertex " + std::to_string(v + 1));
      if (k > 0 && nb[k] <= nb[k - 1]) throw std::invalid_argument("neighbor list not strictly increasing");
      if (!g.has_edge(nb[k], v)) throw std::invalid_argument("adjacency is not symmetric");
    }
  }
  return g;
}

Graph Graph::from_adjacency_unchecked(std::vector<std::int64_t> offsets, std::vector<Vertex> neighbors) {
  Graph g;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  return g;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (Vertex i = 0; i < vertex_count(); ++i) {
    for (Vertex j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  const auto body = trim(text);
  if (body.substr(0, 14) == "%%MatrixMarket") return parse_matrix_market(body);
  return parse_edge_list(text);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_edge_list(const Graph& g) {
  std::string out = "# vertices: " + std::to_string(g.vertex_count()) + "\n";
  for (const auto& [i, j] : g.edges()) {
    out += std::to_string(i + 1);
    out += ' ';
    out += std::to_string(j + 1);
    out += '\n';
  }
  return out;
}

bool is_connected(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : g.neighbors(queue[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return static_cast<Vertex>(queue.size()) == n;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::unordered_map<Vertex, Vertex> local;
  local.reserve(vertices.size());
  for (std::size_t p = 0; p < vertices.size(); ++p) {
    const Vertex v = vertices[p];
    if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("induced_subgraph: vertex out of range");
    if (!local.emplace(v, static_cast<Vertex>(p)).second) {
      throw std::invalid_argument("induced_subgraph: duplicate vertex " + std::to_string(v + 1));
    }
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t p = 0; p < vertices.size(); ++p) {
    for (Vertex w : g.neighbors(vertices[p])) {
      const auto it = local.find(w);
      if (it != local.end() && static_cast<Vertex>(p) < it->second) edges.emplace_back(static_cast<Vertex>(p), it->second);
    }
  }
  return {Graph::from_edges(static_cast<Vertex>(vertices.size()), edges),
          std::vector<Vertex>(vertices.begin(), vertices.end())};
}

double laplacian_quadratic(const Graph& g, const Signal& u, const Signal& v) {
  check_length(g, u, "laplacian_quadratic");
  check_length(g, v, "laplacian_quadratic");
  double sum = 0.0;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    for (Vertex j : g.neighbors(i)) {
      if (i < j) sum += (u[i] - u[j]) * (v[i] - v[j]);
    }
  }
  return sum;
}

double smoothness_seminorm(const Graph& g, const Signal& u) {
  check_length(g, u, "smoothness_seminorm");
  double best = 0.0;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    for (Vertex j : g.neighbors(i)) {
      if (i < j) best = std::max(best, std::abs(u[i] - u[j]));
    }
  }
  return best;
}

}  // namespace gft
