#include "chowring/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace chowring {

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension)
    throw DimensionError("dimension " + std::to_string(d) + " outside [1, " +
                         std::to_string(kMaxDimension) + "]");
}

bool OrderedGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  return edge_keys_.count(edge_key(a, b)) != 0;
}

bool operator==(const OrderedGraph& a, const OrderedGraph& b) {
  return a.labels_ == b.labels_ && a.edges_ == b.edges_;
}

OrderedGraph validate_graph(RawGraph raw) {
  OrderedGraph g;
  const auto n = static_cast<std::int64_t>(raw.vertices.size());
  if (raw.vertices.size() > UINT32_MAX) throw GraphError("too many vertices");

  std::unordered_set<std::string> seen;
  for (const auto& label : raw.vertices)
    if (!seen.insert(label).second) throw GraphError("duplicate vertex label '" + label + "'");

  for (const auto& [i, j] : raw.edges) {
    const std::string where = "edge (" + std::to_string(i) + ", " + std::to_string(j) + ")";
    if (i < 0 || j < 0 || i >= n || j >= n) throw GraphError(where + ": unknown vertex index");
    if (i == j) throw GraphError(where + ": loop");
    if (i > j) throw GraphError(where + ": descends in the vertex order");
    auto lo = static_cast<std::uint32_t>(i), hi = static_cast<std::uint32_t>(j);
    if (!g.edge_keys_.insert(edge_key(lo, hi)).second) throw GraphError(where + ": duplicate edge");
    g.edges_.push_back({lo, hi});
  }
  g.labels_ = std::move(raw.vertices);
  return g;
}

OrderedGraph interval_graph() { return validate_graph({{"0", "1"}, {{0, 1}}}); }

OrderedGraph path_graph(std::size_t edges) {
  RawGraph raw;
  for (std::size_t i = 0; i <= edges; ++i) raw.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < edges; ++i)
    raw.edges.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(i + 1));
  return validate_graph(std::move(raw));
}

OrderedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("a simple cycle needs at least 3 vertices");
  RawGraph raw;
  for (std::size_t i = 0; i < n; ++i) raw.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    raw.edges.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(i + 1));
  raw.edges.emplace_back(0, static_cast<std::int64_t>(n - 1));
  return validate_graph(std::move(raw));
}

OrderedGraph subdivide(const OrderedGraph& g, int n) {
  if (n < 1) throw std::invalid_argument("subdivision factor must be positive");
  using Tuple = std::vector<std::uint32_t>;
  const auto un = static_cast<std::size_t>(n);

  // Every edge contributes the tuples (u^(n-j), v^j) for j = 0..n.
  auto path_tuple = [un](const Edge& e, std::size_t j) {
    Tuple t(un, e.low);
    std::fill(t.end() - static_cast<std::ptrdiff_t>(j), t.end(), e.high);
    return t;
  };

  std::set<Tuple> tuples;
  for (std::uint32_t w = 0; w < g.vertex_count(); ++w) tuples.insert(Tuple(un, w));
  for (const auto& e : g.edges())
    for (std::size_t j = 1; j < un; ++j) tuples.insert(path_tuple(e, j));

  std::map<Tuple, std::int64_t> index;
  RawGraph raw;
  for (const auto& t : tuples) {
    index.emplace(t, static_cast<std::int64_t>(raw.vertices.size()));
    if (std::all_of(t.begin(), t.end(), [&](auto x) { return x == t.front(); })) {
      raw.vertices.push_back(g.labels()[t.front()]);
    } else {
      std::string label;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) label += ',';
        label += g.labels()[t[k]];
      }
      raw.vertices.push_back(std::move(label));
    }
  }
  for (const auto& e : g.edges())
    for (std::size_t j = 0; j < un; ++j)
      raw.edges.emplace_back(index.at(path_tuple(e, j)), index.at(path_tuple(e, j + 1)));
  return validate_graph(std::move(raw));
}

CubeVertex make_cube_vertex(std::uint32_t bits, int d) {
  check_dimension(d);
  if (d < 32 && (bits >> d) != 0)
    throw DimensionError("cube vertex has bits above dimension " + std::to_string(d));
  return CubeVertex{bits};
}

CubeVertex parse_bitstring(std::string_view text, int d) {
  check_dimension(d);
  if (text.size() != static_cast<std::size_t>(d))
    throw DimensionError("bitstring '" + std::string(text) + "' does not have length " +
                         std::to_string(d));
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= 1u << i;
    else if (text[i] != '0')
      throw std::invalid_argument("bitstring '" + std::string(text) + "' contains '" +
                                  std::string(1, text[i]) + "'");
  }
  return CubeVertex{bits};
}

std::string to_bitstring(CubeVertex v, int d) {
  std::string s(static_cast<std::size_t>(d), '0');
  for (int i = 0; i < d; ++i)
    if (v.bits >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool is_cube_chain(std::span<const CubeVertex> vs) {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!cube_comparable(vs[a], vs[b])) return false;
  return true;
}

void for_each_cube_embedding(const OrderedGraph& g, int d,
                             const std::function<void(const CubeEmbedding&)>& fn) {
  check_dimension(d);
  const auto m = static_cast<std::uint32_t>(g.edge_count());
  if (m == 0) return;
  CubeEmbedding gamma{std::vector<std::uint32_t>(static_cast<std::size_t>(d), 0)};
  while (true) {
    fn(gamma);
    int pos = d - 1;
    while (pos >= 0 && ++gamma.edges[static_cast<std::size_t>(pos)] == m) {
      gamma.edges[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

std::vector<CubeEmbedding> cube_embeddings(const OrderedGraph& g, int d) {
  std::vector<CubeEmbedding> out;
  for_each_cube_embedding(g, d, [&](const CubeEmbedding& e) { out.push_back(e); });
  return out;
}

ProductVertex embed_vertex(const CubeEmbedding& gamma, CubeVertex v, const OrderedGraph& g) {
  const int d = gamma.dimension();
  check_dimension(d);
  if (d < 32 && (v.bits >> d) != 0)
    throw DimensionError("cube vertex does not fit embedding dimension " + std::to_string(d));
  ProductVertex p;
  p.coords.reserve(gamma.edges.size());
  for (int i = 0; i < d; ++i) {
    const Edge& e = g.edge(gamma.edges[static_cast<std::size_t>(i)]);
    p.coords.push_back((v.bits >> i & 1u) ? e.high : e.low);
  }
  return p;
}

bool preimage_in_cube(const CubeEmbedding& gamma, const ProductVertex& p, const OrderedGraph& g,
                      CubeVertex& out) {
  if (p.coords.size() != gamma.edges.size())
    throw DimensionError("product vertex and embedding differ in dimension");
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const Edge& e = g.edge(gamma.edges[i]);
    if (p.coords[i] == e.high)
      bits |= 1u << i;
    else if (p.coords[i] != e.low)
      return false;
  }
  out = CubeVertex{bits};
  return true;
}

void check_product_vertex(const OrderedGraph& g, int d, const ProductVertex& p) {
  if (p.coords.size() != static_cast<std::size_t>(d))
    throw DimensionError("product vertex has " + std::to_string(p.coords.size()) +
                         " coordinates, expected " + std::to_string(d));
  for (auto c : p.coords)
    if (c >= g.vertex_count())
      throw GraphError("product vertex coordinate " + std::to_string(c) + " out of range");
}

bool is_simplex(const OrderedGraph& g, int d, std::span<const ProductVertex> s) {
  const auto ud = static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < ud; ++i) {
    std::uint32_t first = s.empty() ? 0 : s.front().coords[i];
    std::uint32_t other = first;
    bool two = false;
    for (const auto& p : s) {
      const auto c = p.coords[i];
      if (c == first) continue;
      if (!two) {
        other = c;
        two = true;
      } else if (c != other) {
        return false;
      }
    }
    if (two && !g.has_edge(first, other)) return false;
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      bool le = true, ge = true;
      for (std::size_t i = 0; i < ud; ++i) {
        le = le && s[a].coords[i] <= s[b].coords[i];
        ge = ge && s[a].coords[i] >= s[b].coords[i];
      }
      if (!le && !ge) return false;
    }
  }
  return true;
}

}  // namespace chowring
