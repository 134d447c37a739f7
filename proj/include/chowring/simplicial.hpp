#pragma once

// Ordered graphs, their d-fold products and the covering of a product by
// standard cubes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace chowring {

/// Hard cap on the product dimension. Cube vertices are bitmasks and 2^d of
/// them must be cheap to enumerate.
inline constexpr int kMaxDimension = 20;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws DimensionError unless 1 <= d <= kMaxDimension.
void check_dimension(int d);

struct Edge {
  std::uint32_t low = 0;
  std::uint32_t high = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unvalidated graph input, as read from a file or built by hand.
struct RawGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

/// Finite simple graph whose vertex order is the list position. Every edge
/// ascends in that order. Instances only come out of validate_graph.
class OrderedGraph {
 public:
  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  /// Accepts the endpoints in either order.
  bool has_edge(std::uint32_t a, std::uint32_t b) const;

  friend bool operator==(const OrderedGraph&, const OrderedGraph&);

 private:
  friend OrderedGraph validate_graph(RawGraph raw);
  OrderedGraph() = default;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

OrderedGraph validate_graph(RawGraph raw);

/// The standard 1-simplex: two vertices "0" < "1" joined by one edge.
OrderedGraph interval_graph();
/// Path v0 - v1 - ... - v_edges.
OrderedGraph path_graph(std::size_t edges);
/// Cycle on n >= 3 vertices: edges (i, i+1) and (0, n-1).
OrderedGraph cycle_graph(std::size_t n);

/// Edgewise n-fold subdivision. Vertex w becomes the tuple (w,...,w); the
/// j-th interior point of an edge u<v becomes (u,...,u,v,...,v) with j
/// trailing copies of v. The new vertex order is the lexicographic order of
/// these tuples. Interior vertices are labelled by the comma-joined tuple.
OrderedGraph subdivide(const OrderedGraph& g, int n);

/// Vertex of the standard cube I^d: bit i holds coordinate i (0-based).
struct CubeVertex {
  std::uint32_t bits = 0;
  friend auto operator<=>(const CubeVertex&, const CubeVertex&) = default;
};

/// Throws DimensionError if bits above position d are set.
CubeVertex make_cube_vertex(std::uint32_t bits, int d);

/// "101" is the vector (1,0,1): the first character is coordinate 0.
CubeVertex parse_bitstring(std::string_view text, int d);
std::string to_bitstring(CubeVertex v, int d);

/// Product order on F_2^d.
inline bool cube_leq(CubeVertex a, CubeVertex b) { return (a.bits & ~b.bits) == 0; }
inline bool cube_comparable(CubeVertex a, CubeVertex b) { return cube_leq(a, b) || cube_leq(b, a); }
/// True iff the set is totally ordered (duplicates allowed).
bool is_cube_chain(std::span<const CubeVertex> vs);

struct ProductVertex {
  std::vector<std::uint32_t> coords;
  friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

/// d-tuple of edge indices; edge i spans cube axis i (low endpoint at bit 0).
struct CubeEmbedding {
  std::vector<std::uint32_t> edges;
  int dimension() const { return static_cast<int>(edges.size()); }
  friend bool operator==(const CubeEmbedding&, const CubeEmbedding&) = default;
};

/// All |E|^d edge tuples in lexicographic order.
std::vector<CubeEmbedding> cube_embeddings(const OrderedGraph& g, int d);
void for_each_cube_embedding(const OrderedGraph& g, int d,
                             const std::function<void(const CubeEmbedding&)>& fn);

ProductVertex embed_vertex(const CubeEmbedding& gamma, CubeVertex v, const OrderedGraph& g);

/// Inverse of embed_vertex; false if p lies outside the image of gamma.
bool preimage_in_cube(const CubeEmbedding& gamma, const ProductVertex& p, const OrderedGraph& g,
                      CubeVertex& out);

/// A vertex set of Gamma^d is a simplex iff every coordinate projection is a
/// vertex or the two endpoints of an edge, and the set is a chain under the
/// coordinatewise order.
bool is_simplex(const OrderedGraph& g, int d, std::span<const ProductVertex> s);

void check_product_vertex(const OrderedGraph& g, int d, const ProductVertex& p);

}  // namespace chowring
