#pragma once

// Cycles in Z(Gamma^d) (x) Q, the relations cutting out the combinatorial
// Chow ring, pullbacks, the proper-chain normal form on standard cubes and
// the local degree map.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "chowring/rational.hpp"
#include "chowring/simplicial.hpp"

namespace chowring {

class AmbientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation hits a configured size or step limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertex of the ambient product. For I^d this is the cube bitmask; for
/// Gamma^d it is the mixed-radix encoding of the coordinate tuple with the
/// first coordinate most significant.
using VertexId = std::uint64_t;

/// The space a cycle lives on: the standard cube I^d or a product Gamma^d.
class Ambient {
 public:
  static Ambient cube(int d);
  static Ambient product(std::shared_ptr<const OrderedGraph> g, int d);

  int dimension() const { return d_; }
  bool is_cube() const { return graph_ == nullptr; }
  /// Null for cubes.
  const std::shared_ptr<const OrderedGraph>& graph() const { return graph_; }
  std::uint64_t vertex_count() const { return vertex_count_; }

  VertexId encode(const ProductVertex& p) const;
  ProductVertex decode(VertexId v) const;
  std::uint32_t coordinate(VertexId v, int i) const;

  /// Whether the (deduplicated) vertex set spans a simplex.
  bool is_simplex(std::span<const VertexId> vs) const;

  std::string describe() const;

  friend bool operator==(const Ambient& a, const Ambient& b);

 private:
  Ambient(std::shared_ptr<const OrderedGraph> g, int d);

  std::shared_ptr<const OrderedGraph> graph_;
  int d_ = 0;
  std::uint64_t radix_ = 2;
  std::uint64_t vertex_count_ = 0;
};

struct Factor {
  VertexId vertex = 0;
  std::uint32_t multiplicity = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of vertex generators, stored as factors sorted by vertex id.
class Monomial {
 public:
  using Factors = boost::container::small_vector<Factor, 8>;

  Monomial() = default;
  static Monomial from_vertices(std::span<const VertexId> vs);

  const Factors& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  /// Number of distinct vertices.
  std::size_t size() const { return factors_.size(); }
  bool is_proper() const { return size() == degree_; }
  std::vector<VertexId> support() const;

  void multiply_vertex(VertexId v, std::uint32_t times = 1);
  /// Removes one copy of v; v must be present.
  void divide_vertex(VertexId v);

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  Factors factors_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

enum class Pruning {
  /// Drop monomials whose support is not a simplex (they lie in Rat).
  eager,
  /// Keep every monomial; used to build raw relation generators.
  none,
};

/// Homogeneous element of Z(Gamma^d) (x) Q. Zero coefficients are never
/// stored and every monomial has the cycle's degree.
class Cycle {
 public:
  using Terms = std::unordered_map<Monomial, Rational, MonomialHash>;

  Cycle(Ambient ambient, int degree);

  static Cycle vertex(const Ambient& ambient, VertexId v);
  static Cycle monomial(const Ambient& ambient, const Monomial& m, const Rational& coef = 1);
  static Cycle one(const Ambient& ambient);

  const Ambient& ambient() const { return ambient_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  /// Terms in monomial order; use for deterministic output.
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const;

  /// Adds coef * m. The monomial degree must match.
  void add_term(const Monomial& m, const Rational& coef);

  Cycle& operator+=(const Cycle& other);
  Cycle& operator-=(const Cycle& other);
  Cycle& operator*=(const Rational& q);

  friend bool operator==(const Cycle& a, const Cycle& b);

 private:
  void check_compatible(const Cycle& other) const;

  Ambient ambient_;
  int degree_ = 0;
  Terms terms_;
};

Cycle operator+(Cycle a, const Cycle& b);
Cycle operator-(Cycle a, const Cycle& b);
Cycle operator-(Cycle a);
Cycle operator*(const Rational& q, Cycle a);
/// Graded product with eager simplex pruning.
Cycle operator*(const Cycle& a, const Cycle& b);
Cycle multiply(const Cycle& a, const Cycle& b, Pruning pruning);
/// a^k, k >= 0.
Cycle power(const Cycle& a, int k);

// ---------------------------------------------------------------------------
// Relations

/// All monomials of the given degree. Throws LimitError above max_count.
std::vector<Monomial> monomial_basis(const Ambient& ambient, int degree, std::size_t max_count);

inline constexpr std::size_t kDefaultBasisLimit = 20000;

/// Spanning set of Rat(Gamma^d) in degree k: non-simplex monomials, the
/// total-fibre relations (sum of all vertices) * m, and the projection
/// relations C1 C2 * (sum over C' with pr_i(C') = pr_i(C2)) * m, for every
/// filler monomial m of complementary degree. Unpruned.
std::vector<Cycle> relation_generators(const Ambient& ambient, int k,
                                       std::size_t max_basis = kDefaultBasisLimit);

// ---------------------------------------------------------------------------
// Pullback

/// Order-preserving map of vertices sending each edge to an edge or a vertex.
class GraphMorphism {
 public:
  GraphMorphism(std::shared_ptr<const OrderedGraph> source,
                std::shared_ptr<const OrderedGraph> target,
                std::vector<std::uint32_t> vertex_map);

  static GraphMorphism identity(std::shared_ptr<const OrderedGraph> g);

  const std::shared_ptr<const OrderedGraph>& source() const { return source_; }
  const std::shared_ptr<const OrderedGraph>& target() const { return target_; }
  std::uint32_t operator()(std::uint32_t v) const { return map_.at(v); }
  const std::vector<std::uint32_t>& vertex_map() const { return map_; }

  /// this after first: first is applied before this.
  GraphMorphism after(const GraphMorphism& first) const;

 private:
  std::shared_ptr<const OrderedGraph> source_;
  std::shared_ptr<const OrderedGraph> target_;
  std::vector<std::uint32_t> map_;
};

/// Pullback along f = (f_1, ..., f_d): C -> sum of C' with f(C') = C.
Cycle pullback(std::span<const GraphMorphism> fs, const Cycle& a);

/// Restriction to the cube i_gamma: a vertex maps to its preimage or to 0.
Cycle pullback(const CubeEmbedding& gamma, const Cycle& a);

// ---------------------------------------------------------------------------
// Normal form and degree on I^d

struct NormalizeOptions {
  /// When set, rewrite tie-breaks (coordinate, sweep direction) are drawn
  /// from this generator; otherwise the choice is deterministic.
  std::mt19937_64* rng = nullptr;
  std::size_t max_steps = 50'000'000;
};

/// Rewrites a cycle on I^d into a congruent sum of proper chain monomials.
Cycle normalize_cube(const Cycle& a, const NormalizeOptions& options = {});

/// Local degree of a degree-(d+1) cycle on I^d.
Rational degree_cube(const Cycle& a, const NormalizeOptions& options = {});

/// Memoized per-monomial local degrees on I^d. Not thread-safe; give each
/// worker its own instance.
class MonomialDegreeCache {
 public:
  explicit MonomialDegreeCache(int d);

  int dimension() const { return d_; }
  Rational degree(const Monomial& m);
  Rational degree(const Cycle& a);
  std::size_t size() const { return memo_.size(); }

 private:
  int d_;
  Ambient ambient_;
  std::unordered_map<Monomial, Rational, MonomialHash> memo_;
};

/// Local degree on Gamma^d: sum of degree_cube over all cube restrictions.
Rational degree_product(const Cycle& a);

/// The cube embeddings with a nonzero local degree contribution.
std::vector<std::pair<CubeEmbedding, Rational>> degree_contributions(const Cycle& a);

// ---------------------------------------------------------------------------
// Independent linear-algebra oracle

/// Solves for the unique linear functional on the degree-(d+1) piece that
/// kills Rat(I^d), is 1 on maximal chains and 0 on proper non-chains, by
/// exact Gaussian elimination over the full monomial basis. Only feasible
/// for d <= 3.
class DegreeOracle {
 public:
  explicit DegreeOracle(int d);

  int dimension() const { return d_; }
  std::size_t basis_size() const { return basis_.size(); }
  std::size_t rank() const { return pivots_.size(); }
  Rational evaluate(const Cycle& a) const;

 private:
  using SparseRow = std::vector<std::pair<std::size_t, Rational>>;
  struct Pivot {
    SparseRow row;
    Rational rhs;
  };

  void add_constraint(SparseRow row, Rational rhs);
  void reduce(SparseRow& row, Rational& rhs) const;

  int d_;
  Ambient ambient_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::map<std::size_t, Pivot> pivots_;  // keyed by pivot column
};

inline constexpr int kOracleMaxDimension = 3;

Rational oracle_degree(const Cycle& a);

}  // namespace chowring
