#include "chowring/fourier.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace chowring {

namespace {

int character(CubeVertex v, VertexId w) { return (std::popcount(v.bits & w) & 1) ? -1 : 1; }

void check_vertex(CubeVertex v, int d) { make_cube_vertex(v.bits, d); }

Monomial single(VertexId v) { return Monomial::from_vertices(std::span(&v, 1)); }

}  // namespace

FourierCycle::FourierCycle(int d) : d_(d) { check_dimension(d); }

FourierCycle FourierCycle::basis(int d, CubeVertex v) {
  FourierCycle f(d);
  f.add_term(v, 1);
  return f;
}

Rational FourierCycle::coefficient(CubeVertex v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FourierCycle::add_term(CubeVertex v, const Rational& coef) {
  check_vertex(v, d_);
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(v, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

FourierCycle& FourierCycle::operator+=(const FourierCycle& other) {
  if (other.d_ != d_) throw AmbientError("F-basis cycles of different dimension");
  for (const auto& [v, q] : other.terms_) add_term(v, q);
  return *this;
}

FourierCycle& FourierCycle::operator*=(const Rational& q) {
  if (q == 0) terms_.clear();
  for (auto& [v, c] : terms_) c *= q;
  return *this;
}

FourierCycle operator+(FourierCycle a, const FourierCycle& b) { return a += b; }
FourierCycle operator*(const Rational& q, FourierCycle a) { return a *= q; }

Cycle f_to_c(const FourierCycle& x) {
  const Ambient cube = Ambient::cube(x.dimension());
  Cycle out(cube, 1);
  for (const auto& [v, q] : x.terms())
    for (VertexId w = 0; w < cube.vertex_count(); ++w) out.add_term(single(w), character(v, w) * q);
  return out;
}

FourierCycle c_to_f(const Cycle& x) {
  if (!x.ambient().is_cube()) throw AmbientError("c_to_f needs a cycle on a standard cube");
  if (x.degree() != 1 && !x.is_zero()) throw DegreeError("c_to_f needs a degree-one cycle");
  const int d = x.ambient().dimension();
  const Rational scale(1, std::uint64_t{1} << d);
  FourierCycle out(d);
  for (const auto& [m, q] : x.terms()) {
    const auto v = static_cast<std::uint32_t>(m.factors().front().vertex);
    for (std::uint32_t w = 0; w < (1u << d); ++w) out.add_term(CubeVertex{w}, character(CubeVertex{v}, w) * q * scale);
  }
  return out;
}

Cycle fourier_product(int d, std::span<const CubeVertex> vs) {
  const Ambient cube = Ambient::cube(d);
  Cycle acc = Cycle::one(cube);
  for (auto v : vs) {
    acc = acc * f_to_c(FourierCycle::basis(d, v));
    if (acc.is_zero()) break;
  }
  return acc;
}

std::int64_t degree_f(int d, std::span<const CubeVertex> tuple, MonomialDegreeCache* cache) {
  check_dimension(d);
  if (tuple.size() != static_cast<std::size_t>(d) + 1)
    throw DegreeError("degree_f needs " + std::to_string(d + 1) + " vectors, got " + std::to_string(tuple.size()));
  for (auto v : tuple) check_vertex(v, d);
  if (cache && cache->dimension() != d) throw DimensionError("monomial degree cache has the wrong dimension");

  const Cycle product = fourier_product(d, tuple);
  if (product.is_zero()) return 0;
  const Rational value = cache ? cache->degree(product) : degree_cube(product);
  if (!is_integer(value))
    throw std::logic_error("non-integer local degree " + to_string(value) + " for " + format_tuple(tuple, d));
  return to_int64(value);
}

// ---------------------------------------------------------------------------

void check_permutation(std::span<const int> perm, int d) {
  if (perm.size() != static_cast<std::size_t>(d))
    throw DimensionError("permutation of " + std::to_string(perm.size()) + " coordinates, expected " +
                         std::to_string(d));
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= d || seen[static_cast<std::size_t>(p)]) throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
}

std::vector<Permutation> all_permutations(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

CubeVertex permute_vertex(CubeVertex v, std::span<const int> perm) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (v.bits >> i & 1u) bits |= 1u << perm[i];
  return CubeVertex{bits};
}

namespace {

template <typename VertexMap>
Cycle map_vertices(const Cycle& a, VertexMap&& f) {
  if (!a.ambient().is_cube()) throw AmbientError("symmetries act on cycles over a standard cube");
  Cycle out(a.ambient(), a.degree());
  for (const auto& [m, q] : a.terms()) {
    Monomial image;
    for (const auto& fac : m.factors()) image.multiply_vertex(f(fac.vertex), fac.multiplicity);
    out.add_term(image, q);
  }
  return out;
}

}  // namespace

Cycle psi(const Cycle& a) {
  const VertexId all = a.ambient().vertex_count() - 1;
  return map_vertices(a, [all](VertexId v) { return v ^ all; });
}

FourierCycle psi(const FourierCycle& a) {
  FourierCycle out(a.dimension());
  for (const auto& [v, q] : a.terms()) out.add_term(v, (std::popcount(v.bits) & 1) ? Rational(-q) : q);
  return out;
}

Cycle sigma_act(std::span<const int> perm, const Cycle& a) {
  check_permutation(perm, a.ambient().dimension());
  return map_vertices(a, [perm](VertexId v) {
    return VertexId{permute_vertex(CubeVertex{static_cast<std::uint32_t>(v)}, perm).bits};
  });
}

FourierCycle sigma_act(std::span<const int> perm, const FourierCycle& a) {
  check_permutation(perm, a.dimension());
  FourierCycle out(a.dimension());
  for (const auto& [v, q] : a.terms()) out.add_term(permute_vertex(v, perm), q);
  return out;
}

// ---------------------------------------------------------------------------

std::uint32_t vertex_rank(CubeVertex v, int d) {
  // Reading coordinate 0 as the most significant digit, "1 before 0" is
  // descending numeric order.
  std::uint32_t reversed = 0;
  for (int i = 0; i < d; ++i)
    if (v.bits >> i & 1u) reversed |= 1u << (d - 1 - i);
  const std::uint32_t span = 1u << d;
  return static_cast<std::uint32_t>(std::popcount(v.bits)) * span + (span - 1 - reversed);
}

bool vertex_precedes(CubeVertex a, CubeVertex b, int d) { return vertex_rank(a, d) < vertex_rank(b, d); }

bool operator<(const TupleOrbitKey& a, const TupleOrbitKey& b) {
  return std::lexicographical_compare(a.tuple.begin(), a.tuple.end(), b.tuple.begin(), b.tuple.end(),
                                      [d = a.d](CubeVertex x, CubeVertex y) { return vertex_precedes(x, y, d); });
}

namespace {

// Precomputed ranks and coordinate permutations for one dimension.
struct OrbitTables {
  int d;
  std::vector<std::uint32_t> rank;              // by vertex bits
  std::vector<std::uint32_t> by_rank;           // vertex bits by rank
  std::vector<std::vector<std::uint32_t>> act;  // act[t][rank] = rank of permuted vertex

  explicit OrbitTables(int dim) : d(dim) {
    const std::uint32_t n = 1u << d;
    rank.resize(n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
    for (std::uint32_t v = 0; v < n; ++v) order.emplace_back(vertex_rank(CubeVertex{v}, d), v);
    std::sort(order.begin(), order.end());
    by_rank.resize(n);
    for (std::uint32_t r = 0; r < n; ++r) {
      by_rank[r] = order[r].second;
      rank[order[r].second] = r;
    }
    for (const auto& p : all_permutations(d)) {
      std::vector<std::uint32_t> row(n);
      for (std::uint32_t r = 0; r < n; ++r) row[r] = rank[permute_vertex(CubeVertex{by_rank[r]}, p).bits];
      act.push_back(std::move(row));
    }
  }

  // Canonical form of a tuple given as ranks.
  std::vector<std::uint32_t> canonical(std::span<const std::uint32_t> ranks) const {
    std::vector<std::uint32_t> best, image(ranks.size());
    for (const auto& row : act) {
      for (std::size_t k = 0; k < ranks.size(); ++k) image[k] = row[ranks[k]];
      std::sort(image.begin(), image.end());
      if (best.empty() || image < best) best = image;
    }
    return best;
  }

  TupleOrbitKey key(std::span<const std::uint32_t> ranks) const {
    TupleOrbitKey k{d, {}};
    for (auto r : ranks) k.tuple.push_back(CubeVertex{by_rank[r]});
    return k;
  }

  std::vector<std::uint32_t> ranks_of(std::span<const CubeVertex> tuple) const {
    std::vector<std::uint32_t> out;
    for (auto v : tuple) {
      check_vertex(v, d);
      out.push_back(rank[v.bits]);
    }
    return out;
  }
};

void check_orbit_dimension(int d) {
  check_dimension(d);
  if (d > 8) throw LimitError("orbit canonicalization enumerates d! permutations; d <= 8 supported");
}

}  // namespace

TupleOrbitKey canonical_tuple(std::span<const CubeVertex> tuple, int d) {
  check_orbit_dimension(d);
  const OrbitTables tables(d);
  return tables.key(tables.canonical(tables.ranks_of(tuple)));
}

std::uint64_t orbit_size(std::span<const CubeVertex> tuple, int d) {
  check_orbit_dimension(d);
  const OrbitTables tables(d);
  const auto ranks = tables.ranks_of(tuple);
  std::set<std::vector<std::uint32_t>> multisets;
  std::vector<std::uint32_t> image(ranks.size());
  for (const auto& row : tables.act) {
    for (std::size_t k = 0; k < ranks.size(); ++k) image[k] = row[ranks[k]];
    std::sort(image.begin(), image.end());
    multisets.insert(image);
  }
  // Distinct arrangements of one multiset: n! / prod(multiplicity!).
  std::uint64_t arrangements = 1;
  std::vector<std::uint32_t> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t run = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    run = (k > 0 && sorted[k] == sorted[k - 1]) ? run + 1 : 1;
    arrangements = arrangements * (k + 1) / run;
  }
  return arrangements * multisets.size();
}

std::vector<TupleOrbitKey> canonical_tuples(int d, int length) {
  check_orbit_dimension(d);
  if (length < 1) throw std::invalid_argument("tuple length must be positive");
  const OrbitTables tables(d);
  const std::uint32_t n = 1u << d;
  std::vector<TupleOrbitKey> out;
  std::vector<std::uint32_t> seq(static_cast<std::size_t>(length), 0);
  while (true) {
    if (tables.canonical(seq) == seq) out.push_back(tables.key(seq));
    int pos = length - 1;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) break;
    const std::uint32_t next = seq[static_cast<std::size_t>(pos)] + 1;
    for (auto k = static_cast<std::size_t>(pos); k < seq.size(); ++k) seq[k] = next;
  }
  return out;
}

std::string format_tuple(std::span<const CubeVertex> tuple, int d) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ' ';
    out += to_bitstring(tuple[i], d);
  }
  return out;
}

std::vector<CubeVertex> parse_tuple(std::string_view text, int d) {
  std::istringstream in{std::string(text)};
  std::vector<CubeVertex> out;
  std::string token;
  while (in >> token) out.push_back(parse_bitstring(token, d));
  return out;
}

}  // namespace chowring
