#pragma once

// The character basis F_v = sum_w (-1)^<v,w> C_w of the degree-one piece of
// the Chow ring of I^d, the symmetries of I^d, and orbit canonicalization of
// vector tuples.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chowring/chow.hpp"

namespace chowring {

/// Degree-one element of C(I^d) (x) Q in the F basis.
class FourierCycle {
 public:
  explicit FourierCycle(int d);
  static FourierCycle basis(int d, CubeVertex v);

  int dimension() const { return d_; }
  const std::map<CubeVertex, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(CubeVertex v) const;

  void add_term(CubeVertex v, const Rational& coef);
  FourierCycle& operator+=(const FourierCycle& other);
  FourierCycle& operator*=(const Rational& q);

  friend bool operator==(const FourierCycle&, const FourierCycle&) = default;

 private:
  int d_;
  std::map<CubeVertex, Rational> terms_;
};

FourierCycle operator+(FourierCycle a, const FourierCycle& b);
FourierCycle operator*(const Rational& q, FourierCycle a);

Cycle f_to_c(const FourierCycle& x);
/// Inverse transform; x must have degree one: C_v = 2^-d sum_w (-1)^<v,w> F_w.
FourierCycle c_to_f(const Cycle& x);

/// prod_i F_{v_i} expanded in the C basis with eager simplex pruning.
Cycle fourier_product(int d, std::span<const CubeVertex> vs);

/// Local degree of F_{v_0} ... F_{v_d}. Throws std::logic_error if the value
/// is not an integer. The cache, when given, must be for dimension d.
std::int64_t degree_f(int d, std::span<const CubeVertex> tuple, MonomialDegreeCache* cache = nullptr);

// ---------------------------------------------------------------------------
// Symmetries

/// A permutation of coordinates: perm[i] is the image of coordinate i.
using Permutation = std::vector<int>;

void check_permutation(std::span<const int> perm, int d);
/// All permutations of {0, ..., n-1} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

CubeVertex permute_vertex(CubeVertex v, std::span<const int> perm);

/// Translation by (1,...,1): C_v -> C_{v+1}.
Cycle psi(const Cycle& a);
FourierCycle psi(const FourierCycle& a);

/// Coordinate permutation C_v -> C_{perm(v)}.
Cycle sigma_act(std::span<const int> perm, const Cycle& a);
FourierCycle sigma_act(std::span<const int> perm, const FourierCycle& a);

// ---------------------------------------------------------------------------
// Orbits of tuples under S_{n} x S_d

/// Vectors are ordered by the number of ones, then lexicographically with
/// 1 before 0 (for d = 3: 000, 100, 010, 001, 110, 101, 011, 111).
/// Returns the position of v in that order.
std::uint32_t vertex_rank(CubeVertex v, int d);
bool vertex_precedes(CubeVertex a, CubeVertex b, int d);

/// Smallest image of a tuple under permuting its entries and permuting the
/// coordinates of all entries simultaneously.
struct TupleOrbitKey {
  int d = 0;
  std::vector<CubeVertex> tuple;
  friend bool operator==(const TupleOrbitKey&, const TupleOrbitKey&) = default;
  friend bool operator<(const TupleOrbitKey& a, const TupleOrbitKey& b);
};

TupleOrbitKey canonical_tuple(std::span<const CubeVertex> tuple, int d);
/// Number of distinct tuples in the orbit.
std::uint64_t orbit_size(std::span<const CubeVertex> tuple, int d);
/// Every canonical tuple of the given length, ascending.
std::vector<TupleOrbitKey> canonical_tuples(int d, int length);

std::string format_tuple(std::span<const CubeVertex> tuple, int d);
/// Whitespace-separated bitstrings.
std::vector<CubeVertex> parse_tuple(std::string_view text, int d);

}  // namespace chowring
