// Normal-form rewriting on I^d.
//
// A monomial whose support is a chain C_1 < ... < C_l with some repeated
// factor is rewritten with one of two relations:
//
//   l = 1:  C_v^2 = -sum_{w != v} C_w C_v                    (total fibre)
//   l >= 2: C_m C_j^2 = -sum_{w != C_j, w_i = (C_j)_i} C_m C_j C_w
//           for a coordinate i where C_m and C_j differ      (projection)
//
// Terms whose support stops being a chain are dropped on the spot.
//
// Ascending sweep: j is the lowest repeated position and m = j+1 (or j-1
// when j is the top). Every produced monomial either gains a new vertex or
// moves the excess multiplicity strictly below j, so the pair
// (degree - size, sum over positions of excess * position) decreases. The
// descending sweep is the mirror image. Both orders are well-founded, which
// bounds the rewriting; max_steps is a guard only.

#include <algorithm>
#include <bit>

#include "chowring/chow.hpp"

namespace chowring {

namespace {

using Terms = Cycle::Terms;
using Chain = boost::container::small_vector<Factor, 8>;

bool as_chain(const Monomial& m, Chain& chain) {
  chain.assign(m.factors().begin(), m.factors().end());
  std::sort(chain.begin(), chain.end(), [](const Factor& a, const Factor& b) {
    return std::popcount(a.vertex) < std::popcount(b.vertex);
  });
  for (std::size_t k = 1; k < chain.size(); ++k)
    if ((chain[k - 1].vertex & ~chain[k].vertex) != 0) return false;
  return true;
}

bool comparable_to_all(VertexId w, const Chain& chain) {
  for (const auto& f : chain)
    if ((w & ~f.vertex) != 0 && (f.vertex & ~w) != 0) return false;
  return true;
}

void emit(Terms& pending, const Monomial& m, VertexId remove, VertexId add, const Rational& coef) {
  Monomial n = m;
  n.divide_vertex(remove);
  n.multiply_vertex(add);
  auto [it, inserted] = pending.try_emplace(std::move(n), -coef);
  if (!inserted) {
    it->second -= coef;
    if (it->second == 0) pending.erase(it);
  }
}

void rewrite(const Monomial& m, const Chain& chain, const Rational& coef, int d, bool ascending,
             std::mt19937_64* rng, Terms& pending) {
  const VertexId vertex_count = VertexId{1} << d;
  const std::size_t l = chain.size();

  if (l == 1) {
    const VertexId v = chain.front().vertex;
    for (VertexId w = 0; w < vertex_count; ++w)
      if (w != v && ((w & ~v) == 0 || (v & ~w) == 0)) emit(pending, m, v, w, coef);
    return;
  }

  std::size_t j = 0, neighbour = 0;
  if (ascending) {
    while (chain[j].multiplicity < 2) ++j;
    neighbour = j + 1 < l ? j + 1 : j - 1;
  } else {
    j = l - 1;
    while (chain[j].multiplicity < 2) --j;
    neighbour = j > 0 ? j - 1 : j + 1;
  }
  const VertexId repeated = chain[j].vertex;
  const VertexId diff = repeated ^ chain[neighbour].vertex;

  int axis = std::countr_zero(diff);
  if (rng) {
    const int choices = std::popcount(diff);
    int pick = static_cast<int>(std::uniform_int_distribution<int>(0, choices - 1)(*rng));
    VertexId rest = diff;
    while (pick-- > 0) rest &= rest - 1;
    axis = std::countr_zero(rest);
  }
  const VertexId side = repeated >> axis & 1u;

  for (VertexId w = 0; w < vertex_count; ++w) {
    if (w == repeated || (w >> axis & 1u) != side) continue;
    if (!comparable_to_all(w, chain)) continue;
    emit(pending, m, repeated, w, coef);
  }
}

void require_cube(const Cycle& a, const char* what) {
  if (!a.ambient().is_cube()) throw AmbientError(std::string(what) + " needs a cycle on a standard cube");
}

void require_top_degree(const Cycle& a) {
  const int d = a.ambient().dimension();
  if (a.degree() != d + 1 && !a.is_zero())
    throw DegreeError("local degree needs degree " + std::to_string(d + 1) + ", got " +
                      std::to_string(a.degree()));
}

}  // namespace

Cycle normalize_cube(const Cycle& a, const NormalizeOptions& options) {
  require_cube(a, "normalize_cube");
  const int d = a.ambient().dimension();
  const bool ascending = options.rng ? std::bernoulli_distribution(0.5)(*options.rng) : true;

  Cycle out(a.ambient(), a.degree());
  Terms pending = a.terms();
  std::size_t steps = 0;
  Chain chain;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Monomial& m = node.key();
    const Rational& coef = node.mapped();
    if (!as_chain(m, chain)) continue;
    if (m.is_proper()) {
      out.add_term(m, coef);
      continue;
    }
    if (++steps > options.max_steps)
      throw LimitError("normal form not reached within " + std::to_string(options.max_steps) + " rewrite steps");
    rewrite(m, chain, coef, d, ascending, options.rng, pending);
  }
  return out;
}

Rational degree_cube(const Cycle& a, const NormalizeOptions& options) {
  require_cube(a, "degree_cube");
  require_top_degree(a);
  const Cycle normal = normalize_cube(a, options);
  Rational total = 0;
  for (const auto& [m, q] : normal.terms()) total += q;
  return total;
}

MonomialDegreeCache::MonomialDegreeCache(int d) : d_(d), ambient_(Ambient::cube(d)) {}

Rational MonomialDegreeCache::degree(const Monomial& m) {
  if (static_cast<int>(m.degree()) != d_ + 1)
    throw DegreeError("local degree needs degree " + std::to_string(d_ + 1));
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  Rational value = degree_cube(Cycle::monomial(ambient_, m));
  memo_.emplace(m, value);
  return value;
}

Rational MonomialDegreeCache::degree(const Cycle& a) {
  if (!(a.ambient() == ambient_)) throw AmbientError("cycle is not on I^" + std::to_string(d_));
  require_top_degree(a);
  Rational total = 0;
  for (const auto& [m, q] : a.terms()) total += q * degree(m);
  return total;
}

std::vector<std::pair<CubeEmbedding, Rational>> degree_contributions(const Cycle& a) {
  if (a.ambient().is_cube()) throw AmbientError("degree_product needs a cycle on Gamma^d");
  require_top_degree(a);
  std::vector<std::pair<CubeEmbedding, Rational>> out;
  for_each_cube_embedding(*a.ambient().graph(), a.ambient().dimension(), [&](const CubeEmbedding& gamma) {
    const Cycle local = pullback(gamma, a);
    if (local.is_zero()) return;
    Rational value = degree_cube(local);
    if (value != 0) out.emplace_back(gamma, std::move(value));
  });
  return out;
}

Rational degree_product(const Cycle& a) {
  Rational total = 0;
  for (const auto& [gamma, q] : degree_contributions(a)) total += q;
  return total;
}

}  // namespace chowring
