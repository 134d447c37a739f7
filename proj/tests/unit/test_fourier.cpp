#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <random>
#include <set>

#include "chowring/fourier.hpp"
#include "chowring/literal.hpp"

using namespace chowring;

namespace {

CubeVertex bits(const char* text) { return parse_bitstring(text, static_cast<int>(std::strlen(text))); }

std::vector<CubeVertex> tuple_of(const std::string& text, int d) { return parse_tuple(text, d); }

// Ordering of single vectors spelled out on bitstrings: fewer ones first,
// then the string with '1' sorting before '0'.
std::pair<int, std::string> order_key(CubeVertex v, int d) {
  std::string s = to_bitstring(v, d);
  for (auto& c : s) c = c == '1' ? '0' : '1';
  return {std::popcount(v.bits), s};
}

std::vector<std::pair<int, std::string>> tuple_key(const std::vector<CubeVertex>& t, int d) {
  std::vector<std::pair<int, std::string>> out;
  for (auto v : t) out.push_back(order_key(v, d));
  return out;
}

std::vector<CubeVertex> apply(const std::vector<CubeVertex>& t, const std::vector<int>& slots,
                              const Permutation& tau) {
  std::vector<CubeVertex> out;
  for (int s : slots) out.push_back(permute_vertex(t[static_cast<std::size_t>(s)], tau));
  return out;
}

// Minimum over every (slot permutation, coordinate permutation).
std::vector<CubeVertex> brute_canonical(const std::vector<CubeVertex>& t, int d) {
  std::vector<CubeVertex> best;
  bool first = true;
  for (const auto& slots : all_permutations(static_cast<int>(t.size())))
    for (const auto& tau : all_permutations(d)) {
      auto image = apply(t, slots, tau);
      if (first || tuple_key(image, d) < tuple_key(best, d)) best = image;
      first = false;
    }
  return best;
}

std::size_t brute_orbit_size(const std::vector<CubeVertex>& t, int d) {
  std::set<std::vector<CubeVertex>> images;
  for (const auto& slots : all_permutations(static_cast<int>(t.size())))
    for (const auto& tau : all_permutations(d)) images.insert(apply(t, slots, tau));
  return images.size();
}

std::vector<CubeVertex> random_tuple(std::mt19937_64& rng, int d, std::size_t length) {
  std::uniform_int_distribution<std::uint32_t> pick(0, (1u << d) - 1);
  std::vector<CubeVertex> t;
  for (std::size_t k = 0; k < length; ++k) t.push_back(CubeVertex{pick(rng)});
  return t;
}

CubeVertex plus(CubeVertex a, CubeVertex b) { return CubeVertex{a.bits ^ b.bits}; }
CubeVertex unit(int i) { return CubeVertex{1u << i}; }

Cycle f(int d, CubeVertex v) { return f_to_c(FourierCycle::basis(d, v)); }

Cycle random_filler(std::mt19937_64& rng, int d, int degree) {
  const Ambient cube = Ambient::cube(d);
  Cycle m = Cycle::one(cube);
  std::uniform_int_distribution<VertexId> pick(0, cube.vertex_count() - 1);
  std::bernoulli_distribution use_f(0.5);
  for (int k = 0; k < degree; ++k) {
    const CubeVertex v{static_cast<std::uint32_t>(pick(rng))};
    m = m * (use_f(rng) ? f(d, v) : Cycle::vertex(cube, v.bits));
  }
  return m;
}

}  // namespace

TEST_CASE("transforms") {
  CHECK(f(1, bits("0")) == parse_cube_cycle(split_tokens("0 + 1"), 1));
  CHECK(f(1, bits("1")) == parse_cube_cycle(split_tokens("0 - 1"), 1));
  for (int d = 1; d <= 4; ++d)
    for (std::uint32_t v = 0; v < (1u << d); ++v) {
      const auto fv = FourierCycle::basis(d, CubeVertex{v});
      CHECK(f_to_c(fv).term_count() == (1u << d));
      CHECK(c_to_f(f_to_c(fv)) == fv);
      const Cycle cv = Cycle::vertex(Ambient::cube(d), v);
      CHECK(f_to_c(c_to_f(cv)) == cv);
    }
  CHECK_THROWS_AS(c_to_f(parse_cube_cycle(split_tokens("00 11"), 2)), DegreeError);
}

TEST_CASE("psi") {
  const auto c = [](const char* t) { return parse_cube_cycle(split_tokens(t), 2); };
  CHECK(psi(c("00")) == c("11"));
  CHECK(psi(psi(c("3*10 + 01"))) == c("3*10 + 01"));
  const auto f11 = FourierCycle::basis(2, bits("11")), f10 = FourierCycle::basis(2, bits("10"));
  CHECK(psi(f11) == f11);
  CHECK(psi(f10) == Rational(-1) * f10);
  for (int d = 1; d <= 3; ++d)
    for (std::uint32_t v = 0; v < (1u << d); ++v) {
      const auto fv = FourierCycle::basis(d, CubeVertex{v});
      CHECK(f_to_c(psi(fv)) == psi(f_to_c(fv)));
    }
}

TEST_CASE("sigma") {
  const auto c = [](const char* t) { return parse_cube_cycle(split_tokens(t), 2); };
  const Permutation id{0, 1}, swap{1, 0};
  CHECK(sigma_act(id, c("10 + 2*01")) == c("10 + 2*01"));
  CHECK(sigma_act(swap, c("10")) == c("01"));
  const Permutation cycle{1, 2, 0};
  CHECK(sigma_act(cycle, FourierCycle::basis(3, bits("100"))) == FourierCycle::basis(3, bits("010")));
  for (const auto& tau : all_permutations(3))
    for (std::uint32_t v = 0; v < 8; ++v) {
      const auto fv = FourierCycle::basis(3, CubeVertex{v});
      CHECK(f_to_c(sigma_act(tau, fv)) == sigma_act(tau, f_to_c(fv)));
    }
  CHECK_THROWS(sigma_act(Permutation{0, 0}, c("10")));
}

TEST_CASE("symmetries preserve the local degree") {
  std::mt19937_64 rng(21);
  for (int d = 1; d <= 3; ++d) {
    const Ambient cube = Ambient::cube(d);
    for (int trial = 0; trial < 30; ++trial) {
      Cycle a(cube, d + 1);
      for (int t = 0; t < 3; ++t) {
        Monomial m;
        for (int k = 0; k <= d; ++k) m.multiply_vertex(std::uniform_int_distribution<VertexId>(0, (1u << d) - 1)(rng));
        a.add_term(m, t + 1);
      }
      const Rational value = degree_cube(a);
      CHECK(degree_cube(psi(a)) == value);
      for (const auto& tau : all_permutations(d)) CHECK(degree_cube(sigma_act(tau, a)) == value);
    }
  }
}

TEST_CASE("vector order") {
  std::vector<std::string> names;
  std::vector<CubeVertex> all;
  for (std::uint32_t v = 0; v < 8; ++v) all.push_back(CubeVertex{v});
  std::sort(all.begin(), all.end(), [](CubeVertex a, CubeVertex b) { return vertex_precedes(a, b, 3); });
  for (auto v : all) names.push_back(to_bitstring(v, 3));
  CHECK(names == std::vector<std::string>{"000", "100", "010", "001", "110", "101", "011", "111"});
  for (int d = 1; d <= 5; ++d)
    for (std::uint32_t a = 0; a < (1u << d); ++a)
      for (std::uint32_t b = 0; b < (1u << d); ++b)
        CHECK(vertex_precedes(CubeVertex{a}, CubeVertex{b}, d) ==
              (order_key(CubeVertex{a}, d) < order_key(CubeVertex{b}, d)));
}

TEST_CASE("canonical_tuple examples") {
  CHECK(canonical_tuple(tuple_of("111 100 010 001", 3), 3).tuple == tuple_of("100 010 001 111", 3));
  CHECK(canonical_tuple(tuple_of("010 100 101 011", 3), 3).tuple == tuple_of("100 010 101 011", 3));
  const auto key = canonical_tuple(tuple_of("100 010 101 011", 3), 3);
  CHECK(canonical_tuple(key.tuple, 3) == key);
}

TEST_CASE("canonical_tuple and orbit_size match brute force") {
  std::mt19937_64 rng(22);
  for (int d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 150; ++trial) {
      const auto t = random_tuple(rng, d, static_cast<std::size_t>(d) + 1);
      const auto key = canonical_tuple(t, d);
      CHECK(key.tuple == brute_canonical(t, d));
      CHECK(canonical_tuple(key.tuple, d) == key);
      CHECK(orbit_size(t, d) == brute_orbit_size(t, d));
    }
}

TEST_CASE("canonical_tuples partition the tuple space") {
  for (int d = 1; d <= 3; ++d) {
    const auto length = static_cast<std::size_t>(d) + 1;
    const auto reps = canonical_tuples(d, static_cast<int>(length));
    std::uint64_t covered = 0;
    for (const auto& key : reps) {
      CHECK(canonical_tuple(key.tuple, d) == key);
      covered += orbit_size(key.tuple, d);
    }
    CHECK(covered == std::uint64_t{1} << (d * static_cast<int>(length)));
    CHECK(std::is_sorted(reps.begin(), reps.end()));
  }
  CHECK(canonical_tuples(2, 3).size() == 13);
}

TEST_CASE("degree_f examples") {
  CHECK(degree_f(2, tuple_of("10 01 11", 2)) == 16);
  CHECK(degree_f(2, tuple_of("11 11 11", 2)) == -32);
  CHECK(degree_f(3, tuple_of("111 111 111 111", 3)) == 512);
  CHECK_THROWS(degree_f(2, tuple_of("10 01", 2)));
  std::mt19937_64 rng(23);
  for (int d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 40; ++trial) {
      auto t = random_tuple(rng, d, static_cast<std::size_t>(d) + 1);
      t[static_cast<std::size_t>(trial) % t.size()] = CubeVertex{0};
      CHECK(degree_f(d, t) == 0);
    }
}

TEST_CASE("degree_f agrees with expanding the product by hand") {
  std::mt19937_64 rng(24);
  for (int d = 1; d <= 3; ++d) {
    MonomialDegreeCache memo(d);
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = random_tuple(rng, d, static_cast<std::size_t>(d) + 1);
      Cycle product = Cycle::one(Ambient::cube(d));
      for (auto v : t) product = multiply(product, f(d, v), Pruning::none);
      CHECK(Rational(degree_f(d, t)) == degree_cube(product));
      CHECK(degree_f(d, t, &memo) == degree_f(d, t));
    }
  }
}

TEST_CASE("F relations hold after pairing with fillers") {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> coin(0, 1 << 20);
  for (int d = 1; d <= 3; ++d) {
    const auto vec = [&] { return CubeVertex{static_cast<std::uint32_t>(coin(rng)) & ((1u << d) - 1)}; };
    for (int trial = 0; trial < 25; ++trial) {
      const CubeVertex v = vec(), w = vec();
      const CubeVertex e = unit(coin(rng) % d), e2 = unit(coin(rng) % d);

      const Cycle m1 = random_filler(rng, d, d - 1);
      CHECK(degree_cube(f(d, CubeVertex{0}) * f(d, v) * m1) == 0);

      const Cycle lhs = (f(d, plus(plus(v, e), e2)) - f(d, v)) * (f(d, plus(plus(w, e), e2)) - f(d, w));
      const Cycle rhs = (f(d, plus(v, e)) - f(d, plus(v, e2))) * (f(d, plus(w, e)) - f(d, plus(w, e2)));
      CHECK(degree_cube((lhs - rhs) * m1) == 0);

      if (d >= 2) {
        const Cycle m2 = random_filler(rng, d, d - 2);
        const Cycle third = f(d, e) * (f(d, v) + f(d, plus(v, e))) * (f(d, w) - f(d, plus(w, e)));
        CHECK(degree_cube(third * m2) == 0);
      }
    }
  }
}

TEST_CASE("shift identity on I^3") {
  MonomialDegreeCache memo(3);
  for (int i = 0; i < 3; ++i) {
    const CubeVertex e = unit(i);
    for (std::uint32_t u = 0; u < 8; ++u)
      for (std::uint32_t v = 0; v < 8; ++v)
        for (std::uint32_t w = 0; w < 8; ++w) {
          const std::vector<CubeVertex> left{e, CubeVertex{u}, CubeVertex{v}, CubeVertex{w}};
          const std::vector<CubeVertex> right{e, plus(CubeVertex{u}, e), plus(CubeVertex{v}, e), CubeVertex{w}};
          CHECK(degree_f(3, left, &memo) == degree_f(3, right, &memo));
        }
  }
}

TEST_CASE("tuple text") {
  const auto t = tuple_of("100 010 101 011", 3);
  CHECK(format_tuple(t, 3) == "100 010 101 011");
  CHECK_THROWS(parse_tuple("100 01", 3));
}
