// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "chowring/fourier.hpp"
#include "chowring/graph_io.hpp"
#include "chowring/vanishing.hpp"

using namespace chowring;

namespace {

using Tuple = std::vector<CubeVertex>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  if (!o.pass) ++failures;
  std::printf("[%s] %d. %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str(),
              took.count());
  std::fflush(stdout);
}

Tuple tuple_from_code(std::uint64_t code, int d, int length) {
  Tuple t;
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  for (int k = 0; k < length; ++k) t.push_back(CubeVertex{static_cast<std::uint32_t>(code >> (k * d) & mask)});
  return t;
}

std::uint64_t code_of(const Tuple& t, int d) {
  std::uint64_t code = 0;
  for (std::size_t k = 0; k < t.size(); ++k) code |= std::uint64_t{t[k].bits} << (static_cast<int>(k) * d);
  return code;
}

// Degrees of every tuple of length d+1, each computed directly.
std::vector<std::int64_t> full_table(int d) {
  const int length = d + 1;
  const std::uint64_t count = std::uint64_t{1} << (d * length);
  MonomialDegreeCache memo(d);
  std::vector<std::int64_t> table(count);
  for (std::uint64_t code = 0; code < count; ++code) table[code] = degree_f(d, tuple_from_code(code, d, length), &memo);
  return table;
}

Tuple act(const Tuple& t, const Permutation& slots, const Permutation& tau) {
  Tuple out;
  for (int s : slots) out.push_back(permute_vertex(t[static_cast<std::size_t>(s)], tau));
  return out;
}

// Orbit of a tuple under slot and coordinate permutations, by explicit enumeration.
std::set<Tuple> orbit(const Tuple& t, int d) {
  std::set<Tuple> out;
  for (const auto& slots : all_permutations(static_cast<int>(t.size())))
    for (const auto& tau : all_permutations(d)) out.insert(act(t, slots, tau));
  return out;
}

Monomial random_monomial(std::mt19937_64& rng, int d, int degree) {
  std::uniform_int_distribution<VertexId> pick(0, (VertexId{1} << d) - 1);
  Monomial m;
  for (int k = 0; k < degree; ++k) m.multiply_vertex(pick(rng));
  return m;
}

Rational random_coefficient(std::mt19937_64& rng) {
  Rational q(std::uniform_int_distribution<int>(1, 7)(rng), std::uniform_int_distribution<int>(1, 5)(rng));
  q.canonicalize();
  return std::bernoulli_distribution(0.5)(rng) ? Rational(-q) : q;
}

std::string count_text(std::uint64_t ok, std::uint64_t total, const char* what) {
  std::ostringstream s;
  s << ok << "/" << total << " " << what;
  return s.str();
}

}  // namespace

int main() {
  std::vector<std::int64_t> table3;

  report(1, "d=2 F-degree table", [] {
    const auto table = full_table(2);
    const CubeVertex e1 = parse_bitstring("10", 2), e2 = parse_bitstring("01", 2), all = parse_bitstring("11", 2);
    std::uint64_t ok = 0;
    for (std::uint64_t code = 0; code < table.size(); ++code) {
      const Tuple t = tuple_from_code(code, 2, 3);
      const std::set<CubeVertex> members(t.begin(), t.end());
      std::int64_t expected = 0;
      if (members == std::set<CubeVertex>{all}) expected = -32;
      if (members == std::set<CubeVertex>{e1, e2, all}) expected = 16;
      ok += table[code] == expected;
    }
    return Outcome{ok == table.size(), count_text(ok, table.size(), "tuples match")};
  });

  report(2, "d=3 F-degree table", [&] {
    const std::vector<std::pair<const char*, std::int64_t>> listed{
        {"100 010 001 111", -64}, {"100 010 101 011", -64}, {"100 110 101 111", -64},
        {"100 011 011 111", 128}, {"100 111 111 111", 128}, {"110 110 101 011", 128},
        {"110 101 111 111", -128}, {"111 111 111 111", 512}};
    std::map<std::uint64_t, std::int64_t> expected;
    for (const auto& [text, value] : listed)
      for (const auto& t : orbit(parse_tuple(text, 3), 3)) expected[code_of(t, 3)] = value;
    table3 = full_table(3);
    std::uint64_t ok = 0;
    for (std::uint64_t code = 0; code < table3.size(); ++code) {
      auto it = expected.find(code);
      ok += table3[code] == (it == expected.end() ? 0 : it->second);
    }
    return Outcome{ok == table3.size(), count_text(ok, table3.size(), "tuples match")};
  });

  report(3, "F-degree formula for unit vectors", [] {
    std::uint64_t ok = 0, total = 0;
    for (int d = 1; d <= 4; ++d) {
      MonomialDegreeCache memo(d);
      std::int64_t power = 1;
      for (int k = 0; k < d; ++k) power *= -4;
      for (std::uint32_t v = 0; v < (1u << d); ++v) {
        Tuple t;
        for (int i = 0; i < d; ++i) t.push_back(CubeVertex{1u << i});
        t.push_back(CubeVertex{v});
        const std::int64_t expected = v == (1u << d) - 1 ? power : 0;
        ok += degree_f(d, t, &memo) == expected;
        ++total;
      }
    }
    return Outcome{ok == total, count_text(ok, total, "cases for d = 1..4")};
  });

  report(4, "vanishing condition", [] {
    std::ostringstream detail;
    bool pass = true;
    for (int d = 2; d <= 4; ++d) {
      DegreeCache cache(d);
      const auto r = check_vanishing(d, cache);
      pass = pass && r.verified();
      detail << "d=" << d << ": " << r.counterexamples.size() << " counterexamples over " << r.tuples_checked
             << " orbits; ";
    }
    return Outcome{pass, detail.str()};
  });

  report(5, "degree kills the relations", [] {
    std::uint64_t violations = 0, checked = 0;
    for (int d = 1; d <= 2; ++d)
      for (const auto& r : relation_generators(Ambient::cube(d), d + 1)) {
        violations += degree_cube(r) != 0;
        ++checked;
      }
    const Ambient cube = Ambient::cube(3);
    std::vector<std::vector<Cycle>> by_degree(5);
    for (int k = 2; k <= 4; ++k) by_degree[static_cast<std::size_t>(k)] = relation_generators(cube, k);
    std::mt19937_64 rng(501);
    MonomialDegreeCache memo(3);
    const std::uint64_t samples = 10000;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const int k = std::uniform_int_distribution<int>(2, 4)(rng);
      const auto& pool = by_degree[static_cast<std::size_t>(k)];
      const Cycle& r = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      const Cycle filler = Cycle::monomial(cube, random_monomial(rng, 3, 4 - k));
      violations += memo.degree(multiply(r, filler, Pruning::none)) != 0;
      ++checked;
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations in " + std::to_string(checked) +
                                        " products (exhaustive d <= 2, 10^4 random d = 3)"};
  });

  report(6, "oracle equivalence", [] {
    std::uint64_t mismatches = 0, checked = 0;
    for (int d = 1; d <= 2; ++d) {
      const DegreeOracle oracle(d);
      const Ambient cube = Ambient::cube(d);
      for (const auto& m : monomial_basis(cube, d + 1, kDefaultBasisLimit)) {
        const Cycle a = Cycle::monomial(cube, m);
        mismatches += degree_cube(a) != oracle.evaluate(a);
        ++checked;
      }
    }
    const DegreeOracle oracle(3);
    const Ambient cube = Ambient::cube(3);
    const auto basis = monomial_basis(cube, 4, kDefaultBasisLimit);
    for (const auto& m : basis) {
      const Cycle a = Cycle::monomial(cube, m);
      mismatches += degree_cube(a) != oracle.evaluate(a);
      ++checked;
    }
    std::mt19937_64 rng(601);
    for (int s = 0; s < 1000; ++s) {
      Cycle a(cube, 4);
      for (int t = 0; t < 3; ++t) a.add_term(random_monomial(rng, 3, 4), random_coefficient(rng));
      mismatches += degree_cube(a) != oracle.evaluate(a);
      ++checked;
    }
    return Outcome{mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(checked) +
                                        " cycles (full bases for d <= 3, plus 1000 random d = 3 combinations)"};
  });

  report(7, "symmetry and parity", [&] {
    std::uint64_t bad_symmetry = 0, bad_parity = 0, group_checks = 0;
    for (int d = 1; d <= 3; ++d) {
      const auto table = d == 3 && !table3.empty() ? table3 : full_table(d);
      const auto slot_perms = all_permutations(d + 1);
      const auto coord_perms = all_permutations(d);
      for (std::uint64_t code = 0; code < table.size(); ++code) {
        const Tuple t = tuple_from_code(code, d, d + 1);
        for (const auto& slots : slot_perms)
          for (const auto& tau : coord_perms) {
            bad_symmetry += table[code_of(act(t, slots, tau), d)] != table[code];
            ++group_checks;
          }
        std::uint32_t sum = 0;
        for (auto v : t) sum ^= v.bits;
        if (std::popcount(sum) % 2 == 1) bad_parity += table[code] != 0;
      }
    }
    return Outcome{bad_symmetry == 0 && bad_parity == 0,
                   std::to_string(bad_symmetry) + " symmetry failures in " + std::to_string(group_checks) +
                       " group images, " + std::to_string(bad_parity) + " parity failures (d <= 3)"};
  });

  report(8, "confluence under randomized rewriting", [] {
    std::uint64_t disagreements = 0, cycles = 0;
    std::mt19937_64 rng(801);
    for (int d = 1; d <= 3; ++d) {
      const Ambient cube = Ambient::cube(d);
      for (int s = 0; s < 1000; ++s) {
        Cycle a(cube, d + 1);
        const int terms = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int t = 0; t < terms; ++t) a.add_term(random_monomial(rng, d, d + 1), random_coefficient(rng));
        const Rational reference = degree_cube(a);
        for (int rerun = 0; rerun < 5; ++rerun) {
          NormalizeOptions options;
          options.rng = &rng;
          disagreements += degree_cube(a, options) != reference;
        }
        ++cycles;
      }
    }
    return Outcome{disagreements == 0,
                   std::to_string(disagreements) + " disagreements over " + std::to_string(cycles) + " cycles x 5 reruns"};
  });

  report(9, "subdivision", [] {
    std::mt19937_64 rng(901);
    std::uint64_t bad_counts = 0, bad_identity = 0, graphs = 0;
    for (int trial = 0; trial < 200; ++trial) {
      RawGraph raw;
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
      for (std::size_t i = 0; i < n; ++i) raw.vertices.push_back("v" + std::to_string(i));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (std::bernoulli_distribution(0.4)(rng)) raw.edges.emplace_back(i, j);
      std::shuffle(raw.edges.begin(), raw.edges.end(), rng);
      const OrderedGraph g = validate_graph(raw);
      for (int k = 1; k <= 6; ++k) {
        const OrderedGraph s = subdivide(g, k);
        bad_counts += s.vertex_count() != g.vertex_count() + static_cast<std::size_t>(k - 1) * g.edge_count();
        bad_counts += s.edge_count() != static_cast<std::size_t>(k) * g.edge_count();
      }
      const std::string text = write_graph(g);
      bad_identity += write_graph(subdivide(read_graph(text), 1)) != text;
      ++graphs;
    }
    return Outcome{bad_counts == 0 && bad_identity == 0,
                   std::to_string(bad_counts) + " count failures, " + std::to_string(bad_identity) +
                       " identity failures over " + std::to_string(graphs) + " graphs, n <= 6"};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
