#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "chowring/vanishing.hpp"

using namespace chowring;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "chowring-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// Literal reading of the condition for one tuple: any partition triggers it.
bool constrained(int d, const std::vector<CubeVertex>& t) {
  for (const auto& p : partitions(d))
    if (vanishing_hypothesis(p, t)) return true;
  return false;
}

}  // namespace

TEST_CASE("partitions") {
  const std::vector<std::size_t> bell{1, 2, 5, 15, 52, 203};
  for (int d = 1; d <= 6; ++d) {
    const auto ps = partitions(d);
    CHECK(ps.size() == bell[static_cast<std::size_t>(d - 1)]);
    std::set<std::vector<std::vector<int>>> distinct;
    for (const auto& p : ps) {
      distinct.insert(p.blocks());
      for (std::size_t b = 1; b < p.block_count(); ++b) CHECK(p.blocks()[b - 1].front() < p.blocks()[b].front());
    }
    CHECK(distinct.size() == ps.size());
  }
  CHECK(partitions(7, 7).size() == 877);
  CHECK_THROWS_AS(partitions(7), LimitError);
  CHECK(partitions(3)[0].to_string() == "{{1,2,3}}");
  CHECK(partitions(3).back().to_string() == "{{1},{2},{3}}");
}

TEST_CASE("partition validation") {
  CHECK(Partition(3, {{2}, {1, 0}}).blocks() == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK_THROWS(Partition(3, {{0, 1}}));
  CHECK_THROWS(Partition(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS(Partition(3, {{0, 1, 2}, {}}));
  CHECK_THROWS(Partition(2, {{0, 1, 2}}));
}

TEST_CASE("alpha") {
  CHECK(alpha(Partition(2, {{0}, {1}}), parse_bitstring("11", 2)) == 2);
  CHECK(alpha(Partition(2, {{0, 1}}), parse_bitstring("10", 2)) == 1);
  CHECK(alpha(Partition(3, {{0, 1}, {2}}), parse_bitstring("101", 3)) == 2);
  for (int d = 1; d <= 4; ++d) {
    const CubeVertex ones{(1u << d) - 1};
    for (const auto& p : partitions(d)) {
      CHECK(alpha(p, CubeVertex{0}) == 0);
      CHECK(alpha(p, ones) == static_cast<int>(p.block_count()));
      for (const auto& tau : all_permutations(d))
        for (std::uint32_t v = 0; v < (1u << d); ++v)
          CHECK(alpha(p.permuted(tau), permute_vertex(CubeVertex{v}, tau)) == alpha(p, CubeVertex{v}));
    }
  }
}

TEST_CASE("trivial partition only constrains tuples containing zero") {
  for (int d = 1; d <= 3; ++d) {
    const Partition whole(d, {[d] {
                            std::vector<int> all;
                            for (int i = 0; i < d; ++i) all.push_back(i);
                            return all;
                          }()});
    MonomialDegreeCache memo(d);
    for (const auto& key : canonical_tuples(d, d + 1)) {
      const bool has_zero = std::find(key.tuple.begin(), key.tuple.end(), CubeVertex{0}) != key.tuple.end();
      CHECK(vanishing_hypothesis(whole, key.tuple) == has_zero);
      if (has_zero) CHECK(degree_f(d, key.tuple, &memo) == 0);
    }
  }
}

TEST_CASE("sweeps for small d") {
  for (int d = 1; d <= 3; ++d) {
    DegreeCache cache(d);
    const auto report = check_vanishing(d, cache);
    CHECK(report.verified());
    CHECK(report.partitions_checked == partitions(d).size());
    CHECK(report.tuples_checked == canonical_tuples(d, d + 1).size());
    CHECK(report.degrees_computed == report.tuples_constrained);
    CHECK(cache.size() == report.tuples_constrained);

    const auto again = check_vanishing(d, cache);
    CHECK(again.degrees_computed == 0);
    CHECK(again.cache_hits == report.tuples_constrained);
  }
}

TEST_CASE("reduced and unreduced sweeps agree at d = 2") {
  const int d = 2;
  DegreeCache cache(d);
  const auto reduced = check_vanishing(d, cache);
  const auto direct = check_vanishing_unreduced(d);
  CHECK(direct.tuples_checked == 64);
  CHECK(reduced.verified() == direct.verified());
  CHECK(direct.verified());

  // Constrained tuples form whole orbits, and the cache holds their representatives.
  std::uint64_t covered = 0;
  for (const auto& [key, value] : cache.entries()) covered += orbit_size(key.tuple, d);
  CHECK(covered == direct.tuples_constrained);

  std::set<TupleOrbitKey> from_direct;
  for (std::uint32_t code = 0; code < 64; ++code) {
    std::vector<CubeVertex> t{CubeVertex{code & 3}, CubeVertex{code >> 2 & 3}, CubeVertex{code >> 4 & 3}};
    if (constrained(d, t)) from_direct.insert(canonical_tuple(t, d));
  }
  std::set<TupleOrbitKey> from_cache;
  for (const auto& [key, value] : cache.entries()) from_cache.insert(key);
  CHECK(from_direct == from_cache);
}

TEST_CASE("parallel sweep matches the serial one") {
  DegreeCache serial(3), parallel(3);
  const auto a = check_vanishing(3, serial);
  VanishingOptions options;
  options.jobs = 3;
  std::uint64_t last = 0;
  options.progress = [&](std::uint64_t done, std::uint64_t total) {
    CHECK(done <= total);
    last = done;
  };
  const auto b = check_vanishing(3, parallel, options);
  CHECK(serial == parallel);
  CHECK(a.tuples_constrained == b.tuples_constrained);
  CHECK(last == b.tuples_checked);
}

TEST_CASE("wrong cached degrees surface as counterexamples") {
  DegreeCache cache(2);
  check_vanishing(2, cache);
  DegreeCache doctored(2);
  for (const auto& [key, value] : cache.entries()) doctored.insert(key, value + 1);
  const auto report = check_vanishing(2, doctored);
  CHECK_FALSE(report.verified());
  CHECK(format_report(report).find("VIOLATED") != std::string::npos);
  CHECK(format_report_records(report).find("verified=false") != std::string::npos);
}

TEST_CASE("degree cache") {
  DegreeCache cache(2);
  const TupleOrbitKey key = canonical_tuple(parse_tuple("11 11 11", 2), 2);
  cache.insert(key, -32);
  cache.insert(key, -32);
  CHECK(cache.size() == 1);
  CHECK(*cache.find(key) == -32);
  CHECK_THROWS_AS(cache.insert(key, 5), std::logic_error);
  DegreeCache other(2);
  other.insert(key, 7);
  CHECK_THROWS_AS(cache.merge(other), std::logic_error);
  CHECK_THROWS_AS(cache.merge(DegreeCache(3)), DimensionError);
}

TEST_CASE("cache files") {
  DegreeCache cache(3);
  check_vanishing(3, cache);
  const auto path = scratch("d3.cache");
  cache_store(cache, path);
  CHECK(cache_load(path, 3, cache.size()) == cache);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "chowcache v1 d=3");
  CHECK(serialize_cache(deserialize_cache(serialize_cache(cache), 3)) == serialize_cache(cache));

  CHECK_THROWS_AS(cache_load(path, 2), CacheError);
  CHECK(deserialize_cache("", 3).size() == 0);
  CHECK(deserialize_cache("chowcache v1 d=3\n", 3).size() == 0);
  CHECK_THROWS_AS(deserialize_cache("chowcache v2 d=3\n", 3), CacheError);
  CHECK_THROWS_AS(deserialize_cache("hello\n", 3), CacheError);
  CHECK_THROWS_AS(deserialize_cache("chowcache v1 d=2\n11 11 11 -32\n", 2), CacheError);
  CHECK_THROWS_AS(deserialize_cache("chowcache v1 d=2\n11 11 11\tx\n", 2), CacheError);
  // not a representative
  CHECK_THROWS_AS(deserialize_cache("chowcache v1 d=2\n11 01 10\t16\n", 2), CacheError);
  CHECK(deserialize_cache("chowcache v1 d=2\n10 01 11\t16\n", 2).size() == 1);
  CHECK_THROWS_AS(deserialize_cache("chowcache v1 d=2\n10 01 11\t17\n", 2), CacheError);
  CHECK_THROWS_AS(cache_load(scratch("missing.cache"), 2), CacheError);
}
