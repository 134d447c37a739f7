#pragma once

// Exhaustive verification of the vanishing condition: for every partition P
// of the coordinates and every tuple (v_0, ..., v_d) with
// sum_i alpha(P, v_i) < d + |P|, the degree of prod_i F_{v_i} is zero.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <vector>

#include "chowring/fourier.hpp"

namespace chowring {

inline constexpr int kDefaultPartitionCap = 6;

/// Set partition of the coordinates {0, ..., d-1}; blocks are sorted and
/// ordered by their smallest element. Displayed 1-based.
class Partition {
 public:
  /// Validates disjointness, coverage and non-emptiness, then canonicalizes.
  Partition(int d, std::vector<std::vector<int>> blocks);

  int dimension() const { return d_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  /// Coordinate bitmask of each block.
  const std::vector<std::uint32_t>& masks() const { return masks_; }

  /// Image under a coordinate permutation.
  Partition permuted(std::span<const int> perm) const;

  std::string to_string() const;
  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  int d_;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::uint32_t> masks_;
};

/// All Bell(d) partitions, in restricted-growth-string order.
std::vector<Partition> partitions(int d, int cap = kDefaultPartitionCap);

/// Number of blocks containing a coordinate where v is 1.
int alpha(const Partition& p, CubeVertex v);

/// True iff sum_i alpha(P, v_i) < d + |P|.
bool vanishing_hypothesis(const Partition& p, std::span<const CubeVertex> tuple);

/// Degrees of canonical tuples for one dimension.
class DegreeCache {
 public:
  explicit DegreeCache(int d);

  int dimension() const { return d_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<TupleOrbitKey, std::int64_t>& entries() const { return entries_; }

  const std::int64_t* find(const TupleOrbitKey& key) const;
  /// Throws std::logic_error if key is present with a different value.
  void insert(const TupleOrbitKey& key, std::int64_t degree);
  /// Inserts every entry of other, asserting agreement on shared keys.
  void merge(const DegreeCache& other);

  friend bool operator==(const DegreeCache&, const DegreeCache&) = default;

 private:
  int d_;
  std::map<TupleOrbitKey, std::int64_t> entries_;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text format: header "chowcache v1 d=<d>", then one line per entry with
/// space-separated bitstrings, a tab, and the integer degree.
std::string serialize_cache(const DegreeCache& cache);
/// Parses and spot-checks `spot_checks` random entries against degree_f.
DegreeCache deserialize_cache(std::string_view text, int expected_d, std::size_t spot_checks = 8,
                              std::uint64_t seed = 0x5eed);

DegreeCache cache_load(const std::filesystem::path& path, int expected_d, std::size_t spot_checks = 8);
void cache_store(const DegreeCache& cache, const std::filesystem::path& path);

struct Counterexample {
  Partition partition;
  std::vector<CubeVertex> tuple;
  std::int64_t degree;
};

struct VanishingReport {
  int d = 0;
  std::uint64_t partitions_checked = 0;
  /// Canonical tuples visited.
  std::uint64_t tuples_checked = 0;
  /// Canonical tuples for which some partition triggers the hypothesis.
  std::uint64_t tuples_constrained = 0;
  std::uint64_t degrees_computed = 0;
  std::uint64_t cache_hits = 0;
  std::vector<Counterexample> counterexamples;
  std::chrono::duration<double> elapsed{};

  bool verified() const { return counterexamples.empty(); }
};

struct VanishingOptions {
  int jobs = 1;
  int cap = kDefaultPartitionCap;
  /// Called with (completed, total) canonical tuples, from the calling thread.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Orbit-reduced sweep over canonical tuples. Missing degrees are computed
/// and added to the cache.
VanishingReport check_vanishing(int d, DegreeCache& cache, const VanishingOptions& options = {});

/// Unreduced sweep over every partition and every tuple in (F_2^d)^(d+1).
/// Feasible only for very small d; used to cross-check the reduced sweep.
VanishingReport check_vanishing_unreduced(int d);

std::string format_report(const VanishingReport& report);
/// One "key=value" record per line.
std::string format_report_records(const VanishingReport& report);

}  // namespace chowring
