#include "chowring/vanishing.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace chowring {

Partition::Partition(int d, std::vector<std::vector<int>> blocks) : d_(d) {
  check_dimension(d);
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(block.begin(), block.end());
    for (int x : block) {
      if (x < 0 || x >= d) throw std::invalid_argument("partition element outside the coordinates");
      if (seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("partition blocks overlap");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("partition does not cover every coordinate");
  std::sort(blocks.begin(), blocks.end());
  blocks_ = std::move(blocks);
  for (const auto& block : blocks_) {
    std::uint32_t mask = 0;
    for (int x : block) mask |= 1u << x;
    masks_.push_back(mask);
  }
}

Partition Partition::permuted(std::span<const int> perm) const {
  check_permutation(perm, d_);
  std::vector<std::vector<int>> blocks;
  for (const auto& block : blocks_) {
    std::vector<int> image;
    for (int x : block) image.push_back(perm[static_cast<std::size_t>(x)]);
    blocks.push_back(std::move(image));
  }
  return Partition(d_, std::move(blocks));
}

std::string Partition::to_string() const {
  std::string out = "{";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += ",";
    out += "{";
    for (std::size_t k = 0; k < blocks_[b].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(blocks_[b][k] + 1);
    }
    out += "}";
  }
  return out + "}";
}

std::vector<Partition> partitions(int d, int cap) {
  check_dimension(d);
  if (d > cap) throw LimitError("partition enumeration is capped at d = " + std::to_string(cap));
  // Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
  std::vector<int> a(static_cast<std::size_t>(d), 0);
  std::vector<Partition> out;
  while (true) {
    const int blocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> bs(static_cast<std::size_t>(blocks));
    for (int i = 0; i < d; ++i) bs[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i);
    out.emplace_back(d, std::move(bs));

    int pos = d - 1;
    for (; pos > 0; --pos) {
      const int prefix_max = *std::max_element(a.begin(), a.begin() + pos);
      if (a[static_cast<std::size_t>(pos)] <= prefix_max) break;
    }
    if (pos <= 0) break;
    ++a[static_cast<std::size_t>(pos)];
    std::fill(a.begin() + pos + 1, a.end(), 0);
  }
  return out;
}

int alpha(const Partition& p, CubeVertex v) {
  int count = 0;
  for (auto mask : p.masks())
    if (mask & v.bits) ++count;
  return count;
}

bool vanishing_hypothesis(const Partition& p, std::span<const CubeVertex> tuple) {
  int sum = 0;
  for (auto v : tuple) sum += alpha(p, v);
  return sum < p.dimension() + static_cast<int>(p.block_count());
}

// ---------------------------------------------------------------------------

DegreeCache::DegreeCache(int d) : d_(d) { check_dimension(d); }

const std::int64_t* DegreeCache::find(const TupleOrbitKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void DegreeCache::insert(const TupleOrbitKey& key, std::int64_t degree) {
  if (key.d != d_) throw DimensionError("cache key of the wrong dimension");
  auto [it, inserted] = entries_.emplace(key, degree);
  if (!inserted && it->second != degree)
    throw std::logic_error("conflicting degrees for " + format_tuple(key.tuple, d_) + ": " +
                           std::to_string(it->second) + " vs " + std::to_string(degree));
}

void DegreeCache::merge(const DegreeCache& other) {
  if (other.d_ != d_) throw DimensionError("cannot merge caches of different dimension");
  for (const auto& [key, value] : other.entries_) insert(key, value);
}

std::string serialize_cache(const DegreeCache& cache) {
  std::string out = "chowcache v1 d=" + std::to_string(cache.dimension()) + "\n";
  for (const auto& [key, value] : cache.entries())
    out += format_tuple(key.tuple, cache.dimension()) + "\t" + std::to_string(value) + "\n";
  return out;
}

DegreeCache deserialize_cache(std::string_view text, int expected_d, std::size_t spot_checks, std::uint64_t seed) {
  DegreeCache cache(expected_d);
  if (text.empty()) return cache;

  std::istringstream in{std::string(text)};
  std::string line;
  std::getline(in, line);
  const std::string prefix = "chowcache v1 d=";
  if (line.rfind("chowcache ", 0) != 0) throw CacheError("not a degree cache file");
  if (line.rfind(prefix, 0) != 0) throw CacheError("unsupported cache version: " + line);
  int d = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(line.substr(prefix.size()), &used);
    if (used != line.size() - prefix.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw CacheError("malformed cache header: " + line);
  }
  if (d != expected_d)
    throw CacheError("cache is for d=" + std::to_string(d) + ", expected d=" + std::to_string(expected_d));

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw CacheError("cache line " + std::to_string(lineno) + " has no tab");
    TupleOrbitKey key;
    std::int64_t value = 0;
    try {
      key.d = d;
      key.tuple = parse_tuple(line.substr(0, tab), d);
      std::size_t used = 0;
      value = std::stoll(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception& e) {
      throw CacheError("cache line " + std::to_string(lineno) + ": " + e.what());
    }
    if (key.tuple.size() != static_cast<std::size_t>(d) + 1)
      throw CacheError("cache line " + std::to_string(lineno) + " has the wrong tuple length");
    if (!(canonical_tuple(key.tuple, d) == key))
      throw CacheError("cache line " + std::to_string(lineno) + " is not an orbit representative");
    try {
      cache.insert(key, value);
    } catch (const std::logic_error& e) {
      throw CacheError(e.what());
    }
  }

  std::vector<const std::pair<const TupleOrbitKey, std::int64_t>*> all;
  for (const auto& entry : cache.entries()) all.push_back(&entry);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > spot_checks) all.resize(spot_checks);
  MonomialDegreeCache memo(d);
  for (const auto* entry : all) {
    const std::int64_t actual = degree_f(d, entry->first.tuple, &memo);
    if (actual != entry->second)
      throw CacheError("spot check failed for " + format_tuple(entry->first.tuple, d) + ": stored " +
                       std::to_string(entry->second) + ", recomputed " + std::to_string(actual));
  }
  return cache;
}

DegreeCache cache_load(const std::filesystem::path& path, int expected_d, std::size_t spot_checks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open cache file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_cache(buf.str(), expected_d, spot_checks);
}

void cache_store(const DegreeCache& cache, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot write cache file " + path.string());
  out << serialize_cache(cache);
  if (!out) throw CacheError("failed writing cache file " + path.string());
}

// ---------------------------------------------------------------------------

namespace {

struct Shard {
  explicit Shard(int d) : fresh(d) {}
  DegreeCache fresh;
  std::vector<Counterexample> counterexamples;
  std::uint64_t constrained = 0;
  std::uint64_t computed = 0;
  std::uint64_t hits = 0;
};

void sort_counterexamples(std::vector<Counterexample>& cs, int d) {
  std::sort(cs.begin(), cs.end(), [d](const Counterexample& a, const Counterexample& b) {
    const TupleOrbitKey ka{d, a.tuple}, kb{d, b.tuple};
    if (ka < kb) return true;
    if (kb < ka) return false;
    return a.partition.blocks() < b.partition.blocks();
  });
}

}  // namespace

VanishingReport check_vanishing(int d, DegreeCache& cache, const VanishingOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (cache.dimension() != d) throw DimensionError("cache dimension differs from the sweep dimension");
  const auto parts = partitions(d, options.cap);
  const auto tuples = canonical_tuples(d, d + 1);
  const std::uint64_t total = tuples.size();

  const int jobs = std::max(1, options.jobs);
  std::vector<Shard> shards;
  for (int j = 0; j < jobs; ++j) shards.emplace_back(d);

  constexpr std::size_t kBatch = 16;
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&](Shard& shard) {
    try {
      MonomialDegreeCache memo(d);
      while (true) {
        const std::size_t begin = next.fetch_add(kBatch);
        if (begin >= tuples.size()) return;
        const std::size_t end = std::min(tuples.size(), begin + kBatch);
        for (std::size_t i = begin; i < end; ++i) {
          const auto& key = tuples[i];
          std::vector<const Partition*> triggered;
          for (const auto& p : parts)
            if (vanishing_hypothesis(p, key.tuple)) triggered.push_back(&p);
          if (!triggered.empty()) {
            ++shard.constrained;
            std::int64_t degree = 0;
            if (const auto* known = cache.find(key)) {
              degree = *known;
              ++shard.hits;
            } else {
              degree = degree_f(d, key.tuple, &memo);
              shard.fresh.insert(key, degree);
              ++shard.computed;
            }
            if (degree != 0)
              for (const auto* p : triggered) shard.counterexamples.push_back({*p, key.tuple, degree});
          }
          done.fetch_add(1, std::memory_order_relaxed);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(tuples.size());
    }
  };

  {
    std::vector<std::jthread> threads;
    for (auto& shard : shards) threads.emplace_back(worker, std::ref(shard));
    if (options.progress) {
      auto last = std::chrono::steady_clock::now();
      while (done.load() < total && !failure) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
        if (std::chrono::steady_clock::now() - last < std::chrono::milliseconds(250)) continue;
        last = std::chrono::steady_clock::now();
        if (done.load() < total) options.progress(done.load(), total);
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  VanishingReport report;
  report.d = d;
  report.partitions_checked = parts.size();
  report.tuples_checked = total;
  for (auto& shard : shards) {
    cache.merge(shard.fresh);
    report.tuples_constrained += shard.constrained;
    report.degrees_computed += shard.computed;
    report.cache_hits += shard.hits;
    for (auto& c : shard.counterexamples) report.counterexamples.push_back(std::move(c));
  }
  sort_counterexamples(report.counterexamples, d);
  if (options.progress) options.progress(total, total);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

VanishingReport check_vanishing_unreduced(int d) {
  const auto start = std::chrono::steady_clock::now();
  check_dimension(d);
  if (d > 3) throw LimitError("the unreduced sweep enumerates 2^(d(d+1)) tuples; d <= 3 supported");
  const auto parts = partitions(d);
  const std::uint32_t n = 1u << d;
  const auto length = static_cast<std::size_t>(d) + 1;

  VanishingReport report;
  report.d = d;
  report.partitions_checked = parts.size();
  MonomialDegreeCache memo(d);
  std::vector<CubeVertex> tuple(length);
  std::vector<std::uint32_t> digits(length, 0);
  while (true) {
    for (std::size_t k = 0; k < length; ++k) tuple[k] = CubeVertex{digits[k]};
    ++report.tuples_checked;
    std::vector<const Partition*> triggered;
    for (const auto& p : parts)
      if (vanishing_hypothesis(p, tuple)) triggered.push_back(&p);
    if (!triggered.empty()) {
      ++report.tuples_constrained;
      ++report.degrees_computed;
      const std::int64_t degree = degree_f(d, tuple, &memo);
      if (degree != 0)
        for (const auto* p : triggered) report.counterexamples.push_back({*p, tuple, degree});
    }
    std::size_t pos = length;
    while (pos > 0 && ++digits[pos - 1] == n) digits[--pos] = 0;
    if (pos == 0) break;
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::string format_report(const VanishingReport& r) {
  std::ostringstream out;
  out << "vanishing condition d=" << r.d << ": " << (r.verified() ? "verified" : "VIOLATED") << "\n";
  out << "  partitions:        " << r.partitions_checked << "\n";
  out << "  tuples checked:    " << r.tuples_checked << " (constrained: " << r.tuples_constrained << ")\n";
  out << "  degrees computed:  " << r.degrees_computed << " (cache hits: " << r.cache_hits << ")\n";
  out << "  counterexamples:   " << r.counterexamples.size() << "\n";
  for (const auto& c : r.counterexamples)
    out << "    P=" << c.partition.to_string() << " V=" << format_tuple(c.tuple, r.d) << " degree=" << c.degree
        << "\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "  elapsed:           " << r.elapsed.count() << " s\n";
  return out.str();
}

std::string format_report_records(const VanishingReport& r) {
  std::ostringstream out;
  out << "d=" << r.d << "\n";
  out << "verified=" << (r.verified() ? "true" : "false") << "\n";
  out << "partitions_checked=" << r.partitions_checked << "\n";
  out << "tuples_checked=" << r.tuples_checked << "\n";
  out << "tuples_constrained=" << r.tuples_constrained << "\n";
  out << "degrees_computed=" << r.degrees_computed << "\n";
  out << "cache_hits=" << r.cache_hits << "\n";
  out << "counterexamples=" << r.counterexamples.size() << "\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "elapsed_seconds=" << r.elapsed.count() << "\n";
  return out.str();
}

}  // namespace chowring
