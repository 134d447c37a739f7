#include "chowring/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <memory>
#include <ostream>

#include "chowring/chow.hpp"
#include "chowring/fourier.hpp"
#include "chowring/graph_io.hpp"
#include "chowring/literal.hpp"
#include "chowring/vanishing.hpp"

namespace chowring::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Positional arguments may hold several whitespace-separated tokens each.
std::vector<std::string> flatten(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& arg : raw)
    for (auto& token : split_tokens(arg)) out.push_back(std::move(token));
  if (out.empty()) throw UsageError("no cycle tokens given");
  return out;
}

int cmd_degree(int d, const std::string& basis, const std::vector<std::string>& raw, std::ostream& out) {
  const auto tokens = flatten(raw);
  Cycle a = basis == "F" ? parse_fourier_cycle(tokens, d) : parse_cube_cycle(tokens, d);
  out << to_string(degree_cube(a)) << "\n";
  return 0;
}

int cmd_graph_degree(const std::string& file, int d, const std::vector<std::string>& raw, std::ostream& out) {
  auto g = std::make_shared<const OrderedGraph>(load_graph(file));
  const Ambient ambient = Ambient::product(g, d);
  const Cycle a = parse_product_cycle(flatten(raw), ambient);
  out << to_string(degree_product(a)) << "\n";
  return 0;
}

int cmd_table(int d, std::ostream& out) {
  MonomialDegreeCache memo(d);
  for (const auto& key : canonical_tuples(d, d + 1)) {
    const std::int64_t value = degree_f(d, key.tuple, &memo);
    if (value != 0) out << format_tuple(key.tuple, d) << "\t" << value << "\n";
  }
  return 0;
}

int cmd_vanishing(int d, const std::string& cache_path, int jobs, bool allow_long, bool records, std::ostream& out,
                  std::ostream& err) {
  if (d >= 5 && !allow_long) throw UsageError("d >= 5 has no known runtime bound; pass --allow-long");
  DegreeCache cache(d);
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) cache = cache_load(cache_path, d);

  VanishingOptions options;
  options.jobs = jobs;
  if (d >= 4) {
    auto last = std::chrono::steady_clock::now();
    options.progress = [&err, last](std::uint64_t done, std::uint64_t total) mutable {
      const auto now = std::chrono::steady_clock::now();
      if (done != total && now - last < std::chrono::seconds(10)) return;
      last = now;
      err << kProgram << ": progress: " << done << "/" << total << " orbits\n" << std::flush;
    };
  }
  const VanishingReport report = check_vanishing(d, cache, options);
  if (!cache_path.empty()) cache_store(cache, cache_path);
  out << (records ? format_report_records(report) : format_report(report));
  return report.verified() ? 0 : 1;
}

int cmd_subdivide(const std::string& file, int n, const std::string& out_path, std::ostream& out) {
  const OrderedGraph g = subdivide(load_graph(file), n);
  if (out_path.empty())
    out << write_graph(g);
  else
    save_graph(g, out_path);
  return 0;
}

int cmd_orbits(int d, const std::vector<std::string>& raw, std::ostream& out) {
  std::vector<CubeVertex> tuple;
  for (const auto& token : flatten(raw)) tuple.push_back(parse_bitstring(token, d));
  const TupleOrbitKey key = canonical_tuple(tuple, d);
  out << format_tuple(key.tuple, d) << "\t" << orbit_size(tuple, d) << "\n";
  return 0;
}

int fail(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << kProgram << ": error[" << kind << "]: " << message << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local intersection numbers on products of ordered graphs", kProgram};
  app.require_subcommand(1);

  int d = 0;
  std::string basis = "C";
  std::string graph_file, cache_file, out_file;
  int n = 1;
  int jobs = 1;
  bool allow_long = false, records = false;
  std::vector<std::string> tokens;

  auto* degree = app.add_subcommand("degree", "local degree of a cycle on the standard cube");
  degree->add_option("--d", d, "cube dimension")->required()->check(CLI::Range(1, kMaxDimension));
  degree->add_option("--basis", basis, "C or F")->check(CLI::IsMember({"C", "F"}));
  degree->add_option("tokens", tokens, "cycle literal")->required();

  auto* graph_degree = app.add_subcommand("graph-degree", "local degree of a cycle on a graph product");
  graph_degree->add_option("--graph", graph_file, "graph file")->required();
  graph_degree->add_option("--d", d, "number of factors")->required()->check(CLI::Range(1, kMaxDimension));
  graph_degree->add_option("tokens", tokens, "cycle literal")->required();

  auto* table = app.add_subcommand("table", "nonzero orbit representatives of the F-basis degree table");
  table->add_option("--d", d, "2 or 3")->required()->check(CLI::IsMember({2, 3}));

  auto* vanishing = app.add_subcommand("vanishing", "exhaustive check of the vanishing condition");
  vanishing->add_option("--d", d, "dimension")->required()->check(CLI::Range(1, kDefaultPartitionCap));
  vanishing->add_option("--cache", cache_file, "degree cache file, read if present and rewritten");
  vanishing->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024));
  vanishing->add_flag("--allow-long", allow_long, "permit d >= 5");
  vanishing->add_flag("--records", records, "key=value output");

  auto* subdiv = app.add_subcommand("subdivide", "n-fold subdivision of a graph");
  subdiv->add_option("--graph", graph_file, "graph file")->required();
  subdiv->add_option("--n", n, "subdivision factor")->required()->check(CLI::PositiveNumber);
  subdiv->add_option("--out", out_file, "output file (default stdout)");

  auto* orbits = app.add_subcommand("orbits", "canonical representative and orbit size of a tuple");
  orbits->add_option("--d", d, "dimension")->required()->check(CLI::Range(1, 8));
  orbits->add_option("tuple", tokens, "bitstrings")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return fail(err, "usage", e.what(), 2);
  }

  try {
    if (*degree) return cmd_degree(d, basis, tokens, out);
    if (*graph_degree) return cmd_graph_degree(graph_file, d, tokens, out);
    if (*table) return cmd_table(d, out);
    if (*vanishing) return cmd_vanishing(d, cache_file, jobs, allow_long, records, out, err);
    if (*subdiv) return cmd_subdivide(graph_file, n, out_file, out);
    if (*orbits) return cmd_orbits(d, tokens, out);
  } catch (const UsageError& e) {
    return fail(err, "usage", e.what(), 2);
  } catch (const ParseError& e) {
    return fail(err, "parse", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return fail(err, "input", e.what(), 2);
  } catch (const CacheError& e) {
    return fail(err, "cache", e.what(), 1);
  } catch (const LimitError& e) {
    return fail(err, "limit", e.what(), 1);
  } catch (const std::logic_error& e) {
    return fail(err, "consistency", e.what(), 1);
  } catch (const std::runtime_error& e) {
    return fail(err, "io", e.what(), 2);
  } catch (const std::exception& e) {
    return fail(err, "internal", e.what(), 1);
  }
  return fail(err, "usage", "no subcommand", 2);
}

}  // namespace chowring::cli
