#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linchk/bench.hpp"
#include "linchk/errors.hpp"
#include "linchk/history.hpp"
#include "linchk/oracle.hpp"
#include "linchk/partition.hpp"
#include "linchk/report.hpp"
#include "linchk/workload.hpp"

namespace {

constexpr int exit_linearizable = 0;
constexpr int exit_not_linearizable = 1;
constexpr int exit_usage = 2;
constexpr int exit_timeout = 3;

constexpr const char* k_version = "linchk 1.0.0";

linchk::History read_history(const std::string& path)
{
  if (path.empty() || path == "-")
    return linchk::parse_history(std::cin);
  return linchk::parse_history_file(path);
}

void write_text(const std::string& path, const std::string& text)
{
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out{path};
  if (!out)
    throw linchk::Error("cannot write \"" + path + "\"");
  out << text;
}

int verdict_exit_code(linchk::Verdict v)
{
  switch (v) {
    case linchk::Verdict::Linearizable: return exit_linearizable;
    case linchk::Verdict::NotLinearizable: return exit_not_linearizable;
    case linchk::Verdict::Timeout: return exit_timeout;
  }
  return exit_usage;
}

void print_witness(const std::vector<linchk::SequencedOp>& witness)
{
  for (const linchk::SequencedOp& step : witness)
    std::cout << "  [" << step.event_id << "] " << linchk::to_string(step.op) << '\n';
}

struct CheckArgs
{
  std::string input;
  std::string spec{"set"};
  std::string algo; // empty = pick default for the spec
  std::size_t cache_capacity{0};
  double timeout_seconds{0.0};
  bool witness{false};
  std::string stats_json;
  unsigned parallel{0};
  std::string pending{"reject"};
};

int run_check(const CheckArgs& args)
{
  linchk::SpecDescriptor spec = linchk::SpecDescriptor::parse(args.spec);

  linchk::Algo algo;
  if (args.algo.empty())
    algo = spec.partitionable() ? linchk::Algo::WglP : linchk::Algo::Wgl;
  else
    algo = linchk::parse_algo(args.algo);

  if (args.cache_capacity != 0 && algo != linchk::Algo::WglLru)
    throw linchk::Error("--cache-capacity only applies to --algo wgl-lru");
  if (args.parallel != 0 && algo != linchk::Algo::WglP)
    throw linchk::Error("--parallel only applies to --algo wgl-p");
  if (args.pending != "reject" && args.pending != "drop")
    throw linchk::Error("--pending must be reject or drop");

  linchk::CheckerOptions opts;
  if (args.cache_capacity != 0)
    opts.cache_capacity = args.cache_capacity;
  opts.collect_witness = args.witness;
  opts.parallel = args.parallel;
  if (args.timeout_seconds > 0)
    opts.time_budget =
        std::chrono::milliseconds{static_cast<long>(args.timeout_seconds * 1000)};

  const auto policy = args.pending == "drop" ? linchk::PendingPolicy::Drop
                                             : linchk::PendingPolicy::Reject;
  linchk::History h = linchk::validate(read_history(args.input), policy);

  linchk::CheckResult result = linchk::run_algorithm(h, spec, algo, opts);

  std::cout << "verdict: " << linchk::to_string(result.verdict) << '\n';
  std::cout << "algorithm: " << linchk::to_string(algo) << "  spec: " << spec.name()
            << "  events: " << h.size() << '\n';
  if (result.n_partitions > 0) {
    std::cout << "partitions: " << result.n_partitions;
    if (result.degenerate_partitioning)
      std::cout << " (degenerate: partitioned check equals a plain one)";
    std::cout << '\n';
  }
  if (result.failing_partition_key.has_value())
    std::cout << "failing partition key: " << *result.failing_partition_key << '\n';

  const linchk::CheckStats& st = result.stats;
  std::cout << "iterations: " << st.iterations << "  max stack: " << st.max_stack_height
            << "  cache: " << st.cache_insertions << " insertions, " << st.cache_hits
            << " hits, " << st.cache_evictions << " evictions (peak "
            << st.peak_cache_entries << ")\n";
  std::cout << "elapsed: " << st.elapsed_seconds << " s\n";

  if (args.witness) {
    if (result.witness.has_value()) {
      std::cout << "witness:\n";
      print_witness(*result.witness);
    }
    for (const linchk::PartitionOutcome& p : result.partitions) {
      if (p.witness.has_value()) {
        std::cout << "witness (partition key " << p.key << "):\n";
        print_witness(*p.witness);
      }
    }
  }

  if (!args.stats_json.empty())
    write_text(args.stats_json,
               linchk::check_result_to_json(result, algo, spec.name()).dump(2) + "\n");

  return verdict_exit_code(result.verdict);
}

struct GenerateArgs
{
  unsigned threads{4};
  std::size_t ops{5000};
  std::int64_t keys{24};
  std::string impl{"coarse"};
  std::uint64_t seed{0};
  std::string mix{"1,1,1"};
  std::string output{"-"};
  std::string object{"set"};
};

linchk::OpMix parse_mix(const std::string& text)
{
  unsigned w[3] = {0, 0, 0};
  if (std::sscanf(text.c_str(), "%u,%u,%u", &w[0], &w[1], &w[2]) != 3)
    throw linchk::Error("--mix must be three comma-separated weights, e.g. 1,1,1");
  return linchk::OpMix{w[0], w[1], w[2]};
}

int run_generate(const GenerateArgs& args)
{
  linchk::WorkloadConfig cfg;
  cfg.threads = args.threads;
  cfg.ops_per_thread = args.ops;
  cfg.key_range = args.keys;
  cfg.impl = linchk::parse_impl(args.impl);
  cfg.seed = args.seed;
  cfg.mix = parse_mix(args.mix);
  cfg.object_name = args.object;

  linchk::History h = linchk::run_workload(cfg);

  if (args.output == "-") {
    linchk::serialize_history(h, std::cout);
  } else {
    std::ofstream out{args.output};
    if (!out)
      throw linchk::Error("cannot write \"" + args.output + "\"");
    linchk::serialize_history(h, out);
  }
  std::cerr << "generated " << h.size() << " events (" << cfg.threads << " threads x "
            << cfg.ops_per_thread << " ops, " << cfg.key_range << " keys, impl "
            << linchk::to_string(cfg.impl) << ", seed " << cfg.seed << ")\n";
  return 0;
}

struct BenchArgs
{
  std::string dir;
  std::vector<std::string> files;
  std::string algos{"wgl,wgl-lru,wgl-p"};
  std::string spec{"set"};
  std::size_t cache_capacity{1024};
  double timeout_seconds{60.0};
  unsigned parallel{0};
  std::string json;
};

int run_bench(const BenchArgs& args)
{
  linchk::BenchConfig cfg;
  cfg.spec = linchk::SpecDescriptor::parse(args.spec);
  cfg.cache_capacity = args.cache_capacity;
  cfg.parallel = args.parallel;
  cfg.timeout =
      std::chrono::milliseconds{static_cast<long>(args.timeout_seconds * 1000)};

  cfg.algos.clear();
  std::stringstream names{args.algos};
  std::string name;
  while (std::getline(names, name, ','))
    cfg.algos.push_back(linchk::parse_algo(name));
  if (cfg.algos.empty())
    throw linchk::Error("--algos must name at least one algorithm");

  cfg.files = args.files;
  if (!args.dir.empty()) {
    for (const auto& entry : std::filesystem::directory_iterator(args.dir))
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
        cfg.files.push_back(entry.path().string());
    std::sort(cfg.files.begin(), cfg.files.end());
  }

  linchk::BenchReport report = linchk::bench(cfg);
  std::cout << linchk::format_bench_table(report);
  if (!args.json.empty())
    write_text(args.json, linchk::bench_report_to_json(report).dump(2) + "\n");
  return 0;
}

struct OracleArgs
{
  std::string input;
  std::string spec{"set"};
  std::size_t max_ops{12};
  std::uint64_t max_enum{1'000'000};
};

int run_oracle(const OracleArgs& args)
{
  linchk::SpecDescriptor spec = linchk::SpecDescriptor::parse(args.spec);
  linchk::History h = linchk::validate(read_history(args.input));

  linchk::OracleBudget budget;
  budget.max_operations = args.max_ops;
  budget.max_enumerations = args.max_enum;

  bool ok = linchk::brute_force_check(h, spec, budget);
  std::cout << "verdict: " << (ok ? "linearizable" : "not-linearizable")
            << " (brute force)\n";
  return ok ? exit_linearizable : exit_not_linearizable;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"linearizability checker for recorded concurrent histories"};
  app.set_version_flag("--version", k_version);
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "decide whether a history is linearizable");
  check->add_option("input", check_args.input, "history file (JSONL); - or absent = stdin");
  check->add_option("--spec", check_args.spec, "set | map | array:<N>")
      ->capture_default_str();
  check->add_option("--algo", check_args.algo,
                    "wg | wgl | wgl-lru | wgl-p (default: wgl-p when partitionable)");
  check->add_option("--cache-capacity", check_args.cache_capacity,
                    "configuration cache bound (wgl-lru only)");
  check->add_option("--timeout", check_args.timeout_seconds, "budget in seconds");
  check->add_flag("--witness", check_args.witness, "report a linearization order");
  check->add_option("--stats-json", check_args.stats_json,
                    "write the result as JSON to this path (- = stdout)");
  check->add_option("--parallel", check_args.parallel, "worker cap (wgl-p only)");
  check->add_option("--pending", check_args.pending,
                    "reject | drop pending calls")
      ->capture_default_str();

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand("generate", "record a history from a concurrent workload");
  gen->add_option("--threads", gen_args.threads)->capture_default_str();
  gen->add_option("--ops", gen_args.ops, "operations per thread")->capture_default_str();
  gen->add_option("--keys", gen_args.keys, "keys drawn from [0, keys)")->capture_default_str();
  gen->add_option("--impl", gen_args.impl, "coarse | striped | nonatomic | stale")
      ->capture_default_str();
  gen->add_option("--seed", gen_args.seed)->capture_default_str();
  gen->add_option("--mix", gen_args.mix, "insert,remove,contains weights")
      ->capture_default_str();
  gen->add_option("-o,--output", gen_args.output, "output path (- = stdout)")
      ->capture_default_str();
  gen->add_option("--object", gen_args.object, "object name stamped on events")
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "compare algorithms over a history suite");
  bench_cmd->add_option("--dir", bench_args.dir, "directory of .jsonl histories");
  bench_cmd->add_option("files", bench_args.files, "explicit history files");
  bench_cmd->add_option("--algos", bench_args.algos, "comma-separated algorithm list")
      ->capture_default_str();
  bench_cmd->add_option("--spec", bench_args.spec)->capture_default_str();
  bench_cmd->add_option("--cache-capacity", bench_args.cache_capacity,
                        "cache bound for wgl-lru runs")
      ->capture_default_str();
  bench_cmd->add_option("--timeout", bench_args.timeout_seconds, "per-run budget in seconds")
      ->capture_default_str();
  bench_cmd->add_option("--parallel", bench_args.parallel, "worker cap for wgl-p runs");
  bench_cmd->add_option("--json", bench_args.json, "write the report as JSON to this path");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force cross-check for small histories");
  oracle->add_option("input", oracle_args.input, "history file (JSONL); - or absent = stdin");
  oracle->add_option("--spec", oracle_args.spec)->capture_default_str();
  oracle->add_option("--max-ops", oracle_args.max_ops, "operation budget")
      ->capture_default_str();
  oracle->add_option("--max-enum", oracle_args.max_enum, "enumeration budget")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (check->parsed())
      return run_check(check_args);
    if (gen->parsed())
      return run_generate(gen_args);
    if (bench_cmd->parsed())
      return run_bench(bench_args);
    if (oracle->parsed())
      return run_oracle(oracle_args);
  } catch (const linchk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
