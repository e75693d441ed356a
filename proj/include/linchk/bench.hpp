#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "linchk/checker.hpp"
#include "linchk/spec.hpp"

namespace linchk {

struct BenchConfig
{
  std::vector<std::string> files;
  std::vector<Algo> algos{Algo::Wgl, Algo::WglLru, Algo::WglP};
  SpecDescriptor spec{SpecDescriptor::set()};
  std::size_t cache_capacity{1024};
  std::chrono::milliseconds timeout{std::chrono::seconds{60}};
  unsigned parallel{0};
};

struct BenchRun
{
  std::string file;
  Algo algo{Algo::Wgl};
  Verdict verdict{Verdict::Linearizable};
  double seconds{0.0};
  std::size_t peak_cache_entries{0};
  std::uint64_t iterations{0};
};

struct BenchFileError
{
  std::string file;
  std::string message;
};

struct BenchAlgoSummary
{
  Algo algo{Algo::Wgl};
  std::size_t runs{0};
  std::size_t linearizable{0};
  std::size_t not_linearizable{0};
  std::size_t timeouts{0};
  double median_seconds{0.0};
  double mean_seconds{0.0};
  double timeout_pct{0.0};
  std::size_t max_peak_cache_entries{0};
};

struct BenchReport
{
  std::vector<BenchRun> runs;
  std::vector<BenchFileError> errors;
  std::vector<BenchAlgoSummary> summaries;
  /// Peak resident set of the whole process, in KiB, when the platform
  /// exposes it; 0 otherwise. Process-wide, so per-algorithm space is
  /// better judged by peak cache entries.
  std::size_t peak_rss_kib{0};
};

/// Checks every readable history in cfg.files under every requested
/// algorithm. Unreadable files are reported per-file and the suite
/// continues.
BenchReport bench(const BenchConfig& cfg);

std::string format_bench_table(const BenchReport& report);

}
