#include "linchk/bench.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <sys/resource.h>

#include "linchk/errors.hpp"
#include "linchk/history.hpp"
#include "linchk/partition.hpp"

namespace linchk {

namespace {

double median(std::vector<double> xs)
{
  if (xs.empty())
    return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  if (xs.size() % 2 == 1)
    return xs[mid];
  return (xs[mid - 1] + xs[mid]) / 2.0;
}

std::size_t peak_rss_kib()
{
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0)
    return 0;
  return static_cast<std::size_t>(usage.ru_maxrss); // KiB on Linux
}

} // namespace

BenchReport bench(const BenchConfig& cfg)
{
  BenchReport report;

  for (const std::string& file : cfg.files) {
    History h;
    try {
      h = validate(parse_history_file(file));
    } catch (const Error& e) {
      report.errors.push_back(BenchFileError{file, e.what()});
      continue;
    }

    for (Algo algo : cfg.algos) {
      CheckerOptions opts;
      opts.cache_capacity = cfg.cache_capacity;
      opts.time_budget = cfg.timeout;
      opts.parallel = cfg.parallel;

      try {
        CheckResult result = run_algorithm(h, cfg.spec, algo, opts);
        report.runs.push_back(BenchRun{file, algo, result.verdict,
                                       result.stats.elapsed_seconds,
                                       result.stats.peak_cache_entries,
                                       result.stats.iterations});
      } catch (const Error& e) {
        report.errors.push_back(
            BenchFileError{file, std::string{to_string(algo)} + ": " + e.what()});
        break; // a spec mismatch will fail every algorithm alike
      }
    }
  }

  for (Algo algo : cfg.algos) {
    BenchAlgoSummary s;
    s.algo = algo;
    std::vector<double> times;
    for (const BenchRun& run : report.runs) {
      if (run.algo != algo)
        continue;
      ++s.runs;
      times.push_back(run.seconds);
      s.max_peak_cache_entries = std::max(s.max_peak_cache_entries, run.peak_cache_entries);
      switch (run.verdict) {
        case Verdict::Linearizable: ++s.linearizable; break;
        case Verdict::NotLinearizable: ++s.not_linearizable; break;
        case Verdict::Timeout: ++s.timeouts; break;
      }
    }
    s.median_seconds = median(times);
    s.mean_seconds = times.empty() ? 0.0
                                   : std::accumulate(times.begin(), times.end(), 0.0) /
                                         static_cast<double>(times.size());
    s.timeout_pct = s.runs == 0 ? 0.0
                                : 100.0 * static_cast<double>(s.timeouts) /
                                      static_cast<double>(s.runs);
    report.summaries.push_back(s);
  }

  report.peak_rss_kib = peak_rss_kib();
  return report;
}

std::string format_bench_table(const BenchReport& report)
{
  std::ostringstream out;
  char line[160];

  std::snprintf(line, sizeof line, "%-8s %6s %8s %8s %9s %8s %8s %12s\n", "algo",
                "runs", "lin", "non-lin", "timeouts", "med(s)", "mean(s)", "peak-cache");
  out << line;

  for (const BenchAlgoSummary& s : report.summaries) {
    std::snprintf(line, sizeof line, "%-8s %6zu %8zu %8zu %8.1f%% %8.3f %8.3f %12zu\n",
                  std::string{to_string(s.algo)}.c_str(), s.runs, s.linearizable,
                  s.not_linearizable, s.timeout_pct, s.median_seconds, s.mean_seconds,
                  s.max_peak_cache_entries);
    out << line;
  }

  if (!report.errors.empty()) {
    out << "\nunreadable files:\n";
    for (const BenchFileError& e : report.errors)
      out << "  " << e.file << ": " << e.message << '\n';
  }
  if (report.peak_rss_kib != 0)
    out << "\npeak resident set: " << report.peak_rss_kib << " KiB (whole process)\n";
  return out.str();
}

}
