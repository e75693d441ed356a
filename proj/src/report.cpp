#include "linchk/report.hpp"

namespace linchk {

using nlohmann::ordered_json;

namespace {

ordered_json value_to_json(const Value& v)
{
  switch (v.kind()) {
    case Value::Kind::Bool: return v.as_bool();
    case Value::Kind::Int: return v.as_int();
    case Value::Kind::Absent: return nullptr;
  }
  return nullptr;
}

ordered_json witness_to_json(const std::vector<SequencedOp>& witness)
{
  ordered_json arr = ordered_json::array();
  for (const SequencedOp& step : witness) {
    ordered_json j;
    j["id"] = step.event_id;
    j["op"] = step.op.name;
    j["args"] = step.op.args;
    j["result"] = value_to_json(step.op.result);
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json stats_to_json(const CheckStats& stats)
{
  ordered_json j;
  j["iterations"] = stats.iterations;
  j["max_stack_height"] = stats.max_stack_height;
  j["cache_insertions"] = stats.cache_insertions;
  j["cache_hits"] = stats.cache_hits;
  j["cache_evictions"] = stats.cache_evictions;
  j["peak_cache_entries"] = stats.peak_cache_entries;
  j["elapsed_seconds"] = stats.elapsed_seconds;
  return j;
}

} // namespace

ordered_json check_result_to_json(const CheckResult& result, Algo algo,
                                  const std::string& spec_name)
{
  ordered_json j;
  j["schema_version"] = report_schema_version;
  j["verdict"] = std::string{to_string(result.verdict)};
  j["algo"] = std::string{to_string(algo)};
  j["spec"] = spec_name;

  if (result.n_partitions > 0 || algo == Algo::WglP) {
    j["n_partitions"] = result.n_partitions;
    j["degenerate_partitioning"] = result.degenerate_partitioning;
    if (result.failing_partition_key.has_value())
      j["failing_partition_key"] = *result.failing_partition_key;
  }

  j["stats"] = stats_to_json(result.stats);

  if (!result.partitions.empty()) {
    ordered_json parts = ordered_json::array();
    for (const PartitionOutcome& p : result.partitions) {
      ordered_json pj;
      pj["key"] = p.key;
      pj["verdict"] = std::string{to_string(p.verdict)};
      pj["stats"] = stats_to_json(p.stats);
      if (p.witness.has_value())
        pj["witness"] = witness_to_json(*p.witness);
      parts.push_back(std::move(pj));
    }
    j["partitions"] = std::move(parts);
  }

  if (result.witness.has_value())
    j["witness"] = witness_to_json(*result.witness);

  return j;
}

ordered_json bench_report_to_json(const BenchReport& report)
{
  ordered_json j;
  j["schema_version"] = report_schema_version;

  ordered_json summaries = ordered_json::array();
  for (const BenchAlgoSummary& s : report.summaries) {
    ordered_json sj;
    sj["algo"] = std::string{to_string(s.algo)};
    sj["runs"] = s.runs;
    sj["linearizable"] = s.linearizable;
    sj["not_linearizable"] = s.not_linearizable;
    sj["timeouts"] = s.timeouts;
    sj["timeout_pct"] = s.timeout_pct;
    sj["median_seconds"] = s.median_seconds;
    sj["mean_seconds"] = s.mean_seconds;
    sj["max_peak_cache_entries"] = s.max_peak_cache_entries;
    summaries.push_back(std::move(sj));
  }
  j["algorithms"] = std::move(summaries);

  ordered_json runs = ordered_json::array();
  for (const BenchRun& r : report.runs) {
    ordered_json rj;
    rj["file"] = r.file;
    rj["algo"] = std::string{to_string(r.algo)};
    rj["verdict"] = std::string{to_string(r.verdict)};
    rj["seconds"] = r.seconds;
    rj["peak_cache_entries"] = r.peak_cache_entries;
    rj["iterations"] = r.iterations;
    runs.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs);

  ordered_json errors = ordered_json::array();
  for (const BenchFileError& e : report.errors) {
    ordered_json ej;
    ej["file"] = e.file;
    ej["message"] = e.message;
    errors.push_back(std::move(ej));
  }
  j["errors"] = std::move(errors);
  j["peak_rss_kib"] = report.peak_rss_kib;
  return j;
}

}
