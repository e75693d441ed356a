// Acceptance suite: end-to-end checks of the whole toolkit, one
// pass/fail line per criterion. Exit code 0 only when every criterion
// holds.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linchk/checker.hpp"
#include "linchk/detail/hash.hpp"
#include "linchk/history.hpp"
#include "linchk/oracle.hpp"
#include "linchk/partition.hpp"
#include "linchk/workload.hpp"

#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace linchk;

namespace {

struct Outcome
{
  bool passed{true};
  std::string detail;

  void fail(const std::string& why)
  {
    passed = false;
    if (!detail.empty())
      detail += "; ";
    detail += why;
  }
};

double now_seconds()
{
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

CheckerOptions algo_options(bool witness)
{
  CheckerOptions opts;
  opts.collect_witness = witness;
  return opts;
}

CheckerOptions lru_options(std::size_t capacity)
{
  CheckerOptions opts;
  opts.cache_mode = CacheMode::Lru;
  opts.cache_capacity = capacity;
  opts.collect_witness = true;
  return opts;
}

/// Re-validates every witness carried by a result (plain or
/// per-partition). Used for every Linearizable verdict in criteria 1-3.
/// Results checked without witness collection have nothing to validate.
bool witnesses_hold(const History& h, const SpecDescriptor& spec, const CheckResult& r,
                    std::size_t& validated)
{
  if (r.verdict != Verdict::Linearizable)
    return true;
  if (r.witness.has_value()) {
    ++validated;
    return testing::valid_witness(h, spec, *r.witness);
  }
  std::vector<std::vector<SequencedOp>> parts;
  bool any = false;
  for (const PartitionOutcome& p : r.partitions) {
    if (p.witness.has_value()) {
      parts.push_back(*p.witness);
      any = true;
    }
  }
  if (!any)
    return true; // witness collection was off
  if (parts.size() != r.partitions.size())
    return false; // some partitions lost their witness
  ++validated;
  return testing::valid_partition_witnesses(h, spec, parts);
}

std::size_t g_witnesses_validated = 0;
std::size_t g_witness_failures = 0;

// ---------------------------------------------------------------- 1 --

Outcome criterion_1()
{
  Outcome out;
  const SpecDescriptor set = SpecDescriptor::set();
  const History good = testing::overlapping_trio();
  const History bad = testing::bad_sequential_trio();

  const double start = now_seconds();

  const std::vector<std::pair<Algo, CheckerOptions>> runs = {
      {Algo::Wg, algo_options(true)},
      {Algo::Wgl, algo_options(true)},
      {Algo::WglLru, [] { auto o = lru_options(1); o.collect_witness = true; return o; }()},
      {Algo::WglLru, [] { auto o = lru_options(64); o.collect_witness = true; return o; }()},
      {Algo::WglP, algo_options(true)},
  };

  for (const auto& [algo, opts] : runs) {
    CheckResult r = run_algorithm(good, set, algo, opts);
    if (r.verdict != Verdict::Linearizable)
      out.fail(std::string{to_string(algo)} + " rejected the linearizable fixture");
    if (!witnesses_hold(good, set, r, g_witnesses_validated)) {
      ++g_witness_failures;
      out.fail(std::string{to_string(algo)} + " produced an invalid witness");
    }

    CheckResult rb = run_algorithm(bad, set, algo, opts);
    if (rb.verdict != Verdict::NotLinearizable)
      out.fail(std::string{to_string(algo)} + " accepted the non-linearizable fixture");
  }

  const double elapsed = now_seconds() - start;
  if (elapsed >= 1.0)
    out.fail("fixtures took " + std::to_string(elapsed) + " s (budget 1 s)");

  std::ostringstream d;
  d << "5 algorithm configurations, both fixtures, " << elapsed << " s";
  if (out.detail.empty())
    out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- 2 --

Outcome criterion_2()
{
  Outcome out;
  detail::SplitMix64 rng{20260810};
  const SpecDescriptor specs[] = {SpecDescriptor::set(), SpecDescriptor::map(),
                                  SpecDescriptor::array(3)};

  const int total = 10002;
  int disagreements = 0;
  int lru_neutrality_failures = 0;

  for (int i = 0; i < total; ++i) {
    const SpecDescriptor& spec = specs[i % 3];
    History h = testing::random_history(rng, spec);

    const bool oracle = brute_force_check(h, spec);
    const Verdict expected =
        oracle ? Verdict::Linearizable : Verdict::NotLinearizable;

    const std::vector<std::pair<const char*, CheckerOptions>> configs = {
        {"wg", [] { CheckerOptions o; o.cache_mode = CacheMode::None; o.collect_witness = true; return o; }()},
        {"wgl", algo_options(true)},
        {"wgl-lru(1)", lru_options(1)},
        {"wgl-lru(4)", lru_options(4)},
        {"wgl-lru(64)", lru_options(64)},
    };

    for (const auto& [name, opts] : configs) {
      HistoryList hl = build_linked(h);
      CheckResult r = check(hl, spec, opts);
      if (r.verdict != expected) {
        ++disagreements;
        out.fail(std::string{name} + " disagreed with the oracle on history " +
                 std::to_string(i));
        break;
      }
      if (!witnesses_hold(h, spec, r, g_witnesses_validated)) {
        ++g_witness_failures;
        out.fail(std::string{name} + " witness failed re-validation on history " +
                 std::to_string(i));
      }
    }

    CheckResult comp = check_compositional(h, spec, algo_options(true));
    if (comp.verdict != expected) {
      ++disagreements;
      out.fail("wgl-p disagreed with the oracle on history " + std::to_string(i));
    } else if (!witnesses_hold(h, spec, comp, g_witnesses_validated)) {
      ++g_witness_failures;
      out.fail("wgl-p witness failed re-validation on history " + std::to_string(i));
    }

    // criterion 5 on this suite: verdicts stable at the named capacities
    for (std::size_t cap : {std::size_t{1}, std::size_t{16}, std::size_t{1024}}) {
      HistoryList hl = build_linked(h);
      CheckResult r = check(hl, spec, lru_options(cap));
      if (r.verdict != expected || r.stats.peak_cache_entries > cap) {
        ++lru_neutrality_failures;
        out.fail("lru(" + std::to_string(cap) + ") misbehaved on history " +
                 std::to_string(i));
      }
      if (!witnesses_hold(h, spec, r, g_witnesses_validated)) {
        ++g_witness_failures;
        out.fail("lru(" + std::to_string(cap) + ") witness failed on history " +
                 std::to_string(i));
      }
    }

    if (!out.passed && disagreements + lru_neutrality_failures > 5)
      break; // enough evidence
  }

  if (out.passed)
    out.detail = std::to_string(total) +
                 " random histories, oracle vs wg/wgl/wgl-lru{1,4,64}/wgl-p all agree";
  return out;
}

// ---------------------------------------------------------------- 3 --

std::vector<History> g_scale_histories; // shared with criterion 5/6 reporting

Outcome criterion_3()
{
  Outcome out;
  const SpecDescriptor set = SpecDescriptor::set();
  int agreements = 0;

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    WorkloadConfig cfg;
    cfg.threads = 4;
    cfg.ops_per_thread = 1000;
    cfg.key_range = 24;
    cfg.seed = seed;
    cfg.impl = ImplKind::CoarseLockSet;

    History h = validate(run_workload(cfg));
    if (h.size() != 2 * 4 * 1000)
      out.fail("unexpected history length at seed " + std::to_string(seed));

    HistoryList hl = build_linked(h);
    CheckResult plain = check(hl, set, algo_options(true));
    CheckResult composed = check_compositional(h, set, algo_options(true));

    if (plain.verdict != composed.verdict) {
      out.fail("wgl and wgl-p disagree at seed " + std::to_string(seed));
      continue;
    }
    ++agreements;

    if (!witnesses_hold(h, set, plain, g_witnesses_validated) ||
        !witnesses_hold(h, set, composed, g_witnesses_validated)) {
      ++g_witness_failures;
      out.fail("witness re-validation failed at seed " + std::to_string(seed));
    }

    // criterion 5 on this suite
    for (std::size_t cap : {std::size_t{1}, std::size_t{16}, std::size_t{1024}}) {
      HistoryList hl2 = build_linked(h);
      CheckResult r = check(hl2, set, lru_options(cap));
      if (r.verdict != plain.verdict)
        out.fail("lru(" + std::to_string(cap) + ") verdict differs at seed " +
                 std::to_string(seed));
      if (r.stats.peak_cache_entries > cap)
        out.fail("lru(" + std::to_string(cap) + ") exceeded its capacity at seed " +
                 std::to_string(seed));
      if (!witnesses_hold(h, set, r, g_witnesses_validated)) {
        ++g_witness_failures;
        out.fail("lru(" + std::to_string(cap) + ") witness failed at seed " +
                 std::to_string(seed));
      }
    }
  }

  if (out.passed)
    out.detail = "50 workload histories (4x1000 ops, 24 keys): wgl == wgl-p, " +
                 std::to_string(agreements) + "/50 agree";
  return out;
}

// ---------------------------------------------------------------- 4 --

Outcome criterion_4()
{
  Outcome out;
  const SpecDescriptor set = SpecDescriptor::set();

  std::vector<double> wgl_times, wglp_times;
  std::size_t wgl_peak = 0, wglp_peak = 0;

  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    WorkloadConfig cfg;
    cfg.threads = 4;
    cfg.ops_per_thread = 5000;
    cfg.key_range = 24;
    cfg.seed = seed;
    cfg.impl = ImplKind::CoarseLockSet;

    History h = validate(run_workload(cfg));

    // wall time measured around the whole run, list building included,
    // identically for both algorithms
    double t0 = now_seconds();
    CheckResult plain = run_algorithm(h, set, Algo::Wgl, {});
    wgl_times.push_back(now_seconds() - t0);
    wgl_peak = std::max(wgl_peak, plain.stats.peak_cache_entries);

    t0 = now_seconds();
    CheckResult composed = run_algorithm(h, set, Algo::WglP, {});
    wglp_times.push_back(now_seconds() - t0);
    wglp_peak = std::max(wglp_peak, composed.stats.peak_cache_entries);

    if (plain.verdict != Verdict::Linearizable || composed.verdict != Verdict::Linearizable)
      out.fail("correct-implementation history not linearizable at seed " +
               std::to_string(seed));
  }

  auto median = [](std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
  };

  const double med_wgl = median(wgl_times);
  const double med_wglp = median(wglp_times);

  if (!(med_wglp <= 0.5 * med_wgl))
    out.fail("median time: wgl-p " + std::to_string(med_wglp) + " s > 0.5 x wgl " +
             std::to_string(med_wgl) + " s");
  if (!(static_cast<double>(wglp_peak) <= 0.2 * static_cast<double>(wgl_peak)))
    out.fail("peak cache entries: wgl-p " + std::to_string(wglp_peak) + " > 0.2 x wgl " +
             std::to_string(wgl_peak));

  std::ostringstream d;
  d << "20 histories (4x5000 ops): median wgl " << med_wgl << " s vs wgl-p " << med_wglp
    << " s; peak cache " << wgl_peak << " vs " << wglp_peak;
#ifndef NDEBUG
  d << " [unoptimized build: timing thresholds are calibrated for optimized builds]";
#endif
  if (out.passed)
    out.detail = d.str();
  return out;
}

// ---------------------------------------------------------------- 5 --

Outcome criterion_5(bool folded_runs_passed)
{
  // the capacity sweeps run inside criteria 2 and 3 over their full
  // history sets; this criterion reports their aggregate
  Outcome out;
  if (!folded_runs_passed)
    out.fail("capacity sweeps inside criteria 2-3 reported failures");
  else
    out.detail = "wgl-lru{1,16,1024} matched wgl on every criterion 2-3 history, "
                 "peak entries never exceeded capacity";
  return out;
}

// ---------------------------------------------------------------- 6 --

Outcome criterion_6()
{
  Outcome out;
  detail::SplitMix64 rng{606060};
  const SpecDescriptor set = SpecDescriptor::set();

  // lift/unlift restoration over randomized LIFO sequences
  int lifo_rounds = 0;
  while (lifo_rounds < 1000) {
    History h = testing::random_history(rng, set);
    HistoryList hl = build_linked(h);
    if (hl.n_calls() == 0)
      continue;
    ++lifo_rounds;

    std::vector<std::pair<const EntryNode*, std::pair<const EntryNode*, const EntryNode*>>>
        before;
    for (EntryNode* e = hl.head().next; e != nullptr; e = e->next)
      before.emplace_back(e, std::make_pair(e->prev, e->next));

    std::vector<EntryNode*> lifted;
    const std::size_t depth = 1 + rng.below(8);
    for (std::size_t d = 0; d < depth; ++d) {
      std::vector<EntryNode*> calls;
      for (EntryNode* e = hl.head().next; e != nullptr; e = e->next)
        if (e->is_call())
          calls.push_back(e);
      if (calls.empty())
        break;
      EntryNode* victim = calls[rng.below(calls.size())];
      lift(victim);
      lifted.push_back(victim);
    }
    for (auto it = lifted.rbegin(); it != lifted.rend(); ++it)
      unlift(*it);

    std::size_t idx = 0;
    for (EntryNode* e = hl.head().next; e != nullptr; e = e->next, ++idx) {
      const std::pair<const EntryNode*, const EntryNode*> links{e->prev, e->next};
      if (idx >= before.size() || before[idx].first != e || before[idx].second != links) {
        out.fail("lift/unlift failed to restore the pointer graph");
        break;
      }
    }
  }

  // partition structure: disjoint union, order preservation, matching
  for (int round = 0; round < 1000; ++round) {
    History h = testing::random_history(rng, set);
    PartitionKeyMap km = count_partitions(h, set);
    if (km.n == 0)
      continue;
    PartitionSet ps = partition(build_linked(h), km, set);

    std::map<std::pair<std::uint64_t, int>, std::size_t> original_pos;
    for (std::size_t pos = 0; pos < h.events.size(); ++pos)
      original_pos[{h.events[pos].id, h.events[pos].kind == EventKind::Call ? 0 : 1}] = pos;

    std::size_t seen = 0;
    bool ok = true;
    for (std::size_t i = 0; i < ps.size() && ok; ++i) {
      std::size_t last = 0;
      bool first = true;
      for (const EntryNode* e = ps.sub_head(i).next; e != nullptr; e = e->next) {
        ++seen;
        auto it = original_pos.find(
            {e->event->id, e->event->kind == EventKind::Call ? 0 : 1});
        if (it == original_pos.end() || (!first && it->second <= last)) {
          ok = false;
          break;
        }
        last = it->second;
        first = false;
        if (e->is_call()) {
          bool same_sub = false;
          for (const EntryNode* other = ps.sub_head(i).next; other != nullptr;
               other = other->next)
            same_sub |= other == e->match;
          ok &= same_sub;
        }
      }
    }
    if (!ok || seen != h.size()) {
      out.fail("partition structure violated on round " + std::to_string(round));
      break;
    }
  }

  // incremental bitset hash equals the from-scratch fold
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.below(300);
    Bitset b{n};
    const std::size_t toggles = rng.below(100);
    for (std::size_t t = 0; t < toggles; ++t)
      b.toggle(rng.below(n));
    std::uint64_t folded = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (b.test(i))
        folded ^= Bitset::token(i);
    if (b.hash() != folded) {
      out.fail("incremental bitset hash diverged from the fold");
      break;
    }
  }

  if (g_witness_failures != 0)
    out.fail(std::to_string(g_witness_failures) + " witness re-validation failure(s)");

  if (out.passed)
    out.detail = "1000x lift/unlift, 1000x partition, 1000x bitset folds; " +
                 std::to_string(g_witnesses_validated) +
                 " witnesses re-validated across criteria 1-3";
  return out;
}

// ---------------------------------------------------------------- 7 --

Outcome criterion_7()
{
  Outcome out;
  const SpecDescriptor set = SpecDescriptor::set();

  for (ViolationKind kind : {ViolationKind::DoubleInsert, ViolationKind::LostRemove,
                             ViolationKind::StaleContains}) {
    History h = make_violation(kind);
    for (Algo algo : {Algo::Wg, Algo::Wgl, Algo::WglLru, Algo::WglP}) {
      CheckerOptions opts;
      opts.cache_capacity = 16;
      if (run_algorithm(h, set, algo, opts).verdict != Verdict::NotLinearizable)
        out.fail("violation fixture passed under " + std::string{to_string(algo)});
    }
  }

  // statistical smoke test, flaky-tolerant: 3 attempts of up to 100
  // high-contention runs each
  bool caught = false;
  for (int attempt = 0; attempt < 3 && !caught; ++attempt) {
    for (int run = 0; run < 100 && !caught; ++run) {
      WorkloadConfig cfg;
      cfg.threads = 4;
      cfg.ops_per_thread = 60;
      cfg.key_range = 1;
      cfg.seed = static_cast<std::uint64_t>(attempt) * 1000 + run;
      cfg.impl = ImplKind::NonatomicSet;

      History h = validate(run_workload(cfg));
      if (check_compositional(h, set).verdict == Verdict::NotLinearizable)
        caught = true;
    }
  }
  if (!caught)
    out.fail("nonatomic set produced no violation in 3 x 100 high-contention runs");

  if (out.passed)
    out.detail = "3 fixtures x 4 algorithms rejected; nonatomic race caught";
  return out;
}

} // namespace

int main()
{
  struct Row
  {
    int number;
    const char* name;
    Outcome outcome;
    double seconds;
  };
  std::vector<Row> rows;

  auto run = [&](int number, const char* name, auto&& fn) {
    const double start = now_seconds();
    Outcome outcome = fn();
    rows.push_back(Row{number, name, std::move(outcome), now_seconds() - start});
  };

  run(1, "reference-fixture correctness", criterion_1);
  run(2, "oracle equivalence on 10k random histories", criterion_2);
  run(3, "wgl vs wgl-p agreement at workload scale", criterion_3);
  run(4, "performance direction of partitioning", criterion_4);

  const bool folded = rows[1].outcome.passed && rows[2].outcome.passed;
  run(5, "LRU neutrality at capacities 1/16/1024", [&] { return criterion_5(folded); });
  run(6, "structural invariants", criterion_6);
  run(7, "bug detection", criterion_7);

  bool all_passed = true;
  for (const Row& row : rows) {
    all_passed &= row.outcome.passed;
    std::printf("[%s] criterion %d: %s — %s (%.2f s)\n",
                row.outcome.passed ? "PASS" : "FAIL", row.number, row.name,
                row.outcome.detail.c_str(), row.seconds);
  }
  std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES PRESENT");
  return all_passed ? 0 : 1;
}
