#include "linchk/partition.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "linchk/errors.hpp"

namespace linchk {

PartitionKeyMap count_partitions(const History& h, const SpecDescriptor& spec)
{
  PartitionKeyMap km;
  for (const Event& e : h.events) {
    if (e.kind != EventKind::Call)
      continue;
    std::int64_t key = spec.partition_key(e.op);
    if (km.dense.emplace(key, km.keys.size()).second)
      km.keys.push_back(key);
  }
  km.n = km.keys.size();
  return km;
}

PartitionSet partition(HistoryList&& hl, std::size_t n, const PartitionFn& f)
{
  assert(n >= 1);

  PartitionSet ps;
  ps.m_arena = std::move(hl);
  ps.m_heads.resize(n);
  ps.m_sub_calls.assign(n, 0);
  ps.m_sub_entries.assign(n, 0);
  ps.m_keys.assign(n, 0);

  std::vector<EntryNode*> tails(n);
  std::vector<std::uint32_t> next_ids(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    tails[i] = &ps.m_heads[i];

  EntryNode* entry = ps.m_arena.head().next;
  ps.m_arena.head().next = nullptr; // the source list is consumed

  while (entry != nullptr) {
    EntryNode* next_entry = entry->next;
    const std::size_t i = f(*entry);
    assert(i < n);

    if (entry->is_call()) {
      // per-sub-history ids stay dense in [0, sub_calls)
      const std::uint32_t id = next_ids[i]++;
      entry->entry_id = id;
      entry->match->entry_id = id;
      ++ps.m_sub_calls[i];
    }

    tails[i]->next = entry;
    entry->prev = tails[i];
    entry->next = nullptr;
    tails[i] = entry;
    ++ps.m_sub_entries[i];

    entry = next_entry;
  }
  return ps;
}

PartitionSet partition(HistoryList&& hl, const PartitionKeyMap& km,
                       const SpecDescriptor& spec)
{
  // keys are resolved once per operation: the call computes its dense
  // index and the matching return (always later in the walk) reuses it
  std::unordered_map<std::uint64_t, std::size_t> by_event_id;
  by_event_id.reserve(hl.n_calls());

  PartitionSet ps = partition(std::move(hl), km.n, [&](const EntryNode& e) {
    if (e.is_call()) {
      const std::size_t i = km.dense.at(spec.partition_key(e.op()));
      by_event_id.emplace(e.event->id, i);
      return i;
    }
    return by_event_id.at(e.event->id);
  });
  ps.m_keys = km.keys;
  return ps;
}

namespace {

CheckerOptions sub_options(const CheckerOptions& opts,
                           std::chrono::steady_clock::time_point deadline, bool timed)
{
  CheckerOptions sub = opts;
  sub.collect_witness = opts.collect_witness;
  if (timed) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    sub.time_budget = std::max(remaining, std::chrono::milliseconds{1});
  }
  return sub;
}

} // namespace

CheckResult check_compositional(const History& h, const SpecDescriptor& spec,
                                const CheckerOptions& opts)
{
  if (!spec.partitionable())
    throw SpecError("spec " + spec.name() + " is not partitionable");

  const auto started = std::chrono::steady_clock::now();
  const bool timed = opts.time_budget.count() > 0;
  const auto deadline = started + opts.time_budget;

  PartitionKeyMap km = count_partitions(h, spec);

  CheckResult result;
  result.n_partitions = km.n;
  result.degenerate_partitioning = km.n <= 1;

  if (km.n == 0) { // empty history
    result.verdict = Verdict::Linearizable;
    if (opts.collect_witness)
      result.witness.emplace();
    return result;
  }

  PartitionSet ps = partition(build_linked(h), km, spec);

  std::vector<PartitionOutcome> outcomes(ps.size());
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned requested = opts.parallel == 0 ? hardware : opts.parallel;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(requested, ps.size()));

  auto run_sub = [&](std::size_t i) {
    outcomes[i].key = ps.key(i);
    if (timed && std::chrono::steady_clock::now() >= deadline) {
      outcomes[i].verdict = Verdict::Timeout;
      return;
    }
    CheckResult sub = check_chain(ps.sub_head(i), ps.sub_calls(i), spec,
                                  sub_options(opts, deadline, timed));
    outcomes[i].verdict = sub.verdict;
    outcomes[i].stats = sub.stats;
    outcomes[i].witness = std::move(sub.witness);
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < ps.size(); ++i)
      run_sub(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < ps.size(); i = next.fetch_add(1))
          run_sub(i);
      });
    for (std::thread& t : pool)
      t.join();
  }

  // aggregate: the verdict does not depend on scheduling because every
  // sub-history is checked and the smallest failing index wins
  Verdict verdict = Verdict::Linearizable;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const PartitionOutcome& out = outcomes[i];
    result.stats.iterations += out.stats.iterations;
    result.stats.cache_insertions += out.stats.cache_insertions;
    result.stats.cache_hits += out.stats.cache_hits;
    result.stats.cache_evictions += out.stats.cache_evictions;
    result.stats.max_stack_height =
        std::max(result.stats.max_stack_height, out.stats.max_stack_height);
    result.stats.peak_cache_entries =
        std::max(result.stats.peak_cache_entries, out.stats.peak_cache_entries);

    if (out.verdict == Verdict::NotLinearizable && verdict != Verdict::NotLinearizable) {
      verdict = Verdict::NotLinearizable;
      result.failing_partition_key = out.key;
    } else if (out.verdict == Verdict::Timeout && verdict == Verdict::Linearizable) {
      verdict = Verdict::Timeout;
    }
  }

  result.verdict = verdict;
  result.partitions = std::move(outcomes);
  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

CheckResult run_algorithm(const History& h, const SpecDescriptor& spec, Algo algo,
                          const CheckerOptions& opts)
{
  CheckerOptions effective = opts;
  switch (algo) {
    case Algo::Wg:
      effective.cache_mode = CacheMode::None;
      break;
    case Algo::Wgl:
      effective.cache_mode = CacheMode::Unbounded;
      break;
    case Algo::WglLru:
      effective.cache_mode = CacheMode::Lru;
      break;
    case Algo::WglP:
      effective.cache_mode = CacheMode::Unbounded;
      return check_compositional(h, spec, effective);
  }

  HistoryList hl = build_linked(h);
  return check(hl, spec, effective);
}

}
