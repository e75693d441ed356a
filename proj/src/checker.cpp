#include "linchk/checker.hpp"

#include <limits>
#include <optional>

#include "linchk/errors.hpp"

namespace linchk {

std::string_view to_string(Verdict v) noexcept
{
  switch (v) {
    case Verdict::Linearizable: return "linearizable";
    case Verdict::NotLinearizable: return "not-linearizable";
    case Verdict::Timeout: return "timeout";
  }
  return {};
}

std::string_view to_string(Algo a) noexcept
{
  switch (a) {
    case Algo::Wg: return "wg";
    case Algo::Wgl: return "wgl";
    case Algo::WglLru: return "wgl-lru";
    case Algo::WglP: return "wgl-p";
  }
  return {};
}

Algo parse_algo(std::string_view text)
{
  if (text == "wg")
    return Algo::Wg;
  if (text == "wgl")
    return Algo::Wgl;
  if (text == "wgl-lru")
    return Algo::WglLru;
  if (text == "wgl-p")
    return Algo::WglP;
  throw Error("unknown algorithm \"" + std::string{text} +
              "\" (expected wg, wgl, wgl-lru, or wgl-p)");
}

std::vector<SequencedOp> extract_witness(const CallsStack& calls)
{
  std::vector<SequencedOp> out;
  out.reserve(calls.size());
  for (const CallsStack::Item& item : calls.items())
    out.push_back(SequencedOp{item.entry->event->id, item.entry->op()});
  return out;
}

namespace {

#ifndef NDEBUG
std::vector<const EntryNode*> snapshot_chain(const EntryNode& head)
{
  std::vector<const EntryNode*> chain;
  for (const EntryNode* e = head.next; e != nullptr; e = e->next)
    chain.push_back(e);
  return chain;
}

bool chain_matches(const EntryNode& head, const std::vector<const EntryNode*>& expected)
{
  std::size_t i = 0;
  const EntryNode* prev = &head;
  for (const EntryNode* e = head.next; e != nullptr; e = e->next) {
    if (i >= expected.size() || e != expected[i] || e->prev != prev)
      return false;
    prev = e;
    ++i;
  }
  return i == expected.size();
}
#endif

} // namespace

CheckResult check_chain(EntryNode& head, std::size_t n_calls,
                        const SpecDescriptor& spec, const CheckerOptions& opts)
{
  const auto started = std::chrono::steady_clock::now();
  const bool timed = opts.time_budget.count() > 0;
  const auto deadline = started + opts.time_budget;
  const std::uint64_t max_iterations =
      opts.max_iterations == 0 ? std::numeric_limits<std::uint64_t>::max()
                               : opts.max_iterations;

  CheckResult result;
  CheckStats& stats = result.stats;

  SpecState state = spec.initial_state();
  Bitset linearized(n_calls);
  CallsStack calls(n_calls);
  std::optional<ConfigCache> cache;
  if (opts.cache_mode != CacheMode::None)
    cache.emplace(opts.cache_mode, opts.cache_capacity);

  // resolve every operation once; the search re-simulates entries many
  // times and must not pay for name dispatch each time
  std::vector<OpCode> op_codes(n_calls, OpCode::SetInsert);
  for (const EntryNode* e = head.next; e != nullptr; e = e->next)
    if (e->is_call())
      op_codes[e->entry_id] = spec.resolve(e->op());

#ifndef NDEBUG
  const auto initial_chain = snapshot_chain(head);
#endif

  EntryNode* cursor = head.next;
  Verdict verdict = Verdict::Linearizable;

  while (head.next != nullptr) {
    if (++stats.iterations > max_iterations ||
        (timed && (stats.iterations & 1023) == 0 &&
         std::chrono::steady_clock::now() >= deadline)) {
      verdict = Verdict::Timeout;
      break;
    }

    assert(cursor != nullptr);
    if (cursor->is_call()) {
      // simulate the entry's operation against the current state
      ApplyOutcome outcome = spec.apply(state, cursor->op(), op_codes[cursor->entry_id]);

      bool advance = false;
      if (outcome.is_linearizable) {
        if (cache.has_value()) {
          // membership test on the configuration that provisional
          // linearization would produce; the cache copies the bitset
          // only when the configuration is new
          linearized.set(cursor->entry_id);
          advance = cache->insert(linearized, linearized.hash(), outcome.state,
                                  state_hash(outcome.state));
          if (!advance)
            linearized.reset(cursor->entry_id);
        } else {
          advance = true;
          linearized.set(cursor->entry_id);
        }
      }

      if (advance) {
        // provisionally linearize: remember the pre-application state,
        // shorten the history, and restart from its beginning
        calls.push(cursor, std::move(state));
        state = std::move(outcome.state);
        stats.max_stack_height = std::max(stats.max_stack_height, calls.size());
        lift(cursor);
        cursor = head.next;
      } else {
        cursor = cursor->next;
      }
    } else {
      // return entry: everything before it must already be linearized
      if (calls.empty()) {
        verdict = Verdict::NotLinearizable;
#ifndef NDEBUG
        assert(chain_matches(head, initial_chain)); // all lifts undone
#endif
        break;
      }

      CallsStack::Item top = calls.pop();
      state = std::move(top.state);
      linearized.reset(top.entry->entry_id);
      unlift(top.entry);
      cursor = top.entry->next;
    }
  }

  result.verdict = verdict;
  if (verdict == Verdict::Linearizable) {
    assert(calls.size() == n_calls);
    if (opts.collect_witness)
      result.witness = extract_witness(calls);
  }

  if (cache.has_value()) {
    stats.cache_insertions = cache->insertions();
    stats.cache_hits = cache->hits();
    stats.cache_evictions = cache->evictions();
    stats.peak_cache_entries = cache->peak_size();
  }
  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

CheckResult check(HistoryList& hl, const SpecDescriptor& spec, const CheckerOptions& opts)
{
  return check_chain(hl.head(), hl.n_calls(), spec, opts);
}

}
