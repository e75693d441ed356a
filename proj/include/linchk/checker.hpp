#pragma once

#include <cassert>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "linchk/config_cache.hpp"
#include "linchk/entry_list.hpp"
#include "linchk/spec.hpp"

namespace linchk {

enum class Verdict : std::uint8_t { Linearizable, NotLinearizable, Timeout };

std::string_view to_string(Verdict v) noexcept;

/// The four checker variants exposed on the command line.
enum class Algo : std::uint8_t { Wg, Wgl, WglLru, WglP };

std::string_view to_string(Algo a) noexcept;
Algo parse_algo(std::string_view text);

struct CheckerOptions
{
  /// None recovers the plain backtracking search (wg); Unbounded is the
  /// cached search (wgl); Lru bounds the cache at cache_capacity.
  CacheMode cache_mode{CacheMode::Unbounded};
  std::size_t cache_capacity{1024};

  /// Collect a linearization order on a Linearizable verdict.
  bool collect_witness{false};

  /// 0 = unlimited. When exhausted the verdict is Timeout, never a
  /// wrong boolean.
  std::uint64_t max_iterations{0};
  std::chrono::milliseconds time_budget{0};

  /// Compositional driver only: worker cap; 0 = hardware concurrency.
  unsigned parallel{0};
};

struct CheckStats
{
  std::uint64_t iterations{0};
  std::size_t max_stack_height{0};
  std::uint64_t cache_insertions{0};
  std::uint64_t cache_hits{0};
  std::uint64_t cache_evictions{0};
  /// Largest number of configurations resident in any single cache.
  std::size_t peak_cache_entries{0};
  double elapsed_seconds{0.0};
};

struct PartitionOutcome
{
  std::int64_t key{0};
  Verdict verdict{Verdict::Linearizable};
  CheckStats stats;
  std::optional<std::vector<SequencedOp>> witness;
};

struct CheckResult
{
  Verdict verdict{Verdict::Linearizable};
  std::optional<std::vector<SequencedOp>> witness;
  CheckStats stats;

  /// Compositional runs only. n_partitions == 0 means the check ran
  /// unpartitioned; degenerate_partitioning flags n <= 1, where the
  /// partitioned check collapses to a plain one.
  std::size_t n_partitions{0};
  bool degenerate_partitioning{false};
  std::optional<std::int64_t> failing_partition_key;
  std::vector<PartitionOutcome> partitions;
};

/// Bounded stack of provisionally linearized call entries, each paired
/// with the specification state that was current before the entry was
/// applied. Height never exceeds the number of call entries.
class CallsStack
{
public:
  struct Item
  {
    EntryNode* entry{nullptr};
    SpecState state;
  };

  explicit CallsStack(std::size_t capacity)
  : m_capacity{capacity}
  {
    m_items.reserve(capacity);
  }

  bool empty() const noexcept { return m_items.empty(); }
  std::size_t size() const noexcept { return m_items.size(); }

  void push(EntryNode* entry, SpecState state)
  {
    assert(entry != nullptr && entry->is_call());
    assert(m_items.size() < m_capacity);
    m_items.push_back(Item{entry, std::move(state)});
  }

  /// Removes and returns the top item.
  Item pop()
  {
    assert(!empty());
    Item item = std::move(m_items.back());
    m_items.pop_back();
    return item;
  }

  /// Bottom-to-top, i.e. linearization order.
  const std::vector<Item>& items() const noexcept { return m_items; }

private:
  std::size_t m_capacity;
  std::vector<Item> m_items;
};

/// The stack contents at a successful verdict, bottom-to-top: a
/// linearization order whose replay from the initial state succeeds at
/// every step.
std::vector<SequencedOp> extract_witness(const CallsStack& calls);

/// Decides linearizability of the chain hanging off `head` with respect
/// to `spec`. Backtracking search over provisional linearizations with
/// constant-time list surgery and (optionally) a configuration cache.
///
/// The chain is consumed on a Linearizable verdict and restored to its
/// initial shape on NotLinearizable; rebuild before re-checking.
///
/// \pre: the chain is a complete validated history with n_calls call
///       entries whose ids are dense in [0, n_calls).
CheckResult check_chain(EntryNode& head, std::size_t n_calls,
                        const SpecDescriptor& spec,
                        const CheckerOptions& opts = {});

CheckResult check(HistoryList& hl, const SpecDescriptor& spec,
                  const CheckerOptions& opts = {});

}
