#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "linchk/checker.hpp"
#include "linchk/entry_list.hpp"
#include "linchk/history.hpp"
#include "linchk/spec.hpp"

namespace linchk {

/// Injective mapping from raw partition keys onto dense indices
/// [0, n), so the partitioner's modulo can never merge distinct keys.
struct PartitionKeyMap
{
  std::size_t n{0};
  std::unordered_map<std::int64_t, std::size_t> dense;
  std::vector<std::int64_t> keys; // dense index -> raw key
};

/// Counts the distinct partition keys occurring in `h`.
/// \pre: spec.partitionable()
PartitionKeyMap count_partitions(const History& h, const SpecDescriptor& spec);

/// Maps an entry to its dense partition index in [0, n). Must agree
/// between a call entry and its matching return.
using PartitionFn = std::function<std::size_t(const EntryNode&)>;

/// Disjoint sub-histories produced by one partitioning pass. Owns the
/// original list's node arena plus one sentinel head per sub-history;
/// each sub-history preserves the original relative order and keeps
/// matching calls and returns together, with entry ids renumbered
/// densely per sub-history.
class PartitionSet
{
public:
  std::size_t size() const noexcept { return m_heads.size(); }

  EntryNode& sub_head(std::size_t i) noexcept { return m_heads[i]; }
  std::size_t sub_calls(std::size_t i) const noexcept { return m_sub_calls[i]; }
  std::size_t sub_entries(std::size_t i) const noexcept { return m_sub_entries[i]; }

  /// Raw partition key for dense index i (when supplied).
  std::int64_t key(std::size_t i) const noexcept { return m_keys[i]; }

  PartitionSet(PartitionSet&&) noexcept = default;
  PartitionSet& operator=(PartitionSet&&) noexcept = default;

private:
  friend PartitionSet partition(HistoryList&& hl, std::size_t n, const PartitionFn& f);
  friend PartitionSet partition(HistoryList&& hl, const PartitionKeyMap& km,
                                const SpecDescriptor& spec);

  PartitionSet() = default;

  HistoryList m_arena; // consumed source list: owns events and nodes
  std::vector<EntryNode> m_heads;
  std::vector<std::size_t> m_sub_calls;
  std::vector<std::size_t> m_sub_entries;
  std::vector<std::int64_t> m_keys;
};

/// Splits the list into n sub-histories in one pass, appending each
/// entry to its partition's chain and rewiring prev/next. The source
/// list is consumed.
///
/// \pre: n >= 1 and f(e) == f(*e.match) for every call entry e.
PartitionSet partition(HistoryList&& hl, std::size_t n, const PartitionFn& f);

/// Convenience overload: partitions by spec.partition_key composed with
/// the dense key map, and records raw keys for reporting.
PartitionSet partition(HistoryList&& hl, const PartitionKeyMap& km,
                       const SpecDescriptor& spec);

/// Compositional driver: partitions `h` by key, checks every
/// sub-history independently (in parallel up to opts.parallel workers),
/// and aggregates. Linearizable iff every sub-history is; a negative
/// verdict names the smallest-index failing partition key; Timeout when
/// some sub-check exhausted its budget and none failed.
///
/// \pre: spec.partitionable(); h complete and validated.
CheckResult check_compositional(const History& h, const SpecDescriptor& spec,
                                const CheckerOptions& opts = {});

/// Runs one of the four command-line algorithms on a validated history.
CheckResult run_algorithm(const History& h, const SpecDescriptor& spec, Algo algo,
                          const CheckerOptions& opts = {});

}
