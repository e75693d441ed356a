#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "linchk/event.hpp"

namespace linchk {

/// Doubly-linked history cell. A node is a call entry exactly when
/// `match` is non-null; `match` then points at the matching return
/// entry. A call entry and its matching return share the same entry_id,
/// dense in [0, N) across call entries.
struct EntryNode
{
  EntryNode* prev{nullptr};
  EntryNode* next{nullptr};
  EntryNode* match{nullptr};
  std::uint32_t entry_id{0};
  const Event* event{nullptr};

  bool is_call() const noexcept { return match != nullptr; }

  const OperationRecord& op() const noexcept
  {
    assert(event != nullptr);
    return event->op;
  }
};

/// Owns the entry nodes of one history: a sentinel head whose `next`
/// points at the first real entry, followed by one node per event in
/// file order. Nodes keep stable addresses for the lifetime of the
/// list (moves included), so the checker may splice them freely.
class HistoryList
{
public:
  HistoryList() = default;
  HistoryList(HistoryList&&) noexcept = default;
  HistoryList& operator=(HistoryList&&) noexcept = default;
  HistoryList(const HistoryList&) = delete;
  HistoryList& operator=(const HistoryList&) = delete;

  EntryNode& head() noexcept
  {
    assert(!m_nodes.empty());
    return m_nodes.front();
  }

  const EntryNode& head() const noexcept
  {
    assert(!m_nodes.empty());
    return m_nodes.front();
  }

  /// First real entry, or nullptr for an empty history.
  EntryNode* first() noexcept { return m_nodes.empty() ? nullptr : m_nodes.front().next; }

  /// N: the number of call entries (half the number of events).
  std::size_t n_calls() const noexcept { return m_n_calls; }

  /// |H|: total events represented.
  std::size_t n_entries() const noexcept { return m_events.size(); }

private:
  friend HistoryList build_linked(const History& h);
  friend class PartitionSet;

  std::vector<Event> m_events;   // owned copy, addresses stable
  std::vector<EntryNode> m_nodes; // [0] is the sentinel head
  std::size_t m_n_calls{0};
};

/// Builds the linked representation of a complete, validated history.
/// entry_id is assigned densely in [0, N) by call order; each return
/// inherits its call's id.
HistoryList build_linked(const History& h);

/// Unlinks a call entry and its matching return from their neighbors.
/// The fields of the two lifted nodes themselves are left untouched, so
/// unlift can restore the list in constant time.
///
/// \pre: entry->is_call() and entry is currently linked.
void lift(EntryNode* entry) noexcept;

/// Reverts the most recent not-yet-undone lift of `entry` (LIFO
/// discipline across nested lifts).
///
/// \pre: entry->is_call()
void unlift(EntryNode* entry) noexcept;

}
