#include "linchk/entry_list.hpp"

#include <unordered_map>

namespace linchk {

HistoryList build_linked(const History& h)
{
  HistoryList hl;
  hl.m_events = h.events;
  hl.m_nodes.resize(h.events.size() + 1); // [0] = sentinel head

  std::unordered_map<std::uint64_t, EntryNode*> open_calls;
  EntryNode* tail = &hl.m_nodes[0];
  std::uint32_t next_id = 0;

  for (std::size_t i = 0; i < hl.m_events.size(); ++i) {
    const Event& e = hl.m_events[i];
    EntryNode* node = &hl.m_nodes[i + 1];
    node->event = &e;
    node->prev = tail;
    tail->next = node;
    tail = node;

    if (e.kind == EventKind::Call) {
      node->entry_id = next_id++;
      open_calls.emplace(e.id, node);
    } else {
      auto it = open_calls.find(e.id);
      assert(it != open_calls.end()); // precondition: validated history
      EntryNode* call = it->second;
      call->match = node;
      node->entry_id = call->entry_id;
      open_calls.erase(it);
    }
  }

  assert(open_calls.empty());
  hl.m_n_calls = next_id;
  return hl;
}

void lift(EntryNode* entry) noexcept
{
  assert(entry != nullptr && entry->is_call());
  assert(entry->prev != nullptr && entry->prev->next == entry);

  EntryNode* match = entry->match;
  entry->prev->next = entry->next;
  entry->next->prev = entry->prev; // a call always has a later return
  match->prev->next = match->next;
  if (match->next != nullptr)
    match->next->prev = match->prev;
}

void unlift(EntryNode* entry) noexcept
{
  assert(entry != nullptr && entry->is_call());

  EntryNode* match = entry->match;
  match->prev->next = match;
  if (match->next != nullptr)
    match->next->prev = match;
  entry->prev->next = entry;
  entry->next->prev = entry;
}

}
