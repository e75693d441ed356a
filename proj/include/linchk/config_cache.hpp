#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>

#include "linchk/bitset.hpp"
#include "linchk/spec.hpp"

namespace linchk {

enum class CacheMode : std::uint8_t { None, Unbounded, Lru };

/// One memoized search configuration: the set of linearized call
/// entries plus the specification state they produced.
struct Configuration
{
  Bitset linearized;
  SpecState state;
};

/// Set of configurations keyed by (bitset hash, state hash) with full
/// equality confirmation, so hash collisions cannot flip a verdict.
/// In Lru mode the size is bounded: inserting at capacity evicts the
/// least recently inserted-or-hit configuration. Eviction can only cost
/// pruning work later, never soundness.
class ConfigCache
{
public:
  /// \pre: mode is Unbounded or Lru; capacity > 0 in Lru mode.
  ConfigCache(CacheMode mode, std::size_t capacity);

  /// True iff the configuration was not already present. A hit
  /// refreshes recency in Lru mode. Hashes are taken as arguments so
  /// callers that maintain them incrementally never pay to recompute
  /// them (and tests can force collisions).
  bool insert(const Bitset& linearized, std::uint64_t bitset_hash,
              const SpecState& state, std::uint64_t state_hash);

  bool insert(const Configuration& cfg);

  std::size_t size() const noexcept { return m_items.size(); }
  std::size_t peak_size() const noexcept { return m_peak_size; }
  std::uint64_t insertions() const noexcept { return m_insertions; }
  std::uint64_t hits() const noexcept { return m_hits; }
  std::uint64_t evictions() const noexcept { return m_evictions; }

private:
  struct Item
  {
    Configuration cfg;
    std::uint64_t key;
  };

  using ItemList = std::list<Item>;

  void evict_lru();

  CacheMode m_mode;
  std::size_t m_capacity;
  ItemList m_items; // front = most recently used
  std::unordered_multimap<std::uint64_t, ItemList::iterator> m_index;
  std::size_t m_peak_size{0};
  std::uint64_t m_insertions{0};
  std::uint64_t m_hits{0};
  std::uint64_t m_evictions{0};
};

}
