#include "linchk/config_cache.hpp"

#include <cassert>

#include "linchk/detail/hash.hpp"

namespace linchk {

ConfigCache::ConfigCache(CacheMode mode, std::size_t capacity)
: m_mode{mode}, m_capacity{capacity}
{
  assert(mode != CacheMode::None);
  assert(mode != CacheMode::Lru || capacity > 0);
}

bool ConfigCache::insert(const Bitset& linearized, std::uint64_t bitset_hash,
                         const SpecState& state, std::uint64_t state_hash_)
{
  const std::uint64_t key = detail::hash_combine(bitset_hash, state_hash_);

  auto [lo, hi] = m_index.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    Item& item = *it->second;
    if (item.cfg.linearized == linearized && state_equal(item.cfg.state, state)) {
      ++m_hits;
      if (m_mode == CacheMode::Lru)
        m_items.splice(m_items.begin(), m_items, it->second);
      return false;
    }
  }

  // evict first so size never exceeds capacity, even transiently
  if (m_mode == CacheMode::Lru && m_items.size() == m_capacity)
    evict_lru();

  m_items.push_front(Item{Configuration{linearized, state}, key});
  m_index.emplace(key, m_items.begin());
  ++m_insertions;

  m_peak_size = std::max(m_peak_size, m_items.size());
  return true;
}

bool ConfigCache::insert(const Configuration& cfg)
{
  return insert(cfg.linearized, cfg.linearized.hash(), cfg.state, state_hash(cfg.state));
}

void ConfigCache::evict_lru()
{
  assert(!m_items.empty());
  auto victim = std::prev(m_items.end());

  auto [lo, hi] = m_index.equal_range(victim->key);
  for (auto it = lo; it != hi; ++it) {
    if (it->second == victim) {
      m_index.erase(it);
      break;
    }
  }
  m_items.pop_back();
  ++m_evictions;
}

}
