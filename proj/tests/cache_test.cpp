#include <doctest.h>

#include "linchk/config_cache.hpp"

using namespace linchk;

namespace {

SpecState singleton_state(std::int64_t key)
{
  const SpecDescriptor set = SpecDescriptor::set();
  OperationRecord op{"insert", {key}, Value::boolean(true)};
  return set.apply(set.initial_state(), op).state;
}

Configuration config(std::size_t bit, std::int64_t key)
{
  Bitset b{8};
  b.set(bit);
  return Configuration{b, singleton_state(key)};
}

} // namespace

TEST_CASE("insert has set semantics")
{
  ConfigCache cache{CacheMode::Unbounded, 0};
  Configuration a = config(0, 1);

  CHECK(cache.insert(a));
  CHECK(!cache.insert(a));
  CHECK(cache.size() == 1);
  CHECK(cache.insertions() == 1);
  CHECK(cache.hits() == 1);
}

TEST_CASE("equal hashes with unequal states both get stored")
{
  ConfigCache cache{CacheMode::Unbounded, 0};
  Bitset bits{8};
  SpecState s1 = singleton_state(1);
  SpecState s2 = singleton_state(2);
  REQUIRE(!state_equal(s1, s2));

  // identical injected hash pair: a forced collision
  CHECK(cache.insert(bits, 7, s1, 7));
  CHECK(cache.insert(bits, 7, s2, 7));
  CHECK(cache.size() == 2);

  // and lookups still tell them apart
  CHECK(!cache.insert(bits, 7, s1, 7));
  CHECK(!cache.insert(bits, 7, s2, 7));
}

TEST_CASE("capacity-1 LRU evicts on every new configuration")
{
  ConfigCache cache{CacheMode::Lru, 1};
  Configuration a = config(0, 1);
  Configuration b = config(1, 2);

  CHECK(cache.insert(a));
  CHECK(cache.insert(b)); // evicts a
  CHECK(cache.insert(a)); // a was gone, inserts again
  CHECK(cache.size() == 1);
  CHECK(cache.peak_size() == 1);
  CHECK(cache.evictions() == 2);
}

TEST_CASE("a hit refreshes recency")
{
  ConfigCache cache{CacheMode::Lru, 2};
  Configuration a = config(0, 1);
  Configuration b = config(1, 2);
  Configuration c = config(2, 3);

  CHECK(cache.insert(a));
  CHECK(cache.insert(b));
  CHECK(!cache.insert(a)); // hit: a becomes most recent
  CHECK(cache.insert(c));  // evicts b, not a
  CHECK(!cache.insert(a));
  CHECK(cache.insert(b)); // b really was evicted
  CHECK(cache.size() == 2);
  CHECK(cache.peak_size() == 2);
}
