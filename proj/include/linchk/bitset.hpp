#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "linchk/detail/hash.hpp"

namespace linchk {

/// Fixed-size bit vector over entry ids with an XOR-accumulated 64-bit
/// hash. Because XOR over fixed-size bit vectors forms an abelian
/// group, toggling bit i replaces the hash with hash ^ token(i): the
/// hash never has to be recomputed from the bits, no matter how long
/// the history is.
class Bitset
{
public:
  explicit Bitset(std::size_t n_bits)
  : m_blocks((n_bits + 63) / 64), m_n_bits{n_bits} {}

  std::size_t size_bits() const noexcept { return m_n_bits; }
  std::size_t popcount() const noexcept { return m_popcount; }
  std::uint64_t hash() const noexcept { return m_hash; }

  bool test(std::size_t i) const noexcept
  {
    assert(i < m_n_bits);
    return (m_blocks[i >> 6] >> (i & 63)) & 1u;
  }

  /// Flips bit i and folds token(i) into the hash. O(1).
  void toggle(std::size_t i) noexcept
  {
    assert(i < m_n_bits);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& block = m_blocks[i >> 6];
    m_popcount += (block & mask) ? -1 : +1;
    block ^= mask;
    m_hash ^= token(i);
  }

  /// \pre: !test(i)
  void set(std::size_t i) noexcept
  {
    assert(!test(i));
    toggle(i);
  }

  /// \pre: test(i)
  void reset(std::size_t i) noexcept
  {
    assert(test(i));
    toggle(i);
  }

  /// Per-position token; fixed constants, so hashes are reproducible.
  static std::uint64_t token(std::size_t i) noexcept
  {
    return detail::splitmix64(0x517cc1b727220a95ull ^ static_cast<std::uint64_t>(i));
  }

  friend bool operator==(const Bitset& a, const Bitset& b) noexcept
  {
    return a.m_n_bits == b.m_n_bits && a.m_blocks == b.m_blocks;
  }

private:
  std::vector<std::uint64_t> m_blocks;
  std::size_t m_n_bits{0};
  std::size_t m_popcount{0};
  std::uint64_t m_hash{0};
};

}
