#pragma once

#include <cstdint>

namespace linchk::detail {

/// SplitMix64 finalizer (Steele/Lea/Flood reference constants).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept
{
  return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

/// Deterministic pseudo-random stream with a fully specified algorithm,
/// so identical seeds regenerate identical streams on every platform.
class SplitMix64
{
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept
  : m_state{seed} {}

  constexpr std::uint64_t next() noexcept
  {
    m_state += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = m_state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Uniform-ish draw in [0, bound); bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept
  {
    return next() % bound;
  }

private:
  std::uint64_t m_state;
};

}
