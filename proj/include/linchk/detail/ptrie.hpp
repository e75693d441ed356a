#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>

namespace linchk::detail {

/// Node of a persistent nibble trie from uint64 keys to int64 values.
/// Updates path-copy O(depth) nodes and share the rest, so states built
/// from one another reference common subtrees.
///
/// Shape is canonical for a given key set: a subtree holding exactly one
/// key is always a leaf, and branch chains exist exactly where two or
/// more keys share lower nibbles. Structural equality therefore equals
/// content equality.
struct PTrieNode;
using PTrieNodePtr = std::shared_ptr<const PTrieNode>;

struct PTrieNode
{
  bool is_leaf{true};
  std::uint64_t key{0};
  std::int64_t value{0};
  std::array<PTrieNodePtr, 16> child{};
};

/// Value stored under key, or nullptr.
const std::int64_t* ptrie_find(const PTrieNodePtr& root, std::uint64_t key) noexcept;

/// Inserts or overwrites. Returns the original root unchanged when the
/// key is already present with the same value.
PTrieNodePtr ptrie_insert(const PTrieNodePtr& root, std::uint64_t key, std::int64_t value);

/// Removes the key if present; returns the original root otherwise.
PTrieNodePtr ptrie_erase(const PTrieNodePtr& root, std::uint64_t key);

bool ptrie_equal(const PTrieNodePtr& a, const PTrieNodePtr& b) noexcept;

void ptrie_for_each(const PTrieNodePtr& root,
                    const std::function<void(std::uint64_t, std::int64_t)>& fn);

}
