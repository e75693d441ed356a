#include "linchk/detail/ptrie.hpp"

namespace linchk::detail {

namespace {

unsigned nibble(std::uint64_t key, unsigned shift) noexcept
{
  return static_cast<unsigned>((key >> shift) & 0xF);
}

PTrieNodePtr make_leaf(std::uint64_t key, std::int64_t value)
{
  auto node = std::make_shared<PTrieNode>();
  node->is_leaf = true;
  node->key = key;
  node->value = value;
  return node;
}

/// Splits a leaf against a new key, building single-child branch levels
/// while the nibbles still agree. The keys differ, so this terminates
/// before shift runs off the word.
PTrieNodePtr split_leaf(const PTrieNodePtr& leaf, std::uint64_t key, std::int64_t value,
                        unsigned shift)
{
  auto branch = std::make_shared<PTrieNode>();
  branch->is_leaf = false;
  unsigned a = nibble(leaf->key, shift);
  unsigned b = nibble(key, shift);
  if (a == b)
    branch->child[a] = split_leaf(leaf, key, value, shift + 4);
  else {
    branch->child[a] = leaf;
    branch->child[b] = make_leaf(key, value);
  }
  return branch;
}

PTrieNodePtr insert_at(const PTrieNodePtr& node, std::uint64_t key, std::int64_t value,
                       unsigned shift)
{
  if (node == nullptr)
    return make_leaf(key, value);

  if (node->is_leaf) {
    if (node->key == key)
      return node->value == value ? node : make_leaf(key, value);
    return split_leaf(node, key, value, shift);
  }

  unsigned n = nibble(key, shift);
  PTrieNodePtr updated = insert_at(node->child[n], key, value, shift + 4);
  if (updated == node->child[n])
    return node;
  auto branch = std::make_shared<PTrieNode>(*node);
  branch->child[n] = std::move(updated);
  return branch;
}

PTrieNodePtr erase_at(const PTrieNodePtr& node, std::uint64_t key, unsigned shift)
{
  if (node == nullptr)
    return nullptr;

  if (node->is_leaf)
    return node->key == key ? nullptr : node;

  unsigned n = nibble(key, shift);
  PTrieNodePtr updated = erase_at(node->child[n], key, shift + 4);
  if (updated == node->child[n])
    return node; // key was absent below

  auto branch = std::make_shared<PTrieNode>(*node);
  branch->child[n] = std::move(updated);

  // Keep the shape canonical: a subtree holding a single key is a leaf.
  PTrieNodePtr only;
  for (const PTrieNodePtr& c : branch->child) {
    if (c == nullptr)
      continue;
    if (only != nullptr)
      return branch; // two or more children remain
    only = c;
  }
  if (only != nullptr && only->is_leaf)
    return only;
  return branch;
}

} // namespace

const std::int64_t* ptrie_find(const PTrieNodePtr& root, std::uint64_t key) noexcept
{
  const PTrieNode* node = root.get();
  unsigned shift = 0;
  while (node != nullptr) {
    if (node->is_leaf)
      return node->key == key ? &node->value : nullptr;
    node = node->child[nibble(key, shift)].get();
    shift += 4;
  }
  return nullptr;
}

PTrieNodePtr ptrie_insert(const PTrieNodePtr& root, std::uint64_t key, std::int64_t value)
{
  return insert_at(root, key, value, 0);
}

PTrieNodePtr ptrie_erase(const PTrieNodePtr& root, std::uint64_t key)
{
  return erase_at(root, key, 0);
}

bool ptrie_equal(const PTrieNodePtr& a, const PTrieNodePtr& b) noexcept
{
  if (a == b)
    return true; // shared subtree
  if (a == nullptr || b == nullptr)
    return false;
  if (a->is_leaf != b->is_leaf)
    return false;
  if (a->is_leaf)
    return a->key == b->key && a->value == b->value;
  for (std::size_t i = 0; i < a->child.size(); ++i)
    if (!ptrie_equal(a->child[i], b->child[i]))
      return false;
  return true;
}

void ptrie_for_each(const PTrieNodePtr& root,
                    const std::function<void(std::uint64_t, std::int64_t)>& fn)
{
  if (root == nullptr)
    return;
  if (root->is_leaf) {
    fn(root->key, root->value);
    return;
  }
  for (const PTrieNodePtr& c : root->child)
    ptrie_for_each(c, fn);
}

}
