#include "linchk/spec.hpp"

#include <charconv>

#include "linchk/detail/hash.hpp"
#include "linchk/errors.hpp"

namespace linchk {

namespace detail {

/// Entry-level access to SpecState internals, shared by the three
/// specifications. Every mutation keeps the XOR hash and entry count in
/// step with the trie.
struct StateOps
{
  static const std::int64_t* find(const SpecState& s, std::int64_t key) noexcept
  {
    return ptrie_find(s.m_root, static_cast<std::uint64_t>(key));
  }

  static SpecState with_entry(const SpecState& s, std::int64_t key, std::int64_t value)
  {
    const std::int64_t* existing = find(s, key);
    if (existing != nullptr && *existing == value)
      return s;

    SpecState out;
    out.m_root = ptrie_insert(s.m_root, static_cast<std::uint64_t>(key), value);
    out.m_hash = s.m_hash ^ entry_token(key, value);
    out.m_count = s.m_count;
    if (existing != nullptr)
      out.m_hash ^= entry_token(key, *existing);
    else
      ++out.m_count;
    return out;
  }

  static SpecState without_entry(const SpecState& s, std::int64_t key)
  {
    const std::int64_t* existing = find(s, key);
    if (existing == nullptr)
      return s;

    SpecState out;
    out.m_root = ptrie_erase(s.m_root, static_cast<std::uint64_t>(key));
    out.m_hash = s.m_hash ^ entry_token(key, *existing);
    out.m_count = s.m_count - 1;
    return out;
  }

  static const PTrieNodePtr& root(const SpecState& s) noexcept { return s.m_root; }
};

} // namespace detail

namespace {

using detail::StateOps;

const std::vector<OpSignature> k_set_ops{{"insert", 1, OpCode::SetInsert},
                                         {"remove", 1, OpCode::SetRemove},
                                         {"contains", 1, OpCode::SetContains}};
const std::vector<OpSignature> k_map_ops{{"write", 2, OpCode::MapWrite},
                                         {"read", 1, OpCode::MapRead}};
const std::vector<OpSignature> k_array_ops{{"write", 2, OpCode::ArrayWrite},
                                           {"read", 1, OpCode::ArrayRead}};

} // namespace

std::uint64_t state_hash(const SpecState& s) noexcept
{
  return s.hash();
}

std::uint64_t entry_token(std::int64_t key, std::int64_t value) noexcept
{
  std::uint64_t k = detail::splitmix64(static_cast<std::uint64_t>(key) ^ 0xa0761d6478bd642full);
  return detail::splitmix64(k ^ static_cast<std::uint64_t>(value) ^ 0xe7037ed1a0b428dbull);
}

bool state_equal(const SpecState& a, const SpecState& b)
{
  if (a.m_count != b.m_count || a.m_hash != b.m_hash)
    return false;
  return detail::ptrie_equal(a.m_root, b.m_root);
}

SpecDescriptor SpecDescriptor::set()
{
  return SpecDescriptor{SpecKind::Set};
}

SpecDescriptor SpecDescriptor::map()
{
  return SpecDescriptor{SpecKind::Map};
}

SpecDescriptor SpecDescriptor::array(std::size_t length)
{
  if (length == 0)
    throw SpecError("array length must be positive");
  return SpecDescriptor{SpecKind::Array, length};
}

SpecDescriptor SpecDescriptor::parse(std::string_view text)
{
  if (text == "set")
    return set();
  if (text == "map")
    return map();
  if (text.starts_with("array:")) {
    std::string_view num = text.substr(6);
    std::size_t length = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), length);
    if (ec == std::errc{} && ptr == num.data() + num.size() && length > 0)
      return array(length);
    throw SpecError("bad array length in \"" + std::string{text} + "\"");
  }
  throw SpecError("unknown spec \"" + std::string{text} +
                  "\" (expected set, map, or array:<N>)");
}

const std::vector<OpSignature>& SpecDescriptor::operations() const noexcept
{
  switch (m_kind) {
    case SpecKind::Set: return k_set_ops;
    case SpecKind::Map: return k_map_ops;
    case SpecKind::Array: return k_array_ops;
  }
  return k_set_ops;
}

std::string SpecDescriptor::name() const
{
  switch (m_kind) {
    case SpecKind::Set: return "set";
    case SpecKind::Map: return "map";
    case SpecKind::Array: return "array:" + std::to_string(m_array_length);
  }
  return {};
}

void SpecDescriptor::check_operation(const OperationRecord& op) const
{
  resolve(op);
}

OpCode SpecDescriptor::resolve(const OperationRecord& op) const
{
  for (const OpSignature& sig : operations()) {
    if (sig.name != op.name)
      continue;
    if (op.args.size() != sig.arity)
      throw SpecError("operation \"" + op.name + "\" takes " +
                      std::to_string(sig.arity) + " argument(s), got " +
                      std::to_string(op.args.size()));
    if (m_kind == SpecKind::Array) {
      std::int64_t index = op.args[0];
      if (index < 0 || static_cast<std::uint64_t>(index) >= m_array_length)
        throw SpecError("array index " + std::to_string(index) +
                        " out of bounds [0, " + std::to_string(m_array_length) + ")");
    }
    return sig.code;
  }
  throw SpecError("unknown operation \"" + op.name + "\" for spec " + name());
}

ApplyOutcome SpecDescriptor::apply(const SpecState& s, const OperationRecord& op) const
{
  return apply(s, op, resolve(op));
}

ApplyOutcome SpecDescriptor::apply(const SpecState& s, const OperationRecord& op,
                                   OpCode code) const
{
  const std::int64_t key = op.args[0];

  switch (code) {
    case OpCode::SetInsert: {
      const bool executed = StateOps::find(s, key) == nullptr;
      if (op.result != Value::boolean(executed))
        return {false, s};
      return {true, executed ? StateOps::with_entry(s, key, 1) : s};
    }
    case OpCode::SetRemove: {
      const bool executed = StateOps::find(s, key) != nullptr;
      if (op.result != Value::boolean(executed))
        return {false, s};
      return {true, executed ? StateOps::without_entry(s, key) : s};
    }
    case OpCode::SetContains: {
      const bool present = StateOps::find(s, key) != nullptr;
      if (op.result != Value::boolean(present))
        return {false, s};
      return {true, s};
    }

    case OpCode::MapWrite:
    case OpCode::ArrayWrite: {
      // a write always takes effect and reports true
      if (op.result != Value::boolean(true))
        return {false, s};
      const std::int64_t value = op.args[1];
      if (code == OpCode::ArrayWrite && value == 0)
        return {true, StateOps::without_entry(s, key)}; // zero is the initial slot value
      return {true, StateOps::with_entry(s, key, value)};
    }

    case OpCode::MapRead:
    case OpCode::ArrayRead: {
      const std::int64_t* stored = StateOps::find(s, key);
      Value executed;
      if (code == OpCode::ArrayRead)
        executed = Value::integer(stored != nullptr ? *stored : 0);
      else
        executed = stored != nullptr ? Value::integer(*stored) : Value::absent();
      if (op.result != executed)
        return {false, s};
      return {true, s};
    }
  }
  return {false, s};
}

std::int64_t SpecDescriptor::partition_key(const OperationRecord& op) const
{
  if (!m_partitionable)
    throw SpecError("spec " + name() + " is not partitionable");
  check_operation(op);
  return op.args[0];
}

SpecDescriptor SpecDescriptor::without_partitioning() const
{
  SpecDescriptor copy = *this;
  copy.m_partitionable = false;
  return copy;
}

}
