#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linchk/detail/ptrie.hpp"
#include "linchk/event.hpp"

namespace linchk {

namespace detail {
struct StateOps;
}

enum class SpecKind : std::uint8_t { Set, Map, Array };

/// Immutable sequential-specification state. All three built-in data
/// types store their contents in a shared persistent trie, so applying
/// an operation never disturbs earlier states and caching a state is a
/// reference, not a deep copy.
///
/// The 64-bit hash is an XOR accumulator over per-entry tokens:
/// adding or removing one entry updates it with a single XOR.
class SpecState
{
public:
  SpecState() = default;

  std::uint64_t hash() const noexcept { return m_hash; }

  /// Number of entries held (array states count written non-zero slots).
  std::size_t size() const noexcept { return m_count; }

private:
  friend struct detail::StateOps;
  friend bool state_equal(const SpecState& a, const SpecState& b);

  detail::PTrieNodePtr m_root;
  std::uint64_t m_hash{0};
  std::uint32_t m_count{0};
};

std::uint64_t state_hash(const SpecState& s) noexcept;

/// Structural equality. Hash and size are used as fast rejections; a
/// hash collision between unequal states is resolved by a full compare
/// and can never produce a wrong answer.
bool state_equal(const SpecState& a, const SpecState& b);

/// Token XOR-ed into a state hash for one (key, value) entry. Set
/// entries use value 1; array slots use value = stored integer.
std::uint64_t entry_token(std::int64_t key, std::int64_t value) noexcept;

struct ApplyOutcome
{
  bool is_linearizable{false};
  SpecState state;
};

/// Resolved operation dispatch code. The checker re-simulates the same
/// OperationRecord many times while backtracking; resolving it once
/// keeps string comparisons out of the search loop.
enum class OpCode : std::uint8_t
{
  SetInsert,
  SetRemove,
  SetContains,
  MapWrite,
  MapRead,
  ArrayWrite,
  ArrayRead,
};

struct OpSignature
{
  std::string_view name;
  unsigned arity{1};
  OpCode code{OpCode::SetInsert};
};

/// Executable sequential specification: set, map, or fixed-length
/// array. Decides, by replay, whether an operation with its recorded
/// result is legal in a given state.
class SpecDescriptor
{
public:
  static SpecDescriptor set();
  static SpecDescriptor map();
  static SpecDescriptor array(std::size_t length);

  /// Accepts "set", "map" or "array:<N>"; throws SpecError otherwise.
  static SpecDescriptor parse(std::string_view text);

  SpecKind kind() const noexcept { return m_kind; }
  std::size_t array_length() const noexcept { return m_array_length; }
  bool partitionable() const noexcept { return m_partitionable; }
  const std::vector<OpSignature>& operations() const noexcept;

  /// "set", "map" or "array:<N>".
  std::string name() const;

  /// Empty set, empty map, or all-zeros array.
  SpecState initial_state() const { return {}; }

  /// Throws SpecError when the operation name, arity, or array index is
  /// not accepted by this specification.
  void check_operation(const OperationRecord& op) const;

  /// Validates `op` fully and returns its dispatch code.
  OpCode resolve(const OperationRecord& op) const;

  /// Simulates `op` against state `s`. is_linearizable is true exactly
  /// when the sequential execution yields op.result; the returned state
  /// is the post-state on success and `s` itself on failure. `s` is
  /// never mutated.
  ApplyOutcome apply(const SpecState& s, const OperationRecord& op) const;

  /// Same, with the validation already done by resolve(op).
  ApplyOutcome apply(const SpecState& s, const OperationRecord& op, OpCode code) const;

  /// The key (set/map) or index (array) the operation touches.
  /// Matching calls and returns map to the same key because they carry
  /// the same OperationRecord. Throws SpecError when not partitionable.
  std::int64_t partition_key(const OperationRecord& op) const;

  /// Test hook: same descriptor with partitionable() forced off.
  SpecDescriptor without_partitioning() const;

private:
  explicit SpecDescriptor(SpecKind kind, std::size_t array_length = 0)
  : m_kind{kind}, m_array_length{array_length} {}

  SpecKind m_kind{SpecKind::Set};
  std::size_t m_array_length{0};
  bool m_partitionable{true};
};

}
