#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linchk/event.hpp"

namespace linchk {

/// Reads the JSONL wire format, one event per line:
///
///   {"kind":"call","id":1,"obj":"set","op":"insert","args":[1],"result":true}
///
/// `result` is a boolean, an integer, or null (absent) and appears on
/// both the call and the return record. Unknown extra fields are
/// rejected. Throws ParseError with the offending line number.
History parse_history(std::istream& in);
History parse_history(const std::string& text);
History parse_history_file(const std::string& path);

/// Canonical serialization: fixed field order, one compact JSON object
/// per line. parse_history(serialize_history(h)) == h.
void serialize_history(const History& h, std::ostream& out);
std::string serialize_history(const History& h);

/// What to do with calls that never returned.
enum class PendingPolicy : std::uint8_t { Reject, Drop };

/// Checks that every return has a matching earlier call with equal
/// object and operation, resolves pending calls per `policy` (Reject
/// throws, Drop removes them), and verifies that the induced
/// happens-before relation is an interval order. Returns the possibly
/// trimmed history.
History validate(History h, PendingPolicy policy = PendingPolicy::Reject);

/// Happens-before over call event ids: a call precedes another when its
/// matching return occurs before the other call in the sequence.
/// Unordered distinct calls are concurrent.
class HappensBefore
{
public:
  /// Derives the relation from a complete history. Backed by interval
  /// positions, so queries are O(1) and arbitrarily large histories are
  /// fine.
  static HappensBefore from_history(const History& h);

  /// Builds from an explicit, transitively closed, irreflexive set of
  /// ordered pairs. Intended for small hand-built relations in tests.
  static HappensBefore from_pairs(
      std::vector<std::uint64_t> ids,
      const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

  bool ordered(std::uint64_t before, std::uint64_t after) const;
  bool concurrent(std::uint64_t a, std::uint64_t b) const;

  /// True when no four calls form the forbidden 2+2 sub-order
  /// (x < y, u < v, but neither x < v nor u < y). Relations derived
  /// from an event sequence always pass; explicit pair relations can
  /// fail.
  bool is_interval_order() const;

  const std::vector<std::uint64_t>& ids() const noexcept { return m_ids; }

private:
  HappensBefore() = default;

  std::size_t index_of(std::uint64_t id) const;

  std::vector<std::uint64_t> m_ids;
  std::unordered_map<std::uint64_t, std::size_t> m_dense;

  // interval backing (from_history)
  bool m_interval_backed{false};
  std::vector<std::size_t> m_call_pos;
  std::vector<std::size_t> m_ret_pos;

  // explicit backing (from_pairs): predecessor bit rows, m_ids-indexed
  std::vector<std::vector<std::uint64_t>> m_pred;
};

HappensBefore derive_happens_before(const History& h);

}
