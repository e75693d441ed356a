#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace linchk {

/// Result payload of an operation: a boolean, a 64-bit integer, or the
/// distinguished "absent" value (what a map read of a never-written key
/// yields).
class Value
{
public:
  enum class Kind : std::uint8_t { Bool, Int, Absent };

  constexpr Value() noexcept = default;

  static constexpr Value boolean(bool b) noexcept
  {
    return Value{Kind::Bool, b ? 1 : 0};
  }

  static constexpr Value integer(std::int64_t v) noexcept
  {
    return Value{Kind::Int, v};
  }

  static constexpr Value absent() noexcept
  {
    return Value{};
  }

  constexpr Kind kind() const noexcept { return m_kind; }
  constexpr bool is_bool() const noexcept { return m_kind == Kind::Bool; }
  constexpr bool is_int() const noexcept { return m_kind == Kind::Int; }
  constexpr bool is_absent() const noexcept { return m_kind == Kind::Absent; }

  /// \pre: is_bool()
  constexpr bool as_bool() const noexcept { return m_payload != 0; }

  /// \pre: is_int()
  constexpr std::int64_t as_int() const noexcept { return m_payload; }

  friend constexpr bool operator==(const Value&, const Value&) noexcept = default;

private:
  constexpr Value(Kind kind, std::int64_t payload) noexcept
  : m_kind{kind}, m_payload{payload} {}

  Kind m_kind{Kind::Absent};
  std::int64_t m_payload{0};
};

std::string to_string(const Value& v);

/// One invocation: operation name, integer arguments and the eventual
/// result. The result is carried on both the call and the return record
/// of an operation.
struct OperationRecord
{
  std::string name;
  std::vector<std::int64_t> args;
  Value result;

  friend bool operator==(const OperationRecord&, const OperationRecord&) = default;
};

/// Renders e.g. "insert(1) : true".
std::string to_string(const OperationRecord& op);

enum class EventKind : std::uint8_t { Call, Ret };

/// One call or return record; the unit of a history. A call and a return
/// with the same id are matching and carry equal object and operation.
struct Event
{
  EventKind kind{EventKind::Call};
  std::uint64_t id{0};
  std::string object;
  OperationRecord op;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A finite sequence of call and return events, totally ordered by
/// position.
struct History
{
  std::vector<Event> events;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }

  friend bool operator==(const History&, const History&) = default;
};

/// An operation labeled with the call event id it came from. Sequences
/// of these represent linearization orders: checker witnesses and oracle
/// enumerations.
struct SequencedOp
{
  std::uint64_t event_id{0};
  OperationRecord op;

  friend bool operator==(const SequencedOp&, const SequencedOp&) = default;
};

}
