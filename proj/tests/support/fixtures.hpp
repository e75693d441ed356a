#pragma once

#include "linchk/event.hpp"

namespace linchk::testing {

inline Event ev(EventKind kind, std::uint64_t id, const char* name,
                std::vector<std::int64_t> args, Value result, const char* object = "set")
{
  Event e;
  e.kind = kind;
  e.id = id;
  e.object = object;
  e.op.name = name;
  e.op.args = std::move(args);
  e.op.result = result;
  return e;
}

/// Three overlapping set operations: insert(1):true and remove(1):false
/// run concurrently, contains(1):true strictly after both.
/// Sequence: call_1, call_2, ret_1, ret_2, call_3, ret_3.
inline History overlapping_trio()
{
  History h;
  h.events = {
      ev(EventKind::Call, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Call, 2, "remove", {1}, Value::boolean(false)),
      ev(EventKind::Ret, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 2, "remove", {1}, Value::boolean(false)),
      ev(EventKind::Call, 3, "contains", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 3, "contains", {1}, Value::boolean(true)),
  };
  return h;
}

/// The same operations as a sequential history in the order
/// insert(1):true; remove(1):false; contains(1):true — sequential but
/// inconsistent with a set, hence not linearizable.
inline History bad_sequential_trio()
{
  History h;
  h.events = {
      ev(EventKind::Call, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Call, 2, "remove", {1}, Value::boolean(false)),
      ev(EventKind::Ret, 2, "remove", {1}, Value::boolean(false)),
      ev(EventKind::Call, 3, "contains", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 3, "contains", {1}, Value::boolean(true)),
  };
  return h;
}

/// Stair-shaped overlap on two keys: insert(0):true, contains(0):true
/// and remove(1):false, each starting before the previous one returns.
/// Sequence: call_1, call_2, call_3, ret_1, ret_2, ret_3.
inline History two_key_stairs()
{
  History h;
  h.events = {
      ev(EventKind::Call, 1, "insert", {0}, Value::boolean(true)),
      ev(EventKind::Call, 2, "contains", {0}, Value::boolean(true)),
      ev(EventKind::Call, 3, "remove", {1}, Value::boolean(false)),
      ev(EventKind::Ret, 1, "insert", {0}, Value::boolean(true)),
      ev(EventKind::Ret, 2, "contains", {0}, Value::boolean(true)),
      ev(EventKind::Ret, 3, "remove", {1}, Value::boolean(false)),
  };
  return h;
}

/// Two fully concurrent insert(1):true operations; in either order the
/// second insert must return false, so no linearization exists.
inline History concurrent_double_insert()
{
  History h;
  h.events = {
      ev(EventKind::Call, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Call, 2, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 1, "insert", {1}, Value::boolean(true)),
      ev(EventKind::Ret, 2, "insert", {1}, Value::boolean(true)),
  };
  return h;
}

}
