#include "linchk/history.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "linchk/errors.hpp"

namespace linchk {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(const Value& v)
{
  switch (v.kind()) {
    case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
    case Value::Kind::Int: return std::to_string(v.as_int());
    case Value::Kind::Absent: return "absent";
  }
  return {};
}

std::string to_string(const OperationRecord& op)
{
  std::string out = op.name;
  out += '(';
  for (std::size_t i = 0; i < op.args.size(); ++i) {
    if (i != 0)
      out += ", ";
    out += std::to_string(op.args[i]);
  }
  out += ") : ";
  out += to_string(op.result);
  return out;
}

namespace {

constexpr const char* k_fields[] = {"kind", "id", "obj", "op", "args", "result"};

Value parse_result(const json& j, std::size_t lineno)
{
  if (j.is_null())
    return Value::absent();
  if (j.is_boolean())
    return Value::boolean(j.get<bool>());
  if (j.is_number_integer())
    return Value::integer(j.get<std::int64_t>());
  throw ParseError(lineno, "\"result\" must be a boolean, an integer, or null");
}

json result_to_json(const Value& v)
{
  switch (v.kind()) {
    case Value::Kind::Bool: return v.as_bool();
    case Value::Kind::Int: return v.as_int();
    case Value::Kind::Absent: return nullptr;
  }
  return nullptr;
}

Event parse_event(const std::string& line, std::size_t lineno)
{
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(lineno, std::string{"not valid JSON: "} + e.what());
  }

  if (!j.is_object())
    throw ParseError(lineno, "record must be a JSON object");

  for (const auto& item : j.items()) {
    if (std::find(std::begin(k_fields), std::end(k_fields), item.key()) == std::end(k_fields))
      throw ParseError(lineno, "unknown field \"" + item.key() + "\"");
  }
  for (const char* field : k_fields) {
    if (!j.contains(field))
      throw ParseError(lineno, "missing field \"" + std::string{field} + "\"");
  }

  Event e;

  const json& kind = j["kind"];
  if (!kind.is_string())
    throw ParseError(lineno, "\"kind\" must be a string");
  if (kind == "call")
    e.kind = EventKind::Call;
  else if (kind == "ret")
    e.kind = EventKind::Ret;
  else
    throw ParseError(lineno, "unknown kind \"" + kind.get<std::string>() + "\"");

  if (!j["id"].is_number_unsigned())
    throw ParseError(lineno, "\"id\" must be a non-negative integer");
  e.id = j["id"].get<std::uint64_t>();

  if (!j["obj"].is_string())
    throw ParseError(lineno, "\"obj\" must be a string");
  e.object = j["obj"].get<std::string>();

  if (!j["op"].is_string())
    throw ParseError(lineno, "\"op\" must be a string");
  e.op.name = j["op"].get<std::string>();

  if (!j["args"].is_array())
    throw ParseError(lineno, "\"args\" must be an array of integers");
  for (const json& a : j["args"]) {
    if (!a.is_number_integer())
      throw ParseError(lineno, "\"args\" must be an array of integers");
    e.op.args.push_back(a.get<std::int64_t>());
  }

  e.op.result = parse_result(j["result"], lineno);
  return e;
}

bool blank(const std::string& line)
{
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

} // namespace

History parse_history(std::istream& in)
{
  History h;
  std::unordered_set<std::uint64_t> call_ids, ret_ids;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line))
      continue;

    Event e = parse_event(line, lineno);
    auto& seen = e.kind == EventKind::Call ? call_ids : ret_ids;
    if (!seen.insert(e.id).second)
      throw ParseError(lineno, "duplicate " +
                                   std::string{e.kind == EventKind::Call ? "call" : "ret"} +
                                   " id " + std::to_string(e.id));
    h.events.push_back(std::move(e));
  }
  return h;
}

History parse_history(const std::string& text)
{
  std::istringstream in{text};
  return parse_history(in);
}

History parse_history_file(const std::string& path)
{
  std::ifstream in{path};
  if (!in)
    throw ParseError("cannot open \"" + path + "\"");
  return parse_history(in);
}

void serialize_history(const History& h, std::ostream& out)
{
  for (const Event& e : h.events) {
    ordered_json j;
    j["kind"] = e.kind == EventKind::Call ? "call" : "ret";
    j["id"] = e.id;
    j["obj"] = e.object;
    j["op"] = e.op.name;
    j["args"] = e.op.args;
    j["result"] = result_to_json(e.op.result);
    out << j.dump() << '\n';
  }
}

std::string serialize_history(const History& h)
{
  std::ostringstream out;
  serialize_history(h, out);
  return out.str();
}

History validate(History h, PendingPolicy policy)
{
  std::unordered_map<std::uint64_t, std::size_t> open_calls; // id -> call index
  std::unordered_set<std::uint64_t> completed;

  for (std::size_t i = 0; i < h.events.size(); ++i) {
    const Event& e = h.events[i];
    if (e.kind == EventKind::Call) {
      if (open_calls.count(e.id) || completed.count(e.id))
        throw ValidationError("duplicate call id " + std::to_string(e.id));
      open_calls.emplace(e.id, i);
    } else {
      auto it = open_calls.find(e.id);
      if (it == open_calls.end())
        throw ValidationError("return without matching call (id " +
                              std::to_string(e.id) + ")");
      const Event& call = h.events[it->second];
      if (call.object != e.object || call.op != e.op)
        throw ValidationError("matching events with unequal object/operation (id " +
                              std::to_string(e.id) + ")");
      completed.insert(e.id);
      open_calls.erase(it);
    }
  }

  if (!open_calls.empty()) {
    if (policy == PendingPolicy::Reject) {
      std::uint64_t id = open_calls.begin()->first;
      throw ValidationError("pending call (id " + std::to_string(id) +
                            "); pass PendingPolicy::Drop to discard pending calls");
    }
    std::vector<Event> kept;
    kept.reserve(h.events.size());
    for (std::size_t i = 0; i < h.events.size(); ++i) {
      auto it = open_calls.find(h.events[i].id);
      bool pending_call = h.events[i].kind == EventKind::Call &&
                          it != open_calls.end() && it->second == i;
      if (!pending_call)
        kept.push_back(std::move(h.events[i]));
    }
    h.events = std::move(kept);
  }

  if (!HappensBefore::from_history(h).is_interval_order())
    throw ValidationError("happens-before is not an interval order");

  return h;
}

HappensBefore HappensBefore::from_history(const History& h)
{
  HappensBefore hb;
  hb.m_interval_backed = true;

  for (std::size_t pos = 0; pos < h.events.size(); ++pos) {
    const Event& e = h.events[pos];
    if (e.kind == EventKind::Call) {
      hb.m_dense.emplace(e.id, hb.m_ids.size());
      hb.m_ids.push_back(e.id);
      hb.m_call_pos.push_back(pos);
      hb.m_ret_pos.push_back(0);
    } else {
      auto it = hb.m_dense.find(e.id);
      assert(it != hb.m_dense.end()); // complete history
      hb.m_ret_pos[it->second] = pos;
    }
  }
  return hb;
}

HappensBefore HappensBefore::from_pairs(
    std::vector<std::uint64_t> ids,
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs)
{
  HappensBefore hb;
  hb.m_ids = std::move(ids);
  for (std::size_t i = 0; i < hb.m_ids.size(); ++i)
    hb.m_dense.emplace(hb.m_ids[i], i);

  const std::size_t n = hb.m_ids.size();
  const std::size_t words = (n + 63) / 64;
  hb.m_pred.assign(n, std::vector<std::uint64_t>(words, 0));
  for (const auto& [before, after] : pairs) {
    std::size_t b = hb.index_of(before);
    std::size_t a = hb.index_of(after);
    hb.m_pred[a][b >> 6] |= std::uint64_t{1} << (b & 63);
  }
  return hb;
}

std::size_t HappensBefore::index_of(std::uint64_t id) const
{
  auto it = m_dense.find(id);
  assert(it != m_dense.end());
  return it->second;
}

bool HappensBefore::ordered(std::uint64_t before, std::uint64_t after) const
{
  std::size_t b = index_of(before);
  std::size_t a = index_of(after);
  if (m_interval_backed)
    return m_ret_pos[b] < m_call_pos[a];
  return (m_pred[a][b >> 6] >> (b & 63)) & 1u;
}

bool HappensBefore::concurrent(std::uint64_t a, std::uint64_t b) const
{
  return a != b && !ordered(a, b) && !ordered(b, a);
}

bool HappensBefore::is_interval_order() const
{
  // An order is an interval order iff the strict-predecessor sets are
  // totally ordered by inclusion (equivalently: no 2+2 sub-order).
  if (m_interval_backed) {
    // pred(c) = { x : ret(x) < call(c) }. Sweeping calls by call
    // position, each predecessor set must contain every earlier one,
    // i.e. the count of returns seen before the call must be
    // nondecreasing.
    std::vector<std::size_t> order(m_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m_call_pos[a] < m_call_pos[b]; });

    std::vector<std::size_t> rets = m_ret_pos;
    std::sort(rets.begin(), rets.end());

    std::size_t prev_count = 0;
    for (std::size_t i : order) {
      auto bound = std::lower_bound(rets.begin(), rets.end(), m_call_pos[i]);
      std::size_t count = static_cast<std::size_t>(bound - rets.begin());
      if (count < prev_count)
        return false;
      prev_count = count;
    }
    return true;
  }

  const std::size_t n = m_ids.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;

  auto count_bits = [&](const std::vector<std::uint64_t>& row) {
    std::size_t c = 0;
    for (std::uint64_t w : row)
      c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return count_bits(m_pred[a]) < count_bits(m_pred[b]);
  });

  for (std::size_t i = 1; i < n; ++i) {
    const auto& small = m_pred[order[i - 1]];
    const auto& big = m_pred[order[i]];
    for (std::size_t w = 0; w < small.size(); ++w)
      if ((small[w] & ~big[w]) != 0)
        return false; // not nested: a 2+2 exists
  }
  return true;
}

HappensBefore derive_happens_before(const History& h)
{
  return HappensBefore::from_history(h);
}

}
