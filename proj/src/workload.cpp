#include "linchk/workload.hpp"

#include <atomic>
#include <cassert>
#include <memory>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "linchk/detail/hash.hpp"
#include "linchk/errors.hpp"

namespace linchk {

std::string_view to_string(ImplKind k) noexcept
{
  switch (k) {
    case ImplKind::CoarseLockSet: return "coarse";
    case ImplKind::StripedLockSet: return "striped";
    case ImplKind::NonatomicSet: return "nonatomic";
    case ImplKind::StaleReadSet: return "stale";
  }
  return {};
}

ImplKind parse_impl(std::string_view text)
{
  if (text == "coarse")
    return ImplKind::CoarseLockSet;
  if (text == "striped")
    return ImplKind::StripedLockSet;
  if (text == "nonatomic")
    return ImplKind::NonatomicSet;
  if (text == "stale")
    return ImplKind::StaleReadSet;
  throw Error("unknown implementation \"" + std::string{text} +
              "\" (expected coarse, striped, nonatomic, or stale)");
}

namespace {

struct OpResult
{
  bool value{false};
  std::uint64_t stamp{0}; // linearization stamp; 0 when undefined
};

class ConcurrentSetImpl
{
public:
  virtual ~ConcurrentSetImpl() = default;
  virtual OpResult insert(std::int64_t key) = 0;
  virtual OpResult remove(std::int64_t key) = 0;
  virtual OpResult contains(std::int64_t key) = 0;
  virtual bool has_effect_stamps() const noexcept { return false; }
};

class CoarseLockSet final : public ConcurrentSetImpl
{
public:
  OpResult insert(std::int64_t key) override
  {
    std::lock_guard lock{m_mutex};
    return {m_set.insert(key).second, ++m_clock};
  }

  OpResult remove(std::int64_t key) override
  {
    std::lock_guard lock{m_mutex};
    return {m_set.erase(key) != 0, ++m_clock};
  }

  OpResult contains(std::int64_t key) override
  {
    std::lock_guard lock{m_mutex};
    return {m_set.count(key) != 0, ++m_clock};
  }

  bool has_effect_stamps() const noexcept override { return true; }

private:
  std::mutex m_mutex;
  std::set<std::int64_t> m_set;
  std::uint64_t m_clock{0};
};

class StripedLockSet final : public ConcurrentSetImpl
{
public:
  OpResult insert(std::int64_t key) override
  {
    Stripe& s = stripe(key);
    std::lock_guard lock{s.mutex};
    return {s.keys.insert(key).second, next_stamp()};
  }

  OpResult remove(std::int64_t key) override
  {
    Stripe& s = stripe(key);
    std::lock_guard lock{s.mutex};
    return {s.keys.erase(key) != 0, next_stamp()};
  }

  OpResult contains(std::int64_t key) override
  {
    Stripe& s = stripe(key);
    std::lock_guard lock{s.mutex};
    return {s.keys.count(key) != 0, next_stamp()};
  }

  bool has_effect_stamps() const noexcept override { return true; }

private:
  static constexpr std::size_t k_stripes = 16;

  struct Stripe
  {
    std::mutex mutex;
    std::unordered_set<std::int64_t> keys;
  };

  Stripe& stripe(std::int64_t key)
  {
    return m_stripes[static_cast<std::uint64_t>(key) % k_stripes];
  }

  std::uint64_t next_stamp() noexcept
  {
    return 1 + m_clock.fetch_add(1, std::memory_order_relaxed);
  }

  Stripe m_stripes[k_stripes];
  std::atomic<std::uint64_t> m_clock{0};
};

/// Faulty: the membership check and the mutation are separately locked,
/// so two concurrent inserts of the same key can both report success.
class NonatomicSet final : public ConcurrentSetImpl
{
public:
  OpResult insert(std::int64_t key) override
  {
    bool present;
    {
      std::lock_guard lock{m_mutex};
      present = m_set.count(key) != 0;
    }
    if (present)
      return {false, 0};
    std::this_thread::yield();
    {
      std::lock_guard lock{m_mutex};
      m_set.insert(key);
    }
    return {true, 0};
  }

  OpResult remove(std::int64_t key) override
  {
    bool present;
    {
      std::lock_guard lock{m_mutex};
      present = m_set.count(key) != 0;
    }
    if (!present)
      return {false, 0};
    std::this_thread::yield();
    {
      std::lock_guard lock{m_mutex};
      m_set.erase(key);
    }
    return {true, 0};
  }

  OpResult contains(std::int64_t key) override
  {
    std::lock_guard lock{m_mutex};
    return {m_set.count(key) != 0, 0};
  }

private:
  std::mutex m_mutex;
  std::unordered_set<std::int64_t> m_set;
};

/// Faulty: contains reads a snapshot that is only refreshed every few
/// mutations, so it can miss a completed insert or remove.
class StaleReadSet final : public ConcurrentSetImpl
{
public:
  StaleReadSet()
  : m_snapshot{std::make_shared<const std::unordered_set<std::int64_t>>()} {}

  OpResult insert(std::int64_t key) override { return mutate(key, true); }
  OpResult remove(std::int64_t key) override { return mutate(key, false); }

  OpResult contains(std::int64_t key) override
  {
    std::shared_ptr<const std::unordered_set<std::int64_t>> snap;
    {
      std::lock_guard lock{m_snapshot_mutex};
      snap = m_snapshot;
    }
    return {snap->count(key) != 0, 0};
  }

private:
  static constexpr std::uint64_t k_refresh_every = 4;

  OpResult mutate(std::int64_t key, bool insert)
  {
    std::lock_guard lock{m_mutex};
    bool changed = insert ? m_set.insert(key).second : m_set.erase(key) != 0;
    if (++m_mutations % k_refresh_every == 0) {
      auto snap = std::make_shared<const std::unordered_set<std::int64_t>>(m_set);
      std::lock_guard snap_lock{m_snapshot_mutex};
      m_snapshot = std::move(snap);
    }
    return {changed, 0};
  }

  std::mutex m_mutex;
  std::unordered_set<std::int64_t> m_set;
  std::uint64_t m_mutations{0};
  std::mutex m_snapshot_mutex;
  std::shared_ptr<const std::unordered_set<std::int64_t>> m_snapshot;
};

std::unique_ptr<ConcurrentSetImpl> make_impl(ImplKind kind)
{
  switch (kind) {
    case ImplKind::CoarseLockSet: return std::make_unique<CoarseLockSet>();
    case ImplKind::StripedLockSet: return std::make_unique<StripedLockSet>();
    case ImplKind::NonatomicSet: return std::make_unique<NonatomicSet>();
    case ImplKind::StaleReadSet: return std::make_unique<StaleReadSet>();
  }
  return nullptr;
}

/// Append-only event log shared by all workload threads. A call slot is
/// reserved before the implementation is invoked and the return slot
/// after it comes back, so the recorded order never claims an ordering
/// the execution did not have.
class Recorder
{
public:
  explicit Recorder(std::size_t n_ops)
  : m_ops(n_ops), m_slots(2 * n_ops) {}

  std::uint64_t begin_op(std::string name, std::int64_t key)
  {
    const std::uint64_t op_id = m_next_op.fetch_add(1, std::memory_order_relaxed);
    assert(op_id < m_ops.size());
    OpRow& row = m_ops[op_id];
    row.name = std::move(name);
    row.key = key;
    append(EventKind::Call, op_id);
    return op_id;
  }

  void end_op(std::uint64_t op_id, bool result, std::uint64_t stamp)
  {
    OpRow& row = m_ops[op_id];
    row.result = result;
    row.stamp = stamp;
    append(EventKind::Ret, op_id);
  }

  /// \pre: all worker threads joined
  WorkloadTrace finish(const std::string& object_name) &&
  {
    const std::size_t n_slots = m_cursor.load();
    assert(n_slots == m_slots.size());

    WorkloadTrace trace;
    trace.history.events.reserve(n_slots);
    trace.effect_stamps.assign(m_ops.size(), 0);

    for (std::size_t i = 0; i < n_slots; ++i) {
      const Slot& slot = m_slots[i];
      const OpRow& row = m_ops[slot.op_id];
      Event e;
      e.kind = slot.kind;
      e.id = slot.op_id;
      e.object = object_name;
      e.op.name = row.name;
      e.op.args = {row.key};
      e.op.result = Value::boolean(row.result);
      trace.history.events.push_back(std::move(e));
      trace.effect_stamps[slot.op_id] = row.stamp;
    }
    return trace;
  }

private:
  struct OpRow
  {
    std::string name;
    std::int64_t key{0};
    bool result{false};
    std::uint64_t stamp{0};
  };

  struct Slot
  {
    EventKind kind{EventKind::Call};
    std::uint64_t op_id{0};
  };

  void append(EventKind kind, std::uint64_t op_id)
  {
    const std::size_t i = m_cursor.fetch_add(1); // single total order of appends
    assert(i < m_slots.size());
    m_slots[i] = Slot{kind, op_id};
  }

  std::vector<OpRow> m_ops;
  std::vector<Slot> m_slots;
  std::atomic<std::uint64_t> m_next_op{0};
  std::atomic<std::size_t> m_cursor{0};
};

detail::SplitMix64 thread_rng(const WorkloadConfig& cfg, unsigned thread_index)
{
  return detail::SplitMix64{
      detail::splitmix64(cfg.seed ^ (0x51'7c'c1'b7'27'22'0a'95ull * (thread_index + 1)))};
}

const char* pick_op(const WorkloadConfig& cfg, detail::SplitMix64& rng)
{
  const unsigned total = cfg.mix.insert + cfg.mix.remove + cfg.mix.contains;
  const std::uint64_t r = rng.below(total);
  if (r < cfg.mix.insert)
    return "insert";
  if (r < cfg.mix.insert + cfg.mix.remove)
    return "remove";
  return "contains";
}

} // namespace

std::vector<std::pair<std::string, std::int64_t>> thread_op_stream(
    const WorkloadConfig& cfg, unsigned thread_index)
{
  detail::SplitMix64 rng = thread_rng(cfg, thread_index);
  std::vector<std::pair<std::string, std::int64_t>> stream;
  stream.reserve(cfg.ops_per_thread);
  for (std::size_t i = 0; i < cfg.ops_per_thread; ++i) {
    const char* name = pick_op(cfg, rng);
    stream.emplace_back(name, static_cast<std::int64_t>(rng.below(cfg.key_range)));
  }
  return stream;
}

WorkloadTrace run_workload_traced(const WorkloadConfig& cfg)
{
  if (cfg.key_range < 1)
    throw Error("key range must be at least 1");
  if (cfg.mix.insert + cfg.mix.remove + cfg.mix.contains == 0)
    throw Error("operation mix weights must not all be zero");

  std::unique_ptr<ConcurrentSetImpl> impl = make_impl(cfg.impl);
  Recorder recorder{cfg.threads * cfg.ops_per_thread};

  auto worker = [&](unsigned thread_index) {
    detail::SplitMix64 rng = thread_rng(cfg, thread_index);
    for (std::size_t i = 0; i < cfg.ops_per_thread; ++i) {
      const char* name = pick_op(cfg, rng);
      const auto key = static_cast<std::int64_t>(rng.below(cfg.key_range));

      const std::uint64_t op_id = recorder.begin_op(name, key);
      OpResult r;
      if (name[0] == 'i')
        r = impl->insert(key);
      else if (name[0] == 'r')
        r = impl->remove(key);
      else
        r = impl->contains(key);
      recorder.end_op(op_id, r.value, r.stamp);
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(cfg.threads);
  for (unsigned t = 0; t < cfg.threads; ++t)
    threads.emplace_back(worker, t);
  for (std::thread& t : threads)
    t.join();

  WorkloadTrace trace = std::move(recorder).finish(cfg.object_name);
  if (!impl->has_effect_stamps())
    trace.effect_stamps.assign(trace.effect_stamps.size(), 0);

  assert(recorder_order_sound(trace));
  return trace;
}

History run_workload(const WorkloadConfig& cfg)
{
  return run_workload_traced(cfg).history;
}

bool recorder_order_sound(const WorkloadTrace& trace)
{
  bool any = false;
  for (std::uint64_t s : trace.effect_stamps)
    any |= s != 0;
  if (!any)
    return true; // no stamps to compare against

  // sweeping the log: any operation whose return has been seen must
  // have taken effect before every operation called afterwards
  std::uint64_t max_returned_stamp = 0;
  for (const Event& e : trace.history.events) {
    const std::uint64_t stamp = trace.effect_stamps[e.id];
    if (e.kind == EventKind::Call) {
      if (stamp <= max_returned_stamp)
        return false;
    } else {
      max_returned_stamp = std::max(max_returned_stamp, stamp);
    }
  }
  return true;
}

namespace {

Event make_event(EventKind kind, std::uint64_t id, const char* name, std::int64_t key,
                 bool result)
{
  Event e;
  e.kind = kind;
  e.id = id;
  e.object = "set";
  e.op.name = name;
  e.op.args = {key};
  e.op.result = Value::boolean(result);
  return e;
}

} // namespace

History make_violation(ViolationKind kind)
{
  History h;
  switch (kind) {
    case ViolationKind::DoubleInsert:
      // two overlapping inserts of the same key both claim success
      h.events = {
          make_event(EventKind::Call, 1, "insert", 1, true),
          make_event(EventKind::Call, 2, "insert", 1, true),
          make_event(EventKind::Ret, 1, "insert", 1, true),
          make_event(EventKind::Ret, 2, "insert", 1, true),
      };
      break;

    case ViolationKind::LostRemove:
      // one completed insert, then two overlapping removes both succeed
      h.events = {
          make_event(EventKind::Call, 1, "insert", 1, true),
          make_event(EventKind::Ret, 1, "insert", 1, true),
          make_event(EventKind::Call, 2, "remove", 1, true),
          make_event(EventKind::Call, 3, "remove", 1, true),
          make_event(EventKind::Ret, 2, "remove", 1, true),
          make_event(EventKind::Ret, 3, "remove", 1, true),
      };
      break;

    case ViolationKind::StaleContains:
      // a completed insert followed by contains = false, nothing removed
      h.events = {
          make_event(EventKind::Call, 1, "insert", 1, true),
          make_event(EventKind::Ret, 1, "insert", 1, true),
          make_event(EventKind::Call, 2, "contains", 1, false),
          make_event(EventKind::Ret, 2, "contains", 1, false),
      };
      break;
  }
  return h;
}

}
