#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linchk/event.hpp"

namespace linchk {

/// Concurrent set implementation driven by the workload harness.
/// The two "correct" implementations are linearizable by construction;
/// the two faulty ones exist to produce real violations.
enum class ImplKind : std::uint8_t
{
  CoarseLockSet,  // one mutex around a std::set
  StripedLockSet, // per-stripe mutexes
  NonatomicSet,   // check-then-act race on insert/remove
  StaleReadSet,   // contains may read a stale snapshot
};

std::string_view to_string(ImplKind k) noexcept;
ImplKind parse_impl(std::string_view text);

struct OpMix
{
  unsigned insert{1};
  unsigned remove{1};
  unsigned contains{1};
};

struct WorkloadConfig
{
  unsigned threads{4};
  std::size_t ops_per_thread{5000};
  std::int64_t key_range{24};
  OpMix mix{};
  std::uint64_t seed{0};
  ImplKind impl{ImplKind::CoarseLockSet};
  std::string object_name{"set"};
};

/// Runs `threads` concurrent workers that issue pseudo-random set
/// operations against the selected implementation while a recorder
/// emits a complete history of length 2 * threads * ops_per_thread.
/// Per-thread operation streams are reproducible from the seed; the
/// interleaving is not.
History run_workload(const WorkloadConfig& cfg);

struct WorkloadTrace
{
  History history;
  /// Per-operation linearization stamp, indexed by event id; all zero
  /// when the implementation has no well-defined effect point (faulty
  /// implementations).
  std::vector<std::uint64_t> effect_stamps;
};

WorkloadTrace run_workload_traced(const WorkloadConfig& cfg);

/// True when the recorded order is consistent with the effect stamps:
/// whenever one operation's return precedes another's call in the log,
/// the first effect stamp is smaller. Vacuously true without stamps.
bool recorder_order_sound(const WorkloadTrace& trace);

/// The operation stream thread `thread_index` would issue under `cfg`,
/// as (name, key) pairs. Exposed so reproducibility is testable.
std::vector<std::pair<std::string, std::int64_t>> thread_op_stream(
    const WorkloadConfig& cfg, unsigned thread_index);

enum class ViolationKind : std::uint8_t { DoubleInsert, LostRemove, StaleContains };

/// Small handcrafted complete histories that are non-linearizable for
/// the named reason. Deterministic regression fixtures.
History make_violation(ViolationKind kind);

}
