#include "linchk/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "linchk/errors.hpp"

namespace linchk {

namespace {

struct OpSlot
{
  std::uint64_t event_id{0};
  const OperationRecord* op{nullptr};
  std::size_t call_pos{0};
  std::size_t ret_pos{0};
};

std::vector<OpSlot> collect_ops(const History& h)
{
  std::vector<OpSlot> ops;
  std::unordered_map<std::uint64_t, std::size_t> by_id;
  for (std::size_t pos = 0; pos < h.events.size(); ++pos) {
    const Event& e = h.events[pos];
    if (e.kind == EventKind::Call) {
      by_id.emplace(e.id, ops.size());
      ops.push_back(OpSlot{e.id, &e.op, pos, 0});
    } else {
      ops[by_id.at(e.id)].ret_pos = pos;
    }
  }
  return ops;
}

} // namespace

void for_each_linearization(const History& h, const OracleBudget& budget,
                            const std::function<bool(const std::vector<SequencedOp>&)>& visit)
{
  std::vector<OpSlot> ops = collect_ops(h);
  const std::size_t n = ops.size();
  if (n > budget.max_operations)
    throw BudgetError("history has " + std::to_string(n) +
                      " operations, oracle budget is " +
                      std::to_string(budget.max_operations));

  std::vector<SequencedOp> prefix;
  prefix.reserve(n);
  std::vector<bool> used(n, false);
  std::uint64_t emitted = 0;
  bool stop = false;

  // recursive selection of minimal available operations: an op may come
  // next when every op whose return precedes its call is already placed
  auto available = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && ops[j].ret_pos < ops[i].call_pos)
        return false;
    return true;
  };

  auto recurse = [&](auto&& self) -> void {
    if (stop)
      return;
    if (prefix.size() == n) {
      if (++emitted > budget.max_enumerations)
        throw BudgetError("linearization count exceeds oracle budget of " +
                          std::to_string(budget.max_enumerations));
      if (!visit(prefix))
        stop = true;
      return;
    }
    for (std::size_t i = 0; i < n && !stop; ++i) {
      if (used[i] || !available(i))
        continue;
      used[i] = true;
      prefix.push_back(SequencedOp{ops[i].event_id, *ops[i].op});
      self(self);
      prefix.pop_back();
      used[i] = false;
    }
  };
  recurse(recurse);
}

std::vector<std::vector<SequencedOp>> enumerate_linearizations(const History& h,
                                                               const OracleBudget& budget)
{
  std::vector<std::vector<SequencedOp>> out;
  for_each_linearization(h, budget, [&](const std::vector<SequencedOp>& seq) {
    out.push_back(seq);
    return true;
  });
  return out;
}

bool brute_force_check(const History& h, const SpecDescriptor& spec,
                       const OracleBudget& budget)
{
  bool found = false;
  for_each_linearization(h, budget, [&](const std::vector<SequencedOp>& seq) {
    SpecState s = spec.initial_state();
    for (const SequencedOp& step : seq) {
      ApplyOutcome outcome = spec.apply(s, step.op);
      if (!outcome.is_linearizable)
        return true; // keep enumerating
      s = std::move(outcome.state);
    }
    found = true;
    return false; // witness found, stop
  });
  return found;
}

}
