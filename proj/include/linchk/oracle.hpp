#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "linchk/event.hpp"
#include "linchk/spec.hpp"

namespace linchk {

/// Brute force is factorial in the worst case; the oracle refuses
/// inputs beyond these bounds instead of running unboundedly.
struct OracleBudget
{
  std::size_t max_operations{12};
  std::uint64_t max_enumerations{1'000'000};
};

/// Visits every total order of h's operations that extends
/// happens-before, exactly once each. Return false from the visitor to
/// stop early. Throws BudgetError when the budget is exceeded.
///
/// \pre: h is complete and validated.
void for_each_linearization(const History& h, const OracleBudget& budget,
                            const std::function<bool(const std::vector<SequencedOp>&)>& visit);

/// Materialized form of for_each_linearization.
std::vector<std::vector<SequencedOp>> enumerate_linearizations(
    const History& h, const OracleBudget& budget = {});

/// Reference decision procedure: true iff some enumerated linearization
/// replays all-true through the specification from its initial state.
/// Ground truth for small inputs; independent of the backtracking
/// checker.
bool brute_force_check(const History& h, const SpecDescriptor& spec,
                       const OracleBudget& budget = {});

}
