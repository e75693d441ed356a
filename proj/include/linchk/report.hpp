#pragma once

#include <string>

#include <json.hpp>

#include "linchk/bench.hpp"
#include "linchk/checker.hpp"

namespace linchk {

inline constexpr int report_schema_version = 1;

/// Stable machine-readable form of a check result. Field order is fixed
/// and the schema is versioned; timing fields are the only
/// run-dependent values.
nlohmann::ordered_json check_result_to_json(const CheckResult& result,
                                            Algo algo,
                                            const std::string& spec_name);

nlohmann::ordered_json bench_report_to_json(const BenchReport& report);

}
