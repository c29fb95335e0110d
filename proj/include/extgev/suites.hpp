#pragma once

#include "extgev/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace extgev {

struct SuiteOptions {
  std::uint64_t seed = 20240917;
};

/// weights, lambert, associated, membership, tfr.
const std::vector<std::string>& suite_ids();

/// Runs one suite. Throws std::invalid_argument for an unknown id.
VerificationReport run_suite(const std::string& id, const SuiteOptions& opts = {});

/// "all" runs every suite in suite_ids() order.
std::vector<VerificationReport> run_suites(const std::string& id, const SuiteOptions& opts = {});

}  // namespace extgev
