#pragma once

#include "extgev/testfn.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace extgev {

using nlohmann::json;

/// One measured check. `anchor` names the mathematical statement checked, or "plumbing".
struct CheckRecord {
  std::string name;
  std::string group;
  std::string anchor;
  std::string inputs;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::string anchor;
  std::vector<CheckRecord> records;
  json config = json::object();

  bool pass() const;
  /// Appends a record; returns its pass flag.
  bool add(CheckRecord r);
};

std::string toolkit_version();

/// FNV-1a 64-bit digest of the canonical input string, hex encoded.
std::string digest(const std::string& text);

json to_json(const CheckRecord& r);
json to_json(const VerificationReport& r);
json to_json(const TauFit& f);
json to_json(const DecayCheck& d);
json to_json(const MembershipReport& r);

/// "%.17g"; non-finite values become "nan", "inf", "-inf".
std::string format_double(double v);

}  // namespace extgev
