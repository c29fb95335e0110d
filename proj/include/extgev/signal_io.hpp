#pragma once

#include "extgev/tfr.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace extgev {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"axis": {"center", "step", "count"}, "values": [[re, im], ...]}; throws std::invalid_argument on schema violations.
SampledSignal signal_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Axis& a);
nlohmann::json to_json(const SampledSignal& s);

/// The signal schema with "axes" {"x", "omega"}, row-major values (x-major), "kind" and "quadrature".
nlohmann::json to_json(const TFRResult& r);

SampledSignal read_signal(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Header x,omega,re,im then one row per grid point, x-major.
void write_csv(std::ostream& os, const TFRResult& r);

}  // namespace extgev
