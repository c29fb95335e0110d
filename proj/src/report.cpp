#include "extgev/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#ifndef EXTGEV_VERSION
#define EXTGEV_VERSION "0.0.0"
#endif

namespace extgev {

namespace {

// JSON has no inf/nan: those become strings so the record survives a round trip.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

bool VerificationReport::add(CheckRecord r) {
  if (r.anchor.empty()) r.anchor = "plumbing";
  records.push_back(std::move(r));
  return records.back().pass;
}

std::string toolkit_version() { return EXTGEV_VERSION; }

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const CheckRecord& r) {
  return json{{"name", r.name},
              {"group", r.group},
              {"anchor", r.anchor},
              {"inputs", r.inputs},
              {"inputs_digest", digest(r.inputs)},
              {"measured", number(r.measured)},
              {"target", number(r.target)},
              {"tolerance", number(r.tolerance)},
              {"pass", r.pass}};
}

json to_json(const VerificationReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return json{{"suite", r.suite},     {"anchor", r.anchor.empty() ? "plumbing" : r.anchor},
              {"version", toolkit_version()}, {"config", r.config},
              {"pass", r.pass()},     {"records", records}};
}

json to_json(const TauFit& f) { return json{{"tau", number(f.tau)}, {"log_c", number(f.log_c)}}; }

json to_json(const DecayCheck& d) {
  return json{{"tau", number(d.tau)}, {"log_sup", number(d.log_sup)}, {"argmax", number(d.argmax)}, {"finite", d.finite}};
}

json to_json(const MembershipReport& r) {
  auto matrix = [](const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
      rows.push_back(row);
    }
    return rows;
  };
  json beurling_space = json::array();
  json beurling_frequency = json::array();
  for (const auto& d : r.beurling_space) beurling_space.push_back(to_json(d));
  for (const auto& d : r.beurling_frequency) beurling_frequency.push_back(to_json(d));
  return json{{"function", r.table.function_id},
              {"sigma", r.sigma},
              {"max_order", r.max_order},
              {"joint", to_json(r.joint)},
              {"decay", to_json(r.decay)},
              {"deriv", to_json(r.deriv)},
              {"fourier", to_json(r.fourier)},
              {"joint_l2", to_json(r.joint_l2)},
              {"joint_summed", to_json(r.joint_summed)},
              {"inflated", {{"tau", number(r.inflated_tau)}, {"log_c", number(r.inflated_log_c)}}},
              {"l2_with_inflated_sup_log_c", number(r.l2_with_inflated_sup_log_c)},
              {"sup_with_inflated_l2_log_c", number(r.sup_with_inflated_l2_log_c)},
              {"decay_base_tau", number(r.decay_base_tau)},
              {"space_decay", to_json(r.space_decay)},
              {"frequency_decay", to_json(r.frequency_decay)},
              {"beurling_space", beurling_space},
              {"beurling_frequency", beurling_frequency},
              {"seminorms_flagged", r.seminorms_flagged},
              {"sup_table", matrix(r.table.sup)},
              {"l2_table", matrix(r.table.l2)},
              {"fourier_table", matrix(r.fourier_table)}};
}

}  // namespace extgev
