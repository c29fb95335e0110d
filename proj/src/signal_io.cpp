#include "extgev/signal_io.hpp"

#include "extgev/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace extgev {

namespace {

Axis axis_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("axis must be an object");
  for (const char* key : {"center", "step", "count"})
    if (!j.contains(key) || !j.at(key).is_number()) throw std::invalid_argument(std::string("axis.") + key + " must be a number");
  if (!j.at("count").is_number_integer()) throw std::invalid_argument("axis.count must be an integer");
  return Axis{j.at("center").get<double>(), j.at("step").get<double>(), j.at("count").get<Index>()};
}

nlohmann::json values_json(const Eigen::MatrixXcd& m) {
  nlohmann::json v = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) v.push_back({m(i, k).real(), m(i, k).imag()});
  return v;
}

}  // namespace

SampledSignal signal_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("axis") || !j.contains("values"))
    throw std::invalid_argument("signal needs \"axis\" and \"values\"");
  SampledSignal s;
  s.axis = axis_from_json(j.at("axis"));
  const auto& vals = j.at("values");
  if (!vals.is_array()) throw std::invalid_argument("values must be an array");
  s.values.resize(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto& p = vals[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw std::invalid_argument("each value must be [re, im]");
    s.values(static_cast<Eigen::Index>(i)) = Complex(p[0].get<double>(), p[1].get<double>());
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const Axis& a) { return {{"center", a.center}, {"step", a.step}, {"count", a.count}}; }

nlohmann::json to_json(const SampledSignal& s) { return {{"axis", to_json(s.axis)}, {"values", values_json(s.values)}}; }

nlohmann::json to_json(const TFRResult& r) {
  return {{"kind", to_string(r.kind)},
          {"axes", {{"x", to_json(r.grid.x)}, {"omega", to_json(r.grid.omega)}}},
          {"quadrature",
           {{"step", r.quadrature.lattice.step},
            {"count", r.quadrature.lattice.count},
            {"center", r.quadrature.lattice.center},
            {"mode", to_string(r.quadrature.mode)},
            {"method", to_string(r.quadrature.method)}}},
          {"values", values_json(r.values)}};
}

SampledSignal read_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return signal_from_json(j);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

void write_csv(std::ostream& os, const TFRResult& r) {
  os << "x,omega,re,im\n";
  for (Index i = 0; i < r.grid.x.count; ++i) {
    for (Index m = 0; m < r.grid.omega.count; ++m) {
      const Complex v = r.values(i, m);
      os << format_double(r.grid.x.point(i)) << ',' << format_double(r.grid.omega.point(m)) << ','
         << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

}  // namespace extgev
