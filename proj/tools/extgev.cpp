// extgev: command-line front end for the sequence, associated-function, membership and
// time-frequency routines.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or I/O error,
// 3 lattice misalignment in fast mode.

#include "extgev/associated.hpp"
#include "extgev/lambertw.hpp"
#include "extgev/report.hpp"
#include "extgev/signal_io.hpp"
#include "extgev/suites.hpp"
#include "extgev/testfn.hpp"
#include "extgev/tfr.hpp"
#include "extgev/weights.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace extgev;

constexpr int kOk = 0;
constexpr int kSuiteFailed = 1;
constexpr int kBadInput = 2;
constexpr int kLattice = 3;

// Writes to the file when a path is given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

struct WeightsArgs {
  double tau = 1.0;
  double sigma = 2.0;
  Index pmax = 50;
  std::string format = "csv";
  std::string out;
};

int cmd_weights(const WeightsArgs& a) {
  const WeightParams params(a.tau, a.sigma);
  const auto cond = check_conditions(params, a.pmax);
  std::ostringstream os;
  if (a.format == "csv") {
    os << "p,log_m,log_ratio,log_term_bound\n";
    for (Index p = 0; p <= a.pmax; ++p) {
      const double lm = log_weight(p, params);
      // ln(M_{p-1}/M_p) and its bound -tau (p-1)^{s-1} ln(2p), both undefined at p = 0
      const double ratio = p == 0 ? std::nan("") : log_weight(p - 1, params) - lm;
      // 0.0 - x so that p = 1 prints 0, not -0
      const double bound = p == 0 ? std::nan("")
                                  : 0.0 - a.tau * std::pow(static_cast<double>(p - 1), a.sigma - 1.0) * std::log(2.0 * p);
      os << p << ',' << format_double(lm) << ',' << format_double(ratio) << ',' << format_double(bound) << '\n';
    }
  } else {
    json rows = json::array();
    for (Index p = 0; p <= a.pmax; ++p) rows.push_back({{"p", p}, {"log_m", log_weight(p, params)}});
    json j{{"tau", a.tau},
           {"sigma", a.sigma},
           {"pmax", a.pmax},
           {"table", rows},
           {"conditions",
            {{"log_convex", cond.log_convex},
             {"superadditive", cond.superadditive},
             {"term_bound", cond.m3_term_bound_holds},
             {"power_inequality", cond.power_inequality},
             {"m2_log_constant", cond.m2_log_constant},
             {"m2_tail_certified", cond.m2_tail_certified},
             {"m2prime_log_constant", cond.m2prime_log_constant},
             {"m2prime_tail_certified", cond.m2prime_tail_certified},
             {"almost_increasing_log_constant", cond.almost_increasing_log_constant},
             {"m3_partial_sum", cond.m3_partial_sums(cond.m3_partial_sums.size() - 1)},
             {"all_pass", cond.all_pass()}}}};
    os << j.dump(2) << '\n';
  }
  emit(a.out, os.str());
  return kOk;
}

struct AssocArgs {
  double tau = 1.0;
  double sigma = 2.0;
  std::vector<double> xs;
  std::vector<Index> komatsu;
  bool sandwich = false;
  std::string out;
};

int cmd_assoc(const AssocArgs& a) {
  const WeightParams params(a.tau, a.sigma);
  std::ostringstream os;
  if (!a.xs.empty()) {
    os << "x,T,argmax,saturated\n";
    for (double x : a.xs) {
      const auto v = associated_value(x, params);
      os << format_double(x) << ',' << format_double(v.value) << ',' << v.argmax << ',' << v.saturated << '\n';
    }
  }
  if (!a.komatsu.empty()) {
    os << "p,log_dual,log_m\n";
    for (Index p : a.komatsu)
      os << p << ',' << format_double(komatsu_dual(p, params).log_value) << ',' << format_double(log_weight(p, params))
         << '\n';
  }
  if (a.sandwich) {
    const auto grid = log_grid(2.0, 1e8, 400);
    const auto fit = fit_sandwich(params, grid);
    os << "A,B,t_min,t_max,validation_points,validation_violations\n"
       << format_double(fit.a) << ',' << format_double(fit.b) << ',' << format_double(fit.t_min) << ','
       << format_double(fit.t_max) << ',' << fit.validation_points << ',' << fit.validation_violations << '\n';
  }
  emit(a.out, os.str());
  return kOk;
}

int cmd_lambert(const std::vector<double>& xs, const std::string& out) {
  std::ostringstream os;
  os << "x,W,residual,iterations\n";
  for (double x : xs) {
    const auto e = lambert_w(x);
    os << format_double(x) << ',' << format_double(e.w) << ',' << format_double(e.residual) << ',' << e.iterations
       << '\n';
  }
  emit(out, os.str());
  return kOk;
}

struct TfrArgs {
  std::string kind = "grossmann-royer";
  std::string signal;
  std::string window;
  std::string mode = "fast";
  std::string format = "json";
  std::string out;
  std::optional<double> x_center, x_step, w_center, w_step;
  std::optional<Index> x_count, w_count;
};

int cmd_tfr(const TfrArgs& a) {
  const TfrKind kind = parse_kind(a.kind);
  const Method method = parse_method(a.mode);
  const SampledSignal f = read_signal(a.signal);
  const SampledSignal g = a.window.empty() ? f : read_signal(a.window);
  PhaseSpaceGrid grid = default_grid(kind, f.axis);
  if (a.x_center) grid.x.center = *a.x_center;
  if (a.x_step) grid.x.step = *a.x_step;
  if (a.x_count) grid.x.count = *a.x_count;
  if (a.w_center) grid.omega.center = *a.w_center;
  if (a.w_step) grid.omega.step = *a.w_step;
  if (a.w_count) grid.omega.count = *a.w_count;
  const TFRResult r = compute(kind, Evaluator(f), Evaluator(g), grid, method);
  std::ostringstream os;
  if (a.format == "csv")
    write_csv(os, r);
  else
    os << to_json(r).dump(2) << '\n';
  emit(a.out, os.str());
  return kOk;
}

struct FitArgs {
  std::string family = "gaussian";
  double a = 3.141592653589793;
  double amplitude = 1.0;
  int k = 0;
  double x0 = 0.0;
  double w0 = 0.0;
  double sigma = 2.0;
  int order = 12;
  bool tfr = false;
  std::string out;
};

int cmd_fit(const FitArgs& a) {
  AnalyticFunction phi = AnalyticFunction::gaussian(a.a, a.amplitude);
  if (a.family == "unit-gaussian")
    phi = AnalyticFunction::unit_gaussian();
  else if (a.family == "hermite")
    phi = AnalyticFunction::hermite(a.k);
  else if (a.family != "gaussian")
    throw std::invalid_argument("unknown family: " + a.family);
  if (a.x0 != 0.0 || a.w0 != 0.0) phi = AnalyticFunction::modulated_translated(phi, a.x0, a.w0);

  json j;
  if (a.tfr) {
    const auto m = tfr_membership(phi, phi, a.sigma, a.order);
    j = {{"function", phi.id()},   {"sigma", a.sigma},  {"max_order", a.order}, {"fit", to_json(m.fit)},
         {"input_fit", to_json(m.input_fit)}, {"flagged", m.flagged}};
  } else {
    j = to_json(characterize(phi, a.sigma, a.order));
  }
  emit(a.out, j.dump(2) + "\n");
  return kOk;
}

int cmd_verify(const std::string& suite, const std::string& json_out, std::uint64_t seed) {
  SuiteOptions opts;
  opts.seed = seed;
  const auto reports = run_suites(suite, opts);
  bool pass = true;
  json all = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    std::size_t failed = 0;
    for (const auto& rec : r.records) failed += rec.pass ? 0 : 1;
    std::cout << (r.pass() ? "PASS " : "FAIL ") << r.suite << " (" << r.records.size() - failed << "/"
              << r.records.size() << ")\n";
    for (const auto& rec : r.records)
      if (!rec.pass)
        std::cout << "  FAIL " << rec.name << " [" << rec.inputs << "] measured " << format_double(rec.measured)
                  << " tolerance " << format_double(rec.tolerance) << '\n';
    all.push_back(to_json(r));
  }
  if (!json_out.empty()) {
    json doc = suite == "all" ? json{{"suite", "all"}, {"version", toolkit_version()}, {"pass", pass}, {"reports", all}}
                              : all[0];
    write_json(json_out, doc);
  }
  return pass ? kOk : kSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extgev: extended Gevrey sequences, associated functions and time-frequency representations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", extgev::toolkit_version());

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "Table of ln M_p with condition diagnostics");
  weights->add_option("--tau", wa.tau)->required();
  weights->add_option("--sigma", wa.sigma)->required();
  weights->add_option("--pmax", wa.pmax)->default_val(50);
  weights->add_option("--format", wa.format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
  weights->add_option("--out", wa.out);

  AssocArgs aa;
  auto* assoc = app.add_subcommand("assoc", "Associated function, Komatsu dual and envelope fit");
  assoc->add_option("--tau", aa.tau)->required();
  assoc->add_option("--sigma", aa.sigma)->required();
  assoc->add_option("--x", aa.xs, "arguments x > 0");
  assoc->add_option("--komatsu", aa.komatsu, "orders p >= 1 for ln sup x^p e^{-T(x)}");
  assoc->add_flag("--sandwich", aa.sandwich, "fit the envelope constants on [2, 1e8]");
  assoc->add_option("--out", aa.out);

  std::vector<double> lx;
  std::string lout;
  auto* lambert = app.add_subcommand("lambert", "Principal-branch Lambert W with residuals");
  lambert->add_option("--x", lx)->required();
  lambert->add_option("--out", lout);

  TfrArgs ta;
  auto* tfr = app.add_subcommand("tfr", "Time-frequency representation of a sampled signal");
  tfr->add_option("--kind", ta.kind)
      ->check(CLI::IsMember({"grossmann-royer", "gr", "stft", "wigner", "ambiguity"}))
      ->default_val("grossmann-royer");
  tfr->add_option("--signal", ta.signal)->required();
  tfr->add_option("--window", ta.window, "defaults to the signal");
  tfr->add_option("--mode", ta.mode)->check(CLI::IsMember({"fast", "reference"}))->default_val("fast");
  tfr->add_option("--format", ta.format)->check(CLI::IsMember({"json", "csv"}))->default_val("json");
  tfr->add_option("--out", ta.out);
  tfr->add_option("--x-center", ta.x_center);
  tfr->add_option("--x-step", ta.x_step);
  tfr->add_option("--x-count", ta.x_count);
  tfr->add_option("--w-center", ta.w_center);
  tfr->add_option("--w-step", ta.w_step);
  tfr->add_option("--w-count", ta.w_count);

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Seminorm tables and tau fits for a test function");
  fit->add_option("--family", fa.family)->check(CLI::IsMember({"gaussian", "unit-gaussian", "hermite"}));
  fit->add_option("--a", fa.a, "Gaussian width");
  fit->add_option("--amplitude", fa.amplitude);
  fit->add_option("--k", fa.k, "Hermite index");
  fit->add_option("--x0", fa.x0);
  fit->add_option("--w0", fa.w0);
  fit->add_option("--sigma", fa.sigma);
  fit->add_option("--order", fa.order)->default_val(12);
  fit->add_flag("--tfr", fa.tfr, "fit the Grossmann-Royer transform of (phi, phi) instead");
  fit->add_option("--out", fa.out);

  std::string suite = "all";
  std::string json_out;
  std::uint64_t seed = extgev::SuiteOptions{}.seed;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"weights", "lambert", "associated", "membership", "tfr", "all"}))
      ->default_val("all");
  verify->add_option("--json", json_out);
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*weights) return cmd_weights(wa);
    if (*assoc) return cmd_assoc(aa);
    if (*lambert) return cmd_lambert(lx, lout);
    if (*tfr) return cmd_tfr(ta);
    if (*fit) return cmd_fit(fa);
    if (*verify) return cmd_verify(suite, json_out, seed);
  } catch (const extgev::LatticeError& e) {
    std::cerr << "lattice error: " << e.what() << '\n';
    return kLattice;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const extgev::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
