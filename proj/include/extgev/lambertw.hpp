#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace extgev {

/// One evaluation of the principal branch W on [0, inf) with its residual certificate.
template <typename Scalar = double>
struct LambertEval {
  Scalar x;
  Scalar w;
  Scalar residual;  // |w e^w - x|
  int iterations;
};

namespace detail {

template <typename Scalar>
Scalar lambert_initial_guess(Scalar x) {
  using std::log;
  if (x < Scalar(0.25)) return x - x * x;
  if (x > std::numbers::e_v<Scalar>) {
    const Scalar l = log(x);
    return l - log(l);
  }
  // Between the two regimes ln(1+x) over-estimates W slightly; Halley corrects it.
  return Scalar(0.75) * std::log1p(x);
}

}  // namespace detail

/// Principal-branch Lambert W for x >= 0.
///
/// Halley iteration on f(w) = w e^w - x inside the bracket [0, ln(1+x)] (W(x) <= ln(1+x)
/// for x >= 0); any step that leaves the bracket is replaced by bisection. Stops when the
/// step falls below tol relative to max(1, w), or after max_iterations.
template <typename Scalar = double>
LambertEval<Scalar> lambert_w(Scalar x, Scalar tol = Scalar(1e-14), int max_iterations = 50) {
  using std::abs;
  using std::exp;
  if (!(x >= Scalar(0))) throw std::domain_error("lambert_w: x must be >= 0");
  if (x == Scalar(0)) return {x, Scalar(0), Scalar(0), 0};
  if (std::isinf(x)) return {x, x, Scalar(0), 0};

  Scalar lo = Scalar(0);
  Scalar hi = std::max(std::log1p(x), Scalar(1e-300));
  Scalar w = std::clamp(detail::lambert_initial_guess(x), lo, hi);

  int it = 0;
  for (; it < max_iterations; ++it) {
    const Scalar ew = exp(w);
    const Scalar f = w * ew - x;
    if (f == Scalar(0)) break;
    if (f > Scalar(0))
      hi = w;
    else
      lo = w;
    const Scalar fp = ew * (w + Scalar(1));
    const Scalar fpp = ew * (w + Scalar(2));
    Scalar next = w - f / (fp - f * fpp / (Scalar(2) * fp));
    if (!(next > lo && next < hi)) next = Scalar(0.5) * (lo + hi);
    const Scalar step = abs(next - w);
    w = next;
    if (step <= tol * std::max(Scalar(1), w)) {
      ++it;
      break;
    }
  }
  return {x, w, abs(w * exp(w) - x), it};
}

/// Residual certificate |W e^W - x| <= 1e-12 max(x, 1).
template <typename Scalar>
bool residual_certified(const LambertEval<Scalar>& e, Scalar rel = Scalar(1e-12)) {
  return e.residual <= rel * std::max(e.x, Scalar(1));
}

struct LambertBoundRecord {
  double x;
  double w;
  double lower;  // ln x - ln ln x
  double upper;  // ln x - 1/2 ln ln x
  bool at_e;     // equality point
  bool bounds_hold;
  double identity_rel_error;  // |W(x ln x) - ln x| / ln x
  bool identity_holds;
};

struct BoundsReport {
  std::vector<LambertBoundRecord> records;
  bool all_pass() const {
    return std::all_of(records.begin(), records.end(),
                       [](const LambertBoundRecord& r) { return r.bounds_hold && r.identity_holds; });
  }
};

/// Checks ln x - ln ln x <= W(x) <= ln x - 1/2 ln ln x (strict for x > e, equal at x = e)
/// and W(x ln x) = ln x to 1e-10 relative. Throws if any x < e.
inline BoundsReport check_lambert_bounds(std::span<const double> xs) {
  constexpr double e = std::numbers::e;
  BoundsReport report;
  report.records.reserve(xs.size());
  for (double x : xs) {
    if (!(x >= e)) throw std::domain_error("check_lambert_bounds: every x must be >= e");
    LambertBoundRecord r{};
    r.x = x;
    r.w = lambert_w(x).w;
    const double l = std::log(x);
    const double ll = std::log(l);
    r.lower = l - ll;
    r.upper = l - 0.5 * ll;
    r.at_e = std::abs(x - e) <= 4.0 * std::numeric_limits<double>::epsilon() * e;
    if (r.at_e)
      r.bounds_hold = std::abs(r.w - 1.0) <= 1e-12 && std::abs(r.lower - 1.0) <= 1e-12 &&
                      std::abs(r.upper - 1.0) <= 1e-12;
    else
      r.bounds_hold = r.lower < r.w && r.w < r.upper;
    const double wl = lambert_w(x * l).w;
    r.identity_rel_error = std::abs(wl - l) / l;
    r.identity_holds = r.identity_rel_error <= 1e-10;
    report.records.push_back(r);
  }
  return report;
}

}  // namespace extgev
