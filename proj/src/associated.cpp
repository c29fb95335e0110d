#include "extgev/associated.hpp"

#include "extgev/lambertw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace extgev {

namespace {

// Stationary condition of g(p) = p L - tau p^s ln p in u = ln p:
// psi(u) = e^{(s-1)u} (s u + 1) = L / tau, psi increasing for u >= 0.
double stationary_log_p(double target, double s, double log_cap, bool& saturated) {
  auto psi = [s](double u) { return std::exp((s - 1.0) * u) * (s * u + 1.0); };
  auto dpsi = [s](double u) { return std::exp((s - 1.0) * u) * ((s - 1.0) * (s * u + 1.0) + s); };
  saturated = false;
  double lo = 0.0;
  double hi = 1.0;
  while (psi(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi >= log_cap) {
      if (psi(log_cap) < target) {
        saturated = true;
        return log_cap;
      }
      hi = log_cap;
      break;
    }
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double f = psi(u) - target;
    if (f > 0.0)
      hi = u;
    else
      lo = u;
    double next = u - f / dpsi(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, u)) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

}  // namespace

AssociatedValue associated_from_log(double log_x, const WeightParams& params, Index pcap) {
  const double tau = params.tau();
  const double s = params.sigma();
  auto term = [&](Index p) { return static_cast<double>(p) * log_x - log_weight(p, params); };

  AssociatedValue best{0.0, 0, false};
  auto consider = [&](Index p) {
    if (p < 0 || p > pcap) return;
    const double v = term(p);
    if (v > best.value || (v == best.value && p < best.argmax)) {
      best.value = v;
      best.argmax = p;
    }
  };
  consider(0);
  consider(1);
  if (log_x <= tau) {
    // g'(1) = L - tau <= 0: the concave maximand decreases from p = 1.
    consider(2);
    return best;
  }
  bool saturated = false;
  const double u = stationary_log_p(log_x / tau, s, std::log(static_cast<double>(pcap)), saturated);
  const double p_star = std::exp(u);
  const Index base = static_cast<Index>(std::floor(p_star));
  for (Index p = base - 1; p <= base + 2; ++p) consider(p);
  best.saturated = saturated || best.argmax >= pcap;
  return best;
}

AssociatedValue associated_value(double x, const WeightParams& params, Index pcap) {
  if (!(x > 0.0)) throw std::invalid_argument("associated_value: x must be > 0");
  return associated_from_log(std::log(x), params, pcap);
}

KomatsuDual komatsu_dual(Index p, const WeightParams& params) {
  if (p < 1) throw std::invalid_argument("komatsu_dual: p must be >= 1");
  const AssociatedFunction t(params);
  const double pd = static_cast<double>(p);
  auto h = [&](double u) { return pd * u - t.from_log(u); };

  // h is concave in u = ln x; expand until it has turned downward.
  double u_hi = 1.0;
  while (h(2.0 * u_hi) >= h(u_hi) && u_hi < 1e6) u_hi *= 2.0;
  const double u_lo = -1.0;
  u_hi *= 2.0;

  constexpr Index kNodes = 4001;
  const double du = (u_hi - u_lo) / static_cast<double>(kNodes - 1);
  Index best_i = 0;
  double best = h(u_lo);
  for (Index i = 1; i < kNodes; ++i) {
    const double v = h(u_lo + du * static_cast<double>(i));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = u_lo + du * static_cast<double>(std::max<Index>(best_i - 1, 0));
  double b = u_lo + du * static_cast<double>(std::min<Index>(best_i + 1, kNodes - 1));
  double best_u = u_lo + du * static_cast<double>(best_i);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double hc = h(c);
  double hd = h(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - inv_phi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + inv_phi * (b - a);
      hd = h(d);
    }
    if (hc > best) {
      best = hc;
      best_u = c;
    }
    if (hd > best) {
      best = hd;
      best_u = d;
    }
  }
  return {best, best_u};
}

BMTWeight::BMTWeight(double exponent) : s_(exponent) {
  if (!(exponent > 1.0)) throw std::invalid_argument("BMTWeight: exponent must be > 1");
}

double BMTWeight::operator()(double t) const {
  const double l = std::log1p(std::abs(t));
  if (l == 0.0) return 0.0;
  return std::pow(l, s_) / std::pow(lambert_w(l).w, s_ - 1.0);
}

double sandwich_envelope(double t, const WeightParams& params) {
  if (!(t > 1.0)) throw std::invalid_argument("sandwich_envelope: t must be > 1");
  const double s = params.sigma();
  const double l = std::log(t);
  const double inv = 1.0 / (s - 1.0);
  return std::pow(params.tau(), -inv) * std::pow(l, s * inv) / std::pow(lambert_w(l).w, inv);
}

std::vector<double> log_grid(double lo, double hi, Index count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw std::invalid_argument("log_grid: need 0 < lo <= hi, count >= 1");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(count - 1);
  for (Index i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

struct EnvelopePoint {
  double t;
  double assoc;
  double env;
};

std::vector<EnvelopePoint> envelope_points(const WeightParams& params, std::span<const double> ts) {
  const AssociatedFunction assoc(params);
  std::vector<EnvelopePoint> pts;
  pts.reserve(ts.size());
  for (double t : ts) pts.push_back({t, assoc(t), sandwich_envelope(t, params)});
  return pts;
}

bool envelope_holds(const EnvelopePoint& p, double a, double b) {
  return p.env / a - b <= p.assoc && p.assoc <= a * p.env + b;
}

}  // namespace

SandwichFit fit_sandwich(const WeightParams& params, std::span<const double> t_grid, const SandwichOptions& opts) {
  if (t_grid.empty()) throw std::invalid_argument("fit_sandwich: empty grid");
  for (double t : t_grid)
    if (!(t > 1.0)) throw std::invalid_argument("fit_sandwich: grid points must exceed 1");
  const auto [mn, mx] = std::minmax_element(t_grid.begin(), t_grid.end());
  const auto coarse = envelope_points(params, t_grid);
  const Index dense_count = std::max<Index>(opts.densify * (static_cast<Index>(t_grid.size()) - 1) + 1, 2);
  const auto dense_ts = log_grid(*mn, *mx, dense_count);
  const auto dense = envelope_points(params, dense_ts);

  for (double a = opts.lattice_ratio; a <= opts.a_max; a *= opts.lattice_ratio) {
    const bool coarse_ok =
        std::all_of(coarse.begin(), coarse.end(), [&](const EnvelopePoint& p) { return envelope_holds(p, a, opts.b); });
    if (!coarse_ok) continue;
    const auto violations = std::count_if(dense.begin(), dense.end(),
                                          [&](const EnvelopePoint& p) { return !envelope_holds(p, a, opts.b); });
    if (violations != 0) continue;
    SandwichFit fit;
    fit.a = a;
    fit.b = opts.b;
    fit.t_min = *mn;
    fit.t_max = *mx;
    fit.fit_points = static_cast<Index>(coarse.size());
    fit.validation_points = static_cast<Index>(dense.size());
    fit.validation_violations = 0;
    return fit;
  }
  throw std::runtime_error("fit_sandwich: no envelope constant A <= a_max satisfies both bounds");
}

BmtBracket fit_bmt_bracket(const WeightParams& params, std::span<const double> t_grid) {
  const AssociatedFunction assoc(params);
  const BMTWeight omega = BMTWeight::for_sequence(params.sigma());
  std::vector<double> tv;
  std::vector<double> wv;
  tv.reserve(t_grid.size());
  wv.reserve(t_grid.size());
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (double t : t_grid) {
    const double a = assoc(t);
    const double w = omega(t);
    tv.push_back(a);
    wv.push_back(w);
    if (std::abs(t) >= 10.0 && w > 0.0) {
      rmin = std::min(rmin, a / w);
      rmax = std::max(rmax, a / w);
    }
  }
  if (!(rmax > 0.0)) throw std::invalid_argument("fit_bmt_bracket: grid must reach |t| >= 10");
  BmtBracket br{};
  br.lambda_lower = 2.0 / rmin;
  br.lambda_upper = 0.5 / rmax;
  br.log_c_lower = std::numeric_limits<double>::infinity();
  br.log_c_upper = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tv.size(); ++i) {
    br.log_c_lower = std::min(br.log_c_lower, tv[i] - wv[i] / br.lambda_lower);
    br.log_c_upper = std::max(br.log_c_upper, tv[i] - wv[i] / br.lambda_upper);
  }
  br.points = static_cast<Index>(tv.size());
  br.violations = 0;
  for (std::size_t i = 0; i < tv.size(); ++i) {
    const bool lower = br.log_c_lower + wv[i] / br.lambda_lower <= tv[i];
    const bool upper = tv[i] <= br.log_c_upper + wv[i] / br.lambda_upper;
    if (!lower || !upper) ++br.violations;
  }
  return br;
}

double radial_weight_integral(const WeightParams& params, double tau0, int dimension, double cutoff,
                              Index nodes_per_decade) {
  if (dimension != 1 && dimension != 2) throw std::invalid_argument("radial_weight_integral: dimension must be 1 or 2");
  const double sphere = dimension == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double n = static_cast<double>(dimension);
  // On [0, 1] both associated functions vanish: the integral of r^{n-1} is 1/n.
  double total = 1.0 / n;
  if (cutoff > 1.0) {
    const WeightParams fast = params.with_tau(tau0);
    // In u = ln r the integrand is exp(phi(u)) with phi piecewise linear; each cell is
    // integrated exactly for linear phi, and the node spacing does not depend on the cutoff.
    auto phi = [&](double u) {
      return n * u + associated_from_log(u, fast).value - associated_from_log(u, params).value;
    };
    const double du = std::log(10.0) / static_cast<double>(nodes_per_decade);
    const double u_end = std::log(cutoff);
    double u0 = 0.0;
    double p0 = phi(u0);
    double acc = 0.0;
    while (u0 < u_end) {
      const double u1 = std::min(u0 + du, u_end);
      const double p1 = phi(u1);
      const double h = u1 - u0;
      const double dp = p1 - p0;
      const double f0 = std::exp(p0);
      acc += std::abs(dp) < 1e-8 ? h * f0 * (1.0 + 0.5 * dp) : h * (std::exp(p1) - f0) / dp;
      u0 = u1;
      p0 = p1;
    }
    total += acc;
  }
  return sphere * total;
}

MatrixConditionReport check_matrix_conditions(const WeightParams& params, int dimension,
                                              const MatrixConditionOptions& opts) {
  if (dimension != 1 && dimension != 2) throw std::invalid_argument("check_matrix_conditions: dimension must be 1 or 2");
  const double s = params.sigma();
  MatrixConditionReport r{.params = params, .dimension = dimension};

  // {L}
  {
    const auto sup = absorption_constant(opts.h, params.scaled(2.0), opts.pmax);
    r.l_log_constant = sup.log_value;
    r.l_certified = sup.tail_certified && std::isfinite(sup.log_value);
  }

  // {M.2}'
  {
    const auto cond = check_conditions(params, opts.pmax);
    r.m2p_log_h = cond.m2prime_log_constant;
    const WeightParams doubled = params.scaled(2.0);
    const auto sup = enumerate_sup(
        [&](Index p) { return log_weight(p + 1, params) - power_sigma(p, s) * r.m2p_log_h - log_weight(p, doubled); },
        0, opts.pmax);
    r.m2p_log_constant = sup.log_value;
    r.m2p_certified = cond.m2prime_tail_certified && sup.tail_certified;
  }

  // {M}
  {
    r.m_tau0 = std::pow(2.0, s) * params.tau();
    const AssociatedFunction big(params.with_tau(r.m_tau0));
    const AssociatedFunction base(params);
    std::vector<double> radii{0.0};
    for (double v : log_grid(1e-2, opts.lattice_max_radius, opts.lattice_radii)) radii.push_back(v);
    std::vector<double> base_vals;
    base_vals.reserve(radii.size());
    for (double v : radii) base_vals.push_back(base(v));

    std::vector<double> cos_angles;
    if (dimension == 1) {
      cos_angles = {1.0, -1.0};  // same / opposite sign
    } else {
      for (int k = 0; k <= 6; ++k) cos_angles.push_back(std::cos(std::numbers::pi * k / 6.0));
    }
    r.m_log_constant = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (std::size_t j = 0; j < radii.size(); ++j) {
        for (double c : cos_angles) {
          const double sq = radii[i] * radii[i] + radii[j] * radii[j] + 2.0 * c * radii[i] * radii[j];
          const double sum_norm = std::sqrt(std::max(sq, 0.0));
          const double lhs = big(sum_norm);
          r.m_log_constant = std::max(r.m_log_constant, lhs - base_vals[i] - base_vals[j]);
          ++r.m_lattice_pairs;
        }
      }
    }
    r.m_origin_ok = big(0.0) <= r.m_log_constant + base(0.0) + base(0.0) && r.m_log_constant >= 0.0;
  }

  // {N}
  {
    r.n_tau0 = std::pow(2.0, s) * params.tau();
    r.n_low = {opts.n_cutoff_low, radial_weight_integral(params, r.n_tau0, dimension, opts.n_cutoff_low, opts.nodes_per_decade)};
    r.n_high = {opts.n_cutoff_high,
                radial_weight_integral(params, r.n_tau0, dimension, opts.n_cutoff_high, opts.nodes_per_decade)};
    r.n_relative_change = std::abs(r.n_high.value - r.n_low.value) / std::abs(r.n_high.value);
    r.n_stabilized = std::isfinite(r.n_high.value) && r.n_relative_change <= opts.n_tolerance;

    // Integrand in r over the last decade before the high cutoff.
    const WeightParams fast = params.with_tau(r.n_tau0);
    const double n = static_cast<double>(dimension);
    double prev = std::numeric_limits<double>::infinity();
    r.n_tail_decreasing = true;
    for (double rad : log_grid(opts.n_cutoff_high / 10.0, opts.n_cutoff_high, 200)) {
      const double u = std::log(rad);
      const double v = (n - 1.0) * u + associated_from_log(u, fast).value - associated_from_log(u, params).value;
      if (v > prev) r.n_tail_decreasing = false;
      prev = v;
    }
    for (double c : opts.n_extended_cutoffs)
      r.n_extended.push_back({c, radial_weight_integral(params, r.n_tau0, dimension, c, opts.nodes_per_decade / 10)});
  }
  return r;
}

}  // namespace extgev
