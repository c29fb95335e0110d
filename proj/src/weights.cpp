#include "extgev/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace extgev {

WeightParams::WeightParams(double tau, double sigma) : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("WeightParams: tau must be > 0, got " + std::to_string(tau));
  if (!(sigma > 1.0) || !std::isfinite(sigma))
    throw std::invalid_argument("WeightParams: sigma must be > 1, got " + std::to_string(sigma));
}

LogWeightTable::LogWeightTable(const WeightParams& params, Index pmax)
    : params_(params), pmax_(pmax), log_m_(pmax + 1) {
  if (pmax < 1) throw std::invalid_argument("LogWeightTable: pmax must be >= 1");
  for (Index p = 0; p <= pmax; ++p) log_m_(p) = log_weight(p, params);
}

namespace {

// Envelope certificate for a two-index supremum: the anti-diagonal maxima over
// the last quarter of the range never exceed the maximum found before it.
bool plateau_or_decreasing_tail(const Eigen::VectorXd& diag_max) {
  const Index n = diag_max.size();
  const Index split = n - std::max<Index>(n / 4, 1);
  const double head = diag_max.head(split).maxCoeff();
  const double tail = diag_max.tail(n - split).maxCoeff();
  return tail <= head + 1e-12 * std::max(1.0, std::abs(head));
}

}  // namespace

ConditionReport check_conditions(const WeightParams& params, Index pmax) {
  if (pmax < 3) throw std::invalid_argument("check_conditions: pmax must be >= 3");
  const double tau = params.tau();
  const double s = params.sigma();
  const LogWeightTable lm(params, pmax);

  ConditionReport r{.params = params, .pmax = pmax};

  // (M.1)
  r.log_convex_worst_slack = -std::numeric_limits<double>::infinity();
  for (Index p = 1; p < pmax; ++p) {
    const double slack = 2.0 * lm(p) - lm(p - 1) - lm(p + 1);
    r.log_convex_worst_slack = std::max(r.log_convex_worst_slack, slack);
    if (slack > 0.0 && r.log_convex) {
      r.log_convex = false;
      r.log_convex_first_violation = p;
    }
  }

  // ~(M.2), maximised over p, q <= pmax (p + q >= 1).
  {
    const double inflated = tau * std::pow(2.0, s - 1.0);
    Eigen::VectorXd diag_max = Eigen::VectorXd::Constant(2 * pmax + 1, -std::numeric_limits<double>::infinity());
    r.m2_log_constant = -std::numeric_limits<double>::infinity();
    for (Index p = 0; p <= pmax; ++p) {
      for (Index q = 0; q <= pmax; ++q) {
        if (p + q == 0) continue;
        const double num = log_weight<double>(p + q, tau, s) - log_weight<double>(p, inflated, s) -
                           log_weight<double>(q, inflated, s);
        const double ratio = num / (power_sigma(p, s) + power_sigma(q, s));
        diag_max(p + q) = std::max(diag_max(p + q), ratio);
        if (ratio > r.m2_log_constant) {
          r.m2_log_constant = ratio;
          r.m2_argmax_p = p;
          r.m2_argmax_q = q;
        }
      }
    }
    r.m2_log_constant = std::max(r.m2_log_constant, 0.0);  // C >= 1
    r.m2_tail_certified = plateau_or_decreasing_tail(diag_max.tail(2 * pmax));
  }

  // ~(M.2)'
  {
    const auto sup = enumerate_sup(
        [&](Index p) { return (log_weight(p + 1, params) - log_weight(p, params)) / power_sigma(p, s); }, 1,
        pmax);
    r.m2prime_log_constant = std::max(sup.log_value, 0.0);
    r.m2prime_argmax = sup.argmax;
    r.m2prime_tail_certified = sup.tail_certified;
  }

  // (M.3)' and the per-term bound M_{p-1}/M_p <= (2p)^{-tau (p-1)^{s-1}}.
  r.m3_partial_sums = Eigen::VectorXd::Zero(pmax + 1);
  for (Index p = 1; p <= pmax; ++p) {
    const double log_ratio = lm(p - 1) - lm(p);
    r.m3_partial_sums(p) = r.m3_partial_sums(p - 1) + std::exp(log_ratio);
    const double log_bound =
        -tau * std::pow(static_cast<double>(p - 1), s - 1.0) * std::log(2.0 * static_cast<double>(p));
    if (log_ratio > log_bound && r.m3_term_bound_holds) {
      r.m3_term_bound_holds = false;
      r.m3_first_violation = p;
    }
  }

  // Superadditivity and the power inequality.
  const double two_pow = std::pow(2.0, s - 1.0);
  for (Index p = 0; p <= pmax; ++p) {
    for (Index q = 0; p + q <= pmax; ++q) {
      if (lm(p) + lm(q) > lm(p + q)) r.superadditive = false;
    }
  }
  for (Index p = 1; p <= pmax; ++p) {
    for (Index q = 1; q <= pmax; ++q) {
      const double lhs = std::pow(static_cast<double>(p + q), s);
      const double rhs = two_pow * (power_sigma(p, s) + power_sigma(q, s));
      if (lhs > rhs * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) r.power_inequality = false;
    }
  }

  // Almost increasing: a_p = (ln M_p - ln p!)/p; ln C = max_{p<=q} (a_p - a_q).
  {
    double running_max = -std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (Index p = 1; p <= pmax; ++p) {
      const double a = (lm(p) - std::lgamma(static_cast<double>(p) + 1.0)) / static_cast<double>(p);
      running_max = std::max(running_max, a);
      worst = std::max(worst, running_max - a);
    }
    r.almost_increasing_log_constant = worst;
  }
  return r;
}

GeometricSup sup_geometric_over_weight(double h, const WeightParams& params) {
  if (!(h > 0.0)) throw std::invalid_argument("sup_geometric_over_weight: h must be > 0");
  const double tau = params.tau();
  const double s = params.sigma();
  const double log_value = tau / (s * std::numbers::e) * std::pow(h, s / tau);
  const double maximizer = std::pow(h, 1.0 / tau) * std::exp(-1.0 / s);
  return {log_value, maximizer};
}

DiscreteSup absorption_constant(double h, const WeightParams& params, Index pmax) {
  if (!(h > 0.0)) throw std::invalid_argument("absorption_constant: h must be > 0");
  const double tau = params.tau();
  const double s = params.sigma();
  const double log_h = std::log(h);
  auto summand = [&](Index p) {
    return power_sigma(p, s) * log_h + log_weight<double>(p, 0.5 * tau, s) - log_weight<double>(p, tau, s);
  };
  // Continuous maximiser of rho^s (ln h - tau/2 ln rho) is h^{2/tau} e^{-1/s}.
  const double rho0 = sup_geometric_over_weight(h, params.with_tau(0.5 * tau)).maximizer;
  if (rho0 > 1e8) throw std::domain_error("absorption_constant: maximiser beyond enumerable range");
  const Index last = std::max<Index>(pmax, static_cast<Index>(std::ceil(rho0)) + 2);
  DiscreteSup sup = enumerate_sup(summand, 0, last);
  sup.tail_certified = sup.tail_certified && static_cast<double>(last) > rho0;
  return sup;
}

DiscreteSup factorial_domination(const WeightParams& params, Index pmax) {
  return enumerate_sup(
      [&](Index p) { return std::lgamma(static_cast<double>(p) + 1.0) - log_weight(p, params); }, 0, pmax);
}

}  // namespace extgev
