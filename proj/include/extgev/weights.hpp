#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace extgev {

using Index = std::int64_t;

inline constexpr Index kDefaultPmax = 200;

/// Parameters (tau, sigma) of one sequence M_p = p^{tau p^sigma} in the weight matrix.
class WeightParams {
 public:
  /// Throws std::invalid_argument unless tau > 0 and sigma > 1.
  WeightParams(double tau, double sigma);

  double tau() const noexcept { return tau_; }
  double sigma() const noexcept { return sigma_; }

  WeightParams with_tau(double tau) const { return WeightParams(tau, sigma_); }
  WeightParams scaled(double factor) const { return WeightParams(tau_ * factor, sigma_); }

 private:
  double tau_;
  double sigma_;
};

/// ln M_p = tau p^sigma ln p for p >= 2, zero for p in {0, 1}.
template <typename Scalar>
Scalar log_weight(Index p, Scalar tau, Scalar sigma) {
  if (p < 2) return Scalar(0);
  const Scalar ps = static_cast<Scalar>(p);
  using std::log;
  using std::pow;
  return tau * pow(ps, sigma) * log(ps);
}

inline double log_weight(Index p, const WeightParams& w) {
  return log_weight<double>(p, w.tau(), w.sigma());
}

/// p^sigma as a double; the exponent that multiplies ln h in the non-standard growth factor.
inline double power_sigma(Index p, double sigma) {
  return p == 0 ? 0.0 : std::pow(static_cast<double>(p), sigma);
}

/// Precomputed ln M_p for p = 0..pmax.
class LogWeightTable {
 public:
  LogWeightTable(const WeightParams& params, Index pmax);

  const WeightParams& params() const noexcept { return params_; }
  Index pmax() const noexcept { return pmax_; }
  const Eigen::VectorXd& values() const noexcept { return log_m_; }
  double operator()(Index p) const { return log_m_(p); }

 private:
  WeightParams params_;
  Index pmax_;
  Eigen::VectorXd log_m_;
};

/// Result of a supremum over integers computed by enumeration.
///
/// `tail_certified` is set when the summand is non-increasing from the argmax
/// to the last enumerated index and the continuous maximiser (when known) lies
/// inside the enumerated range, so the enumerated value is the true supremum.
struct DiscreteSup {
  double log_value = 0.0;
  Index argmax = 0;
  Index enumerated_to = 0;
  bool tail_certified = false;
};

struct ConditionReport {
  WeightParams params;
  Index pmax;

  // (M.1) log-convexity.
  bool log_convex = true;
  double log_convex_worst_slack = 0.0;  // max of 2 lnM_p - lnM_{p-1} - lnM_{p+1}, must be <= 0
  Index log_convex_first_violation = -1;

  // ~(M.2): M_{p+q}^{tau} <= C^{p^s + q^s} M_p^{tau 2^{s-1}} M_q^{tau 2^{s-1}}.
  double m2_log_constant = 0.0;
  Index m2_argmax_p = 0;
  Index m2_argmax_q = 0;
  bool m2_tail_certified = false;

  // ~(M.2)': M_{p+1} <= C^{p^s} M_p.
  double m2prime_log_constant = 0.0;
  Index m2prime_argmax = 0;
  bool m2prime_tail_certified = false;

  // (M.3)': partial sums of M_{p-1}/M_p (index 0 holds 0) and the per-term bound (2p)^{-tau (p-1)^{s-1}}.
  Eigen::VectorXd m3_partial_sums{};
  bool m3_term_bound_holds = true;
  Index m3_first_violation = -1;

  // M_p M_q <= M_{p+q} for p + q <= pmax.
  bool superadditive = true;

  // (p+q)^s <= 2^{s-1}(p^s + q^s) for 1 <= p, q <= pmax.
  bool power_inequality = true;

  // ln C for (M_p/p!)^{1/p} <= C (M_q/q!)^{1/q}, p <= q, over 1..pmax.
  double almost_increasing_log_constant = 0.0;

  bool all_pass() const {
    return log_convex && m2_tail_certified && m2prime_tail_certified && m3_term_bound_holds &&
           superadditive && power_inequality;
  }
};

/// Numerical check of every sequence condition over indices up to pmax. Throws for pmax < 3.
ConditionReport check_conditions(const WeightParams& params, Index pmax = kDefaultPmax);

struct GeometricSup {
  double log_value;
  double maximizer;
};

/// Closed form of ln sup_{rho>0} h^{rho^s} / rho^{tau rho^s} = tau/(s e) h^{s/tau},
/// attained at rho0 = h^{1/tau} e^{-1/s}. Throws for h <= 0.
GeometricSup sup_geometric_over_weight(double h, const WeightParams& params);

/// ln C = sup_p [p^s ln h + ln M_p^{tau/2} - ln M_p^{tau}], the constant absorbing the
/// factor h^{p^s}. Enumerates at least to pmax and always past the continuous maximiser.
DiscreteSup absorption_constant(double h, const WeightParams& params, Index pmax = kDefaultPmax);

/// ln C1 = max_p [ln p! - ln M_p] over p <= pmax (factorial domination by the sequence).
DiscreteSup factorial_domination(const WeightParams& params, Index pmax = kDefaultPmax);

/// Sup by enumeration with a forward-difference certificate on [argmax, last].
template <typename Summand>
DiscreteSup enumerate_sup(Summand&& summand, Index first, Index last) {
  DiscreteSup out;
  out.enumerated_to = last;
  out.argmax = first;
  out.log_value = summand(first);
  double prev = out.log_value;
  bool decreasing = true;
  for (Index p = first + 1; p <= last; ++p) {
    const double v = summand(p);
    if (v > out.log_value) {
      out.log_value = v;
      out.argmax = p;
      decreasing = true;
    } else if (v > prev) {
      decreasing = false;
    }
    prev = v;
  }
  out.tail_certified = decreasing && out.argmax < last;
  return out;
}

}  // namespace extgev
