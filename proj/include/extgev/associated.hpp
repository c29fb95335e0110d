#pragma once

#include "extgev/weights.hpp"

#include <span>
#include <vector>

namespace extgev {

inline constexpr Index kDefaultPcap = 100000;

struct AssociatedValue {
  double value = 0.0;  // T(x)
  Index argmax = 0;    // attaining p
  bool saturated = false;  // stationary point beyond pcap; raise the cap
};

/// T(x) = max_p [p ln x - ln M_p] evaluated from ln x, so arguments far beyond double
/// range are fine. Locates the real stationary point of p L - tau p^s ln p and compares
/// the neighbouring integers with p in {0, 1}.
AssociatedValue associated_from_log(double log_x, const WeightParams& params, Index pcap = kDefaultPcap);

/// T(x) for x > 0. Throws std::invalid_argument for x <= 0.
AssociatedValue associated_value(double x, const WeightParams& params, Index pcap = kDefaultPcap);

/// The associated function as a callable; T(0) is taken as 0.
class AssociatedFunction {
 public:
  explicit AssociatedFunction(const WeightParams& params, Index pcap = kDefaultPcap)
      : params_(params), pcap_(pcap) {}

  double operator()(double x) const { return x == 0.0 ? 0.0 : associated_value(std::abs(x), params_, pcap_).value; }
  AssociatedValue evaluate(double x) const { return associated_value(x, params_, pcap_); }
  double from_log(double log_x) const { return associated_from_log(log_x, params_, pcap_).value; }

  const WeightParams& params() const noexcept { return params_; }
  Index pcap() const noexcept { return pcap_; }

 private:
  WeightParams params_;
  Index pcap_;
};

struct KomatsuDual {
  double log_value;  // ln sup_x x^p e^{-T(x)}
  double log_x_at_max;
};

/// ln sup_{x>0} x^p e^{-T(x)} by a log-spaced grid search with golden-section refinement.
/// Throws for p < 1.
KomatsuDual komatsu_dual(Index p, const WeightParams& params);

/// omega(t) = ln^s(1+|t|) / W^{s-1}(ln(1+|t|)), omega(0) = 0.
class BMTWeight {
 public:
  /// Throws unless exponent > 1.
  explicit BMTWeight(double exponent);

  /// The weight paired with the sequence index sigma: exponent sigma/(sigma-1).
  static BMTWeight for_sequence(double sigma) { return BMTWeight(sigma / (sigma - 1.0)); }

  double exponent() const noexcept { return s_; }
  double operator()(double t) const;

 private:
  double s_;
};

/// tau^{-1/(sigma-1)} ln^{sigma/(sigma-1)} t / W^{1/(sigma-1)}(ln t), the common envelope of both sides of the
/// associated-function sandwich. Requires t > 1.
double sandwich_envelope(double t, const WeightParams& params);

struct SandwichOptions {
  double b = 1.0;                 // additive constant held fixed while A is searched
  double lattice_ratio = 1.01;    // A runs over lattice_ratio^k
  double a_max = 1e6;
  Index densify = 10;             // validation grid is this many times denser
};

/// Envelope constants: E/A - B <= T <= A E + B on the validated range.
struct SandwichFit {
  double a = 0.0;
  double b = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  Index fit_points = 0;
  Index validation_points = 0;
  Index validation_violations = 0;
};

/// Minimal A on the lattice such that both envelope inequalities hold on t_grid and on a
/// log-spaced grid densify times finer over the same range. Grid points must exceed 1.
/// Throws std::runtime_error when no A <= a_max works.
SandwichFit fit_sandwich(const WeightParams& params, std::span<const double> t_grid, const SandwichOptions& opts = {});

/// Log-spaced grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, Index count);

/// Two-sided bracket C1 e^{omega/l1} <= e^{T} <= C2 e^{omega/l2}, stored in log form.
struct BmtBracket {
  double lambda_lower;
  double lambda_upper;
  double log_c_lower;
  double log_c_upper;
  Index points;
  Index violations;
};

/// Fits the bracket of e^{T} by the BMT family on t_grid (which may include 0).
BmtBracket fit_bmt_bracket(const WeightParams& params, std::span<const double> t_grid);

struct RadialIntegral {
  double cutoff;
  double value;
};

struct MatrixConditionOptions {
  double h = 2.0;
  Index pmax = kDefaultPmax;
  Index lattice_radii = 40;          // {M} lattice radii per sign / direction
  double lattice_max_radius = 1e6;
  double n_cutoff_low = 1e4;
  double n_cutoff_high = 1e6;
  double n_tolerance = 1e-6;
  Index nodes_per_decade = 2000;
  std::vector<double> n_extended_cutoffs{1e10, 1e20, 1e30};
};

struct MatrixConditionReport {
  WeightParams params;
  int dimension;

  // {L} with tau0 = 2 tau.
  double l_log_constant = 0.0;
  bool l_certified = false;

  // {M.2}' with tau0 = 2 tau and h from ~(M.2)'.
  double m2p_log_h = 0.0;
  double m2p_log_constant = 0.0;
  bool m2p_certified = false;

  // {M}: lattice spot check w^{tau0}(x+y) <= C w^{tau}(x) w^{tau}(y).
  double m_tau0 = 0.0;
  double m_log_constant = 0.0;
  Index m_lattice_pairs = 0;
  bool m_origin_ok = false;

  // {wM} follows from {M}.
  bool wm_implied = true;

  // {N}: radial integral of w^{tau0}/w^{tau}, tau0 = 2^s tau.
  double n_tau0 = 0.0;
  RadialIntegral n_low{};
  RadialIntegral n_high{};
  double n_relative_change = 0.0;
  bool n_stabilized = false;
  bool n_tail_decreasing = false;
  std::vector<RadialIntegral> n_extended{};

  bool all_pass() const { return l_certified && m2p_certified && m_origin_ok && n_stabilized; }
};

/// Radial quadrature of r^{n-1} w^{tau0}(r)/w^{tau}(r) over [0, R], including the sphere area.
double radial_weight_integral(const WeightParams& params, double tau0, int dimension, double cutoff,
                              Index nodes_per_decade);

/// Numeric spot checks of {L}, {M.2}', {M}, {N} for dimension 1 or 2.
MatrixConditionReport check_matrix_conditions(const WeightParams& params, int dimension,
                                              const MatrixConditionOptions& opts = {});

}  // namespace extgev
