#pragma once

#include "extgev/weights.hpp"

#include <Eigen/Core>

#include <complex>
#include <string>
#include <vector>

namespace extgev {

using Complex = std::complex<double>;

/// phi(x) = e^{2 pi i w0 x} P(x - x0) e^{-a (x - x0)^2} with a complex polynomial P.
///
/// The class is closed under differentiation and under the Fourier transform
/// fhat(xi) = int f(x) e^{-2 pi i x xi} dx, which is what makes it a derivative and
/// transform oracle.
struct GaussianForm {
  Eigen::VectorXcd coeffs;  // P(y) = sum_k coeffs[k] y^k
  double a = 1.0;
  double x0 = 0.0;
  double w0 = 0.0;

  Complex operator()(double x) const;
  /// ln|phi(x)|; -inf where P vanishes.
  double log_abs(double x) const;
  /// The form of d/dx phi.
  GaussianForm derivative() const;
  GaussianForm derivative(int order) const;
  GaussianForm fourier() const;
  /// x -> phi(-x).
  GaussianForm reflected() const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.isZero(0.0); }
};

enum class Family { gaussian, hermite, modulated_gaussian };

std::string to_string(Family f);

/// Test function with exact oracles for x^alpha d^beta phi at arbitrary real points.
class AnalyticFunction {
 public:
  /// amplitude * e^{-a x^2}. Throws for a <= 0.
  static AnalyticFunction gaussian(double a, double amplitude = 1.0);
  /// 2^{1/4} e^{-pi x^2}, unit L2 norm and a fixed point of the Fourier transform.
  static AnalyticFunction unit_gaussian();
  /// L2-normalised Hermite function h_k(x) = 2^{1/4}/sqrt(2^k k!) H_k(sqrt(2 pi) x) e^{-pi x^2}.
  static AnalyticFunction hermite(int k);
  /// e^{2 pi i w0 x} base(x - x0).
  static AnalyticFunction modulated_translated(const AnalyticFunction& base, double x0, double w0);
  /// Linear combination sum c_i h_i of Hermite functions.
  static AnalyticFunction hermite_combination(const Eigen::VectorXcd& weights);
  static AnalyticFunction zero();

  AnalyticFunction(Family family, GaussianForm form, std::string id);

  Complex operator()(double x) const { return form_(x); }
  Complex derivative(int order, double x) const { return form_.derivative(order)(x); }
  /// x^alpha d^beta phi(x).
  Complex moment_derivative(int alpha, int beta, double x) const;

  AnalyticFunction fourier() const;
  AnalyticFunction reflected() const;

  const GaussianForm& form() const noexcept { return form_; }
  Family family() const noexcept { return family_; }
  const std::string& id() const noexcept { return id_; }

 private:
  Family family_;
  GaussianForm form_;
  std::string id_;
};

/// sup |x^alpha d^beta phi| with its location and the scan radius used.
struct SupSeminorm {
  double value = 0.0;
  double argmax = 0.0;
  double radius = 0.0;
  bool boundary_flag = false;  // maximum sits on the scan boundary: radius too small
};

SupSeminorm seminorm_sup(const AnalyticFunction& phi, int alpha, int beta);
SupSeminorm seminorm_sup(const GaussianForm& form, int alpha, int beta);

struct L2Seminorm {
  double value = 0.0;
  double radius = 0.0;
  double step = 0.0;
  bool insufficient_grid = false;
};

/// ||x^alpha d^beta phi||_{L2} by trapezoid quadrature (spectrally accurate for these integrands).
L2Seminorm seminorm_l2(const AnalyticFunction& phi, int alpha, int beta);

/// Entries s(i, j) for |alpha| = i, |beta| = j, i, j <= K.
struct SeminormTable {
  std::string function_id;
  int max_order = 0;
  Eigen::MatrixXd sup;
  Eigen::MatrixXd l2;
  bool any_flagged = false;
};

/// Populates the sup and L2 tables for |alpha|, |beta| <= max_order (parallel over entries).
SeminormTable seminorm_table(const AnalyticFunction& phi, int max_order);

/// Minimal tau for a chosen constant: entries(i, j) <= C M^{tau}_i M^{tau}_j.
struct TauFit {
  double tau = 0.0;
  double log_c = 0.0;
};

/// Max-ratio estimator: ln C = ln max(1, entries with i, j in {0, 1}); tau is the largest
/// (ln s_ij - ln C) / (i^s ln+ i + j^s ln+ j) over the remaining entries, clamped at 0.
/// Entries that are NaN are skipped. Throws if the table is smaller than 5 in its larger dimension.
TauFit fit_tau(const Eigen::MatrixXd& entries, double sigma);

/// fit_tau on a table of ln s_ij, for tables whose entries overflow a double.
TauFit fit_tau_log(const Eigen::MatrixXd& log_entries, double sigma);

/// Same estimator with ln C supplied by the caller.
TauFit fit_tau_with_log_constant(const Eigen::MatrixXd& entries, double sigma, double log_c);

/// Same estimator with denominators (i + j)^s ln+(i + j): the M_{|alpha + beta|} variant.
TauFit fit_tau_summed(const Eigen::MatrixXd& entries, double sigma);

/// Smallest ln C >= 0 with entries(i, j) <= C M^{tau}_i M^{tau}_j; tau = 0 means M = 1.
double required_log_constant(const Eigen::MatrixXd& entries, double sigma, double tau);

struct DecayCheck {
  double tau = 0.0;
  double log_sup = 0.0;  // ln sup |f| e^{T}
  double argmax = 0.0;
  bool finite = false;
};

struct MembershipReport {
  double sigma = 0.0;
  int max_order = 0;
  SeminormTable table;
  Eigen::VectorXd fourier_table;  // sup |xi^b phihat|, b <= K
  TauFit joint;    // sup |x^a d^b phi| <= C M_a M_b
  TauFit decay;    // sup |x^a phi| <= C M_a
  TauFit deriv;    // sup |d^b phi| <= C M_b
  TauFit fourier;  // sup |xi^b phihat| <= C M_b
  TauFit joint_l2;
  TauFit joint_summed;  // M_{|alpha+beta|} variant

  // Joint table against tau' = 2^s max(decay, deriv).
  double inflated_tau = 0.0;
  double inflated_log_c = 0.0;

  // L2 <-> sup mutual certificates with the other's tau inflated by 2^s.
  double l2_with_inflated_sup_log_c = 0.0;
  double sup_with_inflated_l2_log_c = 0.0;

  // Associated-function decay of phi and phihat at decay_base_tau / 2^s; the Beurling
  // sequence uses decay_base_tau 2^{-j}, j = 1..6.
  double decay_base_tau = 0.0;
  DecayCheck space_decay;
  DecayCheck frequency_decay;
  std::vector<DecayCheck> beurling_space;
  std::vector<DecayCheck> beurling_frequency;

  bool seminorms_flagged = false;
};

/// All four tau fits, the L2 cross-check, and the associated-function decay checks.
/// Throws std::invalid_argument for max_order < 4.
MembershipReport characterize(const AnalyticFunction& phi, double sigma, int max_order);

/// sup_x ln|form(x)| + T_tau(|x|) on a grid wide enough that the maximum is interior.
/// tau = 0 drops the weight.
DecayCheck associated_decay(const GaussianForm& form, double sigma, double tau);

}  // namespace extgev
