#pragma once

#include "extgev/testfn.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>

namespace extgev {

/// Uniform axis: points center + (j - count/2) step, j = 0..count-1.
struct Axis {
  double center = 0.0;
  double step = 1.0;
  Index count = 0;

  double point(Index j) const { return center + static_cast<double>(j - count / 2) * step; }
  /// Throws std::invalid_argument unless step > 0, count >= 1 and, when required, count even.
  void validate(bool require_even) const;
  bool operator==(const Axis&) const = default;
};

/// [-8, 8) with 256 samples.
inline Axis default_axis() { return Axis{0.0, 1.0 / 16.0, 256}; }

/// Thrown when a substitution leaves the sample lattice or a frequency is not a DFT bin.
class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampledSignal {
  Axis axis;
  Eigen::VectorXcd values;

  /// Throws std::invalid_argument on odd or non-matching counts and non-positive steps.
  void validate() const;
  /// sqrt(step sum |f_j|^2).
  double norm() const;
};

/// Trapezoid <f, g> = step sum f_j conj(g_j) on a shared axis.
Complex inner_product(const SampledSignal& f, const SampledSignal& g);

SampledSignal sample(const AnalyticFunction& f, const Axis& axis);

/// fhat(xi) = int f(x) e^{-2 pi i x xi} dx on the centred frequency axis of step 1/(N step).
SampledSignal fourier(const SampledSignal& f);

/// Inverse of fourier (opposite sign, frequency-step scaling) onto the time axis centred at time_center.
SampledSignal inverse_fourier(const SampledSignal& fhat, double time_center = 0.0);

enum class EvalMode { sampled, analytic };

/// Signal accessor: an analytic oracle evaluable anywhere, or lattice samples.
/// The quadrature lattice of an analytic evaluator defaults to default_axis().
class Evaluator {
 public:
  Evaluator(SampledSignal s);  // NOLINT(google-explicit-constructor)
  Evaluator(AnalyticFunction f, Axis quadrature = default_axis());  // NOLINT(google-explicit-constructor)

  EvalMode mode() const noexcept { return analytic_ ? EvalMode::analytic : EvalMode::sampled; }
  const Axis& lattice() const noexcept { return lattice_; }

  /// Sampled mode: lattice lookup, zero outside the window, LatticeError off-lattice.
  Complex at(double x) const;
  /// Values on lattice().
  SampledSignal sampled() const;
  /// x -> f(-x). Sampled signals must be centred at 0.
  Evaluator reflected() const;
  const AnalyticFunction* analytic() const noexcept { return analytic_ ? &*analytic_ : nullptr; }

 private:
  std::optional<AnalyticFunction> analytic_;
  SampledSignal samples_;
  Axis lattice_;
};

struct PhaseSpaceGrid {
  Axis x;
  Axis omega;
};

enum class TfrKind { grossmann_royer, stft, wigner, ambiguity };
enum class Method { reference, fast };

std::string to_string(TfrKind k);
std::string to_string(EvalMode m);
std::string to_string(Method m);
TfrKind parse_kind(const std::string& s);
Method parse_method(const std::string& s);

/// The grid the fast path of `kind` can read on `lattice`: x on the lattice; omega on the
/// DFT bins (stft, ambiguity) or on the half-frequency lattice (grossmann-royer, wigner).
PhaseSpaceGrid default_grid(TfrKind kind, const Axis& lattice);

struct Quadrature {
  Axis lattice;
  EvalMode mode = EvalMode::sampled;
  Method method = Method::reference;
};

struct TFRResult {
  TfrKind kind;
  PhaseSpaceGrid grid;
  Eigen::MatrixXcd values;  // rows: x, columns: omega
  Quadrature quadrature;
};

// Reference mode: trapezoid quadrature of the defining integral (analytic) or of the
// equivalent lattice-aligned substitution (sampled). Fast mode: one DFT per x-row.
// Both signals must share the quadrature lattice. Rows are computed in parallel.
TFRResult grossmann_royer(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid,
                          Method method = Method::reference);
TFRResult stft(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method = Method::reference);
TFRResult wigner(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid,
                 Method method = Method::reference);
TFRResult ambiguity(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid,
                    Method method = Method::reference);
TFRResult compute(TfrKind kind, const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid,
                  Method method = Method::reference);

/// max |R| <= ||f|| ||g|| (1 + 1e-12) over the computed grid.
bool property1_holds(const TFRResult& r, double norm_f, double norm_g);

struct MoyalResult {
  Complex lhs;
  Complex rhs;
  double relative_error;  // |lhs - rhs| / |rhs|, infinite when rhs = 0
  double scaled_error;    // |lhs - rhs| / (4^{-n} ||f1|| ||f2|| ||g1|| ||g2||)
};

/// <R_{g1} f1, R_{g2} f2> over the default Grossmann-Royer grid against 4^{-n} <f1, f2> conj<g1, g2>.
/// Throws std::domain_error if any signal has more than 1e-12 of its energy in the outer
/// sixteenth of the window at either end.
MoyalResult moyal_check(const Evaluator& f1, const Evaluator& g1, const Evaluator& f2, const Evaluator& g2,
                        Method method = Method::fast);

/// f = 4^n / <g2, g1> int int R_{g1} f(x, w) e^{4 pi i w (t - x)} g2(2x - t) dx dw on the
/// quadrature lattice of r. Throws std::domain_error when |<g2, g1>| < 1e-8 ||g1|| ||g2||.
SampledSignal invert(const TFRResult& r, const Evaluator& g1, const Evaluator& g2);

struct SymmetryReport {
  double conjugate_swap;      // R_g f vs conj(R_f g)
  double fourier_rotation;    // R_{ghat} fhat(x, w) vs R_g f(-w, x)
  double operator_pipeline;   // e^{-4 pi i w x} <M_{2w} T_{2x} fcheck, g> vs direct
};

SymmetryReport symmetry_checks(const AnalyticFunction& f, const AnalyticFunction& g, const PhaseSpaceGrid& grid,
                               const Axis& quadrature = default_axis());

struct RelationReport {
  double wigner;     // W(f, g) vs 2^n R_g f
  double stft;       // V_g f(x, w) vs e^{-pi i x w} R_{gcheck} f(x/2, w/2)
  double ambiguity;  // A(f, g)(x, w) vs R_{gcheck} f(x/2, w/2)
};

/// Pointwise maximum deviations with analytic evaluators in reference mode.
RelationReport relation_checks(const AnalyticFunction& f, const AnalyticFunction& g, const PhaseSpaceGrid& grid,
                               const Axis& quadrature = default_axis());

/// c exp(qxx x^2 + qxw x w + qww w^2) times a polynomial in (x, w).
struct BivariateGaussian {
  Eigen::MatrixXcd coeffs;  // coeffs(i, j) multiplies x^i w^j
  Complex qxx;
  Complex qxw;
  Complex qww;

  Complex operator()(double x, double w) const;
  BivariateGaussian dx() const;
  BivariateGaussian dw() const;
};

/// Closed form of R_g f for centred Gaussians f = A e^{-a t^2}, g = B e^{-b t^2}.
/// Throws std::invalid_argument for other families.
BivariateGaussian grossmann_royer_closed_form(const AnalyticFunction& f, const AnalyticFunction& g);

struct TfrMembership {
  Eigen::MatrixXd table;  // max over |alpha| = i, |beta| = j of sup |x^a1 w^a2 dx^b1 dw^b2 R_g f|
  TauFit fit;
  TauFit input_fit;  // joint fit of f itself on the same order range
  bool flagged = false;
};

/// The 2-variable seminorm table of the Grossmann-Royer transform and its tau fit.
/// Throws std::invalid_argument for max_order < 4 or non-Gaussian inputs.
TfrMembership tfr_membership(const AnalyticFunction& f, const AnalyticFunction& g, double sigma, int max_order);

}  // namespace extgev
