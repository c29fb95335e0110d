#include "extgev/tfr.hpp"

#include "extgev/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace extgev {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr int kDim = 1;  // signal dimension n; outputs live in 2n variables
constexpr double kLatticeTol = 1e-7;

Complex cis(double phase) { return std::polar(1.0, phase); }

// F_k = step sum_j v_j e^{sign 2 pi i t_j xi_k}, t_j on `in`, xi_k = out_center + (k - N/2)/(N step).
Eigen::VectorXcd centered_dft(const Eigen::VectorXcd& v, const Axis& in, double out_center, int sign) {
  const Index n = in.count;
  const double d = in.step;
  const double c = in.center;
  std::vector<Complex> buf(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const double odd = (j % 2 == 0) ? 1.0 : -1.0;
    buf[static_cast<std::size_t>(j)] = v(j) * odd * cis(sign * 2.0 * kPi * out_center * static_cast<double>(j - n / 2) * d);
  }
  std::vector<Complex> out;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  if (sign < 0)
    fft.fwd(out, buf);
  else
    fft.inv(out, buf);
  const double half = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  const Complex global = d * half * cis(sign * 2.0 * kPi * c * out_center);
  Eigen::VectorXcd f(n);
  for (Index k = 0; k < n; ++k) {
    const double odd = (k % 2 == 0) ? 1.0 : -1.0;
    f(k) = global * odd * cis(sign * 2.0 * kPi * c * static_cast<double>(k - n / 2) / (static_cast<double>(n) * d)) *
           out[static_cast<std::size_t>(k)];
  }
  return f;
}

// Index of frequency xi among the bins of a centred DFT on `lattice`.
Index frequency_bin(double xi, const Axis& lattice) {
  const double r = xi * static_cast<double>(lattice.count) * lattice.step + static_cast<double>(lattice.count / 2);
  const double k = std::round(r);
  if (std::abs(r - k) > kLatticeTol) throw LatticeError("frequency is not on the DFT lattice of the signal grid");
  if (k < 0 || k >= static_cast<double>(lattice.count))
    throw std::invalid_argument("frequency outside the representable range of the signal grid");
  return static_cast<Index>(k);
}

const Axis& common_lattice(const Evaluator& f, const Evaluator& g) {
  if (!(f.lattice() == g.lattice())) throw std::invalid_argument("signals must share one quadrature lattice");
  return f.lattice();
}

EvalMode common_mode(const Evaluator& f, const Evaluator& g) {
  return (f.mode() == EvalMode::analytic && g.mode() == EvalMode::analytic) ? EvalMode::analytic : EvalMode::sampled;
}

void validate_grid(const PhaseSpaceGrid& grid) {
  grid.x.validate(false);
  grid.omega.validate(false);
}

// Reference value of one transform at (x, w).
Complex reference_point(TfrKind kind, const Evaluator& f, const Evaluator& g, double x, double w, const Axis& lat,
                        EvalMode mode) {
  const double d = lat.step;
  Complex acc = 0.0;
  switch (kind) {
    case TfrKind::grossmann_royer:
      for (Index j = 0; j < lat.count; ++j) {
        const double t = lat.point(j);
        acc += cis(4.0 * kPi * w * (t - x)) * f.at(2.0 * x - t) * std::conj(g.at(t));
      }
      return d * acc;
    case TfrKind::stft:
      for (Index j = 0; j < lat.count; ++j) {
        const double t = lat.point(j);
        acc += cis(-2.0 * kPi * t * w) * f.at(t) * std::conj(g.at(t - x));
      }
      return d * acc;
    case TfrKind::wigner:
      if (mode == EvalMode::analytic) {
        for (Index j = 0; j < lat.count; ++j) {
          const double t = lat.point(j);
          acc += cis(-2.0 * kPi * w * t) * f.at(x + 0.5 * t) * std::conj(g.at(x - 0.5 * t));
        }
        return d * acc;
      }
      // u = x + t/2 keeps every argument on the lattice.
      for (Index j = 0; j < lat.count; ++j) {
        const double u = lat.point(j);
        acc += cis(-4.0 * kPi * w * (u - x)) * f.at(u) * std::conj(g.at(2.0 * x - u));
      }
      return 2.0 * d * acc;
    case TfrKind::ambiguity:
      if (mode == EvalMode::analytic) {
        for (Index j = 0; j < lat.count; ++j) {
          const double t = lat.point(j);
          acc += cis(-2.0 * kPi * w * t) * f.at(t + 0.5 * x) * std::conj(g.at(t - 0.5 * x));
        }
        return d * acc;
      }
      // u = t + x/2.
      for (Index j = 0; j < lat.count; ++j) {
        const double u = lat.point(j);
        acc += cis(-2.0 * kPi * w * u) * f.at(u) * std::conj(g.at(u - x));
      }
      return cis(kPi * w * x) * d * acc;
  }
  return acc;
}

void fast_row(TfrKind kind, const Evaluator& f, const Evaluator& g, double x, const Axis& omega, const Axis& lat,
              Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> row) {
  Eigen::VectorXcd h(lat.count);
  for (Index j = 0; j < lat.count; ++j) {
    const double t = lat.point(j);
    switch (kind) {
      case TfrKind::grossmann_royer: h(j) = f.at(2.0 * x - t) * std::conj(g.at(t)); break;
      case TfrKind::stft:
      case TfrKind::ambiguity: h(j) = f.at(t) * std::conj(g.at(t - x)); break;
      case TfrKind::wigner: h(j) = f.at(t) * std::conj(g.at(2.0 * x - t)); break;
    }
  }
  const Eigen::VectorXcd spec = centered_dft(h, lat, 0.0, -1);
  for (Index m = 0; m < omega.count; ++m) {
    const double w = omega.point(m);
    switch (kind) {
      case TfrKind::grossmann_royer: row(m) = cis(-4.0 * kPi * w * x) * spec(frequency_bin(-2.0 * w, lat)); break;
      case TfrKind::stft: row(m) = spec(frequency_bin(w, lat)); break;
      case TfrKind::wigner: row(m) = 2.0 * cis(4.0 * kPi * w * x) * spec(frequency_bin(2.0 * w, lat)); break;
      case TfrKind::ambiguity: row(m) = cis(kPi * w * x) * spec(frequency_bin(w, lat)); break;
    }
  }
}

}  // namespace

void Axis::validate(bool require_even) const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("axis step must be > 0");
  if (!std::isfinite(center)) throw std::invalid_argument("axis center must be finite");
  if (count < 1) throw std::invalid_argument("axis count must be >= 1");
  if (require_even && count % 2 != 0) throw std::invalid_argument("signal axis count must be even");
}

void SampledSignal::validate() const {
  axis.validate(true);
  if (values.size() != axis.count) throw std::invalid_argument("signal value count does not match axis count");
  if (!values.allFinite()) throw std::invalid_argument("signal values must be finite");
}

double SampledSignal::norm() const { return std::sqrt(axis.step * values.squaredNorm()); }

Complex inner_product(const SampledSignal& f, const SampledSignal& g) {
  if (!(f.axis == g.axis)) throw std::invalid_argument("inner_product: axes differ");
  return f.axis.step * g.values.dot(f.values);  // dot conjugates its left operand
}

SampledSignal sample(const AnalyticFunction& f, const Axis& axis) {
  axis.validate(true);
  SampledSignal s{axis, Eigen::VectorXcd(axis.count)};
  for (Index j = 0; j < axis.count; ++j) s.values(j) = f(axis.point(j));
  return s;
}

SampledSignal fourier(const SampledSignal& f) {
  f.validate();
  const Axis out{0.0, 1.0 / (static_cast<double>(f.axis.count) * f.axis.step), f.axis.count};
  return SampledSignal{out, centered_dft(f.values, f.axis, 0.0, -1)};
}

SampledSignal inverse_fourier(const SampledSignal& fhat, double time_center) {
  fhat.validate();
  const Axis out{time_center, 1.0 / (static_cast<double>(fhat.axis.count) * fhat.axis.step), fhat.axis.count};
  return SampledSignal{out, centered_dft(fhat.values, fhat.axis, time_center, +1)};
}

Evaluator::Evaluator(SampledSignal s) : samples_(std::move(s)), lattice_(samples_.axis) { samples_.validate(); }

Evaluator::Evaluator(AnalyticFunction f, Axis quadrature) : analytic_(std::move(f)), lattice_(quadrature) {
  lattice_.validate(true);
}

Complex Evaluator::at(double x) const {
  if (analytic_) return (*analytic_)(x);
  const double r = (x - lattice_.center) / lattice_.step + static_cast<double>(lattice_.count / 2);
  const double j = std::round(r);
  if (std::abs(r - j) > kLatticeTol) throw LatticeError("argument is off the sample lattice");
  if (j < 0 || j >= static_cast<double>(lattice_.count)) return 0.0;
  return samples_.values(static_cast<Index>(j));
}

SampledSignal Evaluator::sampled() const { return analytic_ ? sample(*analytic_, lattice_) : samples_; }

Evaluator Evaluator::reflected() const {
  if (analytic_) return Evaluator(analytic_->reflected(), lattice_);
  if (lattice_.center != 0.0) throw LatticeError("reflection needs a lattice centred at 0");
  SampledSignal r{lattice_, Eigen::VectorXcd::Zero(lattice_.count)};
  for (Index j = 1; j < lattice_.count; ++j) r.values(j) = samples_.values(lattice_.count - j);
  return Evaluator(std::move(r));
}

std::string to_string(TfrKind k) {
  switch (k) {
    case TfrKind::grossmann_royer: return "grossmann-royer";
    case TfrKind::stft: return "stft";
    case TfrKind::wigner: return "wigner";
    case TfrKind::ambiguity: return "ambiguity";
  }
  return "unknown";
}

std::string to_string(EvalMode m) { return m == EvalMode::analytic ? "analytic" : "sampled"; }
std::string to_string(Method m) { return m == Method::fast ? "fast" : "reference"; }

TfrKind parse_kind(const std::string& s) {
  for (auto k : {TfrKind::grossmann_royer, TfrKind::stft, TfrKind::wigner, TfrKind::ambiguity})
    if (to_string(k) == s) return k;
  if (s == "gr") return TfrKind::grossmann_royer;
  throw std::invalid_argument("unknown transform kind: " + s);
}

Method parse_method(const std::string& s) {
  if (s == "fast") return Method::fast;
  if (s == "reference") return Method::reference;
  throw std::invalid_argument("unknown mode: " + s);
}

PhaseSpaceGrid default_grid(TfrKind kind, const Axis& lattice) {
  lattice.validate(true);
  const double bin = 1.0 / (static_cast<double>(lattice.count) * lattice.step);
  PhaseSpaceGrid grid{lattice, Axis{0.0, bin, lattice.count}};
  // -2w must land on bins (k - N/2) bin, k = 0..N-1: shift the half-step axis up by one step.
  if (kind == TfrKind::grossmann_royer) grid.omega = Axis{0.5 * bin, 0.5 * bin, lattice.count};
  if (kind == TfrKind::wigner) grid.omega = Axis{0.0, 0.5 * bin, lattice.count};
  return grid;
}

TFRResult compute(TfrKind kind, const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method) {
  validate_grid(grid);
  const Axis& lat = common_lattice(f, g);
  const EvalMode mode = common_mode(f, g);
  TFRResult r{kind, grid, Eigen::MatrixXcd(grid.x.count, grid.omega.count), Quadrature{lat, mode, method}};
  parallel_for(grid.x.count, [&](std::int64_t i) {
    const double x = grid.x.point(i);
    if (method == Method::fast) {
      fast_row(kind, f, g, x, grid.omega, lat, r.values.row(i));
      return;
    }
    for (Index m = 0; m < grid.omega.count; ++m)
      r.values(i, m) = reference_point(kind, f, g, x, grid.omega.point(m), lat, mode);
  });
  return r;
}

TFRResult grossmann_royer(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method) {
  return compute(TfrKind::grossmann_royer, f, g, grid, method);
}
TFRResult stft(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method) {
  return compute(TfrKind::stft, f, g, grid, method);
}
TFRResult wigner(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method) {
  return compute(TfrKind::wigner, f, g, grid, method);
}
TFRResult ambiguity(const Evaluator& f, const Evaluator& g, const PhaseSpaceGrid& grid, Method method) {
  return compute(TfrKind::ambiguity, f, g, grid, method);
}

bool property1_holds(const TFRResult& r, double norm_f, double norm_g) {
  return r.values.cwiseAbs().maxCoeff() <= norm_f * norm_g * (1.0 + 1e-12);
}

namespace {

double tail_fraction(const SampledSignal& s) {
  const double total = s.values.squaredNorm();
  if (total == 0.0) return 0.0;
  const Index n = s.axis.count;
  const Index edge = std::max<Index>(1, n / 16);
  const double tail = s.values.head(edge).squaredNorm() + s.values.tail(edge).squaredNorm();
  return tail / total;
}

}  // namespace

MoyalResult moyal_check(const Evaluator& f1, const Evaluator& g1, const Evaluator& f2, const Evaluator& g2,
                        Method method) {
  const Axis& lat = common_lattice(f1, g1);
  common_lattice(f1, f2);
  common_lattice(f1, g2);
  const std::array<SampledSignal, 4> s{f1.sampled(), g1.sampled(), f2.sampled(), g2.sampled()};
  for (const auto& v : s)
    if (tail_fraction(v) > 1e-12) throw std::domain_error("moyal_check: signal not contained in the window");

  const PhaseSpaceGrid grid = default_grid(TfrKind::grossmann_royer, lat);
  const TFRResult r1 = grossmann_royer(f1, g1, grid, method);
  const TFRResult r2 = grossmann_royer(f2, g2, grid, method);
  MoyalResult out{};
  out.lhs = grid.x.step * grid.omega.step * r1.values.cwiseProduct(r2.values.conjugate()).sum();
  const double scale = std::pow(2.0, -2 * kDim);
  out.rhs = scale * inner_product(s[0], s[2]) * std::conj(inner_product(s[1], s[3]));
  const double diff = std::abs(out.lhs - out.rhs);
  out.relative_error = std::abs(out.rhs) > 0.0 ? diff / std::abs(out.rhs) : std::numeric_limits<double>::infinity();
  const double cs = scale * s[0].norm() * s[1].norm() * s[2].norm() * s[3].norm();
  out.scaled_error = cs > 0.0 ? diff / cs : diff;
  return out;
}

SampledSignal invert(const TFRResult& r, const Evaluator& g1, const Evaluator& g2) {
  if (r.kind != TfrKind::grossmann_royer) throw std::invalid_argument("invert: needs a Grossmann-Royer result");
  const Axis& lat = r.quadrature.lattice;
  SampledSignal w1{lat, Eigen::VectorXcd(lat.count)};
  SampledSignal w2{lat, Eigen::VectorXcd(lat.count)};
  for (Index j = 0; j < lat.count; ++j) {
    w1.values(j) = g1.at(lat.point(j));
    w2.values(j) = g2.at(lat.point(j));
  }
  const Complex pairing = inner_product(w2, w1);
  if (std::abs(pairing) < 1e-8 * w1.norm() * w2.norm())
    throw std::domain_error("invert: windows are (nearly) orthogonal");

  const auto& gx = r.grid.x;
  const auto& gw = r.grid.omega;
  Eigen::MatrixXcd b(gx.count, gw.count);
  for (Index i = 0; i < gx.count; ++i)
    for (Index m = 0; m < gw.count; ++m) b(i, m) = r.values(i, m) * cis(-4.0 * kPi * gw.point(m) * gx.point(i));
  Eigen::MatrixXcd e(gw.count, lat.count);
  for (Index m = 0; m < gw.count; ++m)
    for (Index j = 0; j < lat.count; ++j) e(m, j) = cis(4.0 * kPi * gw.point(m) * lat.point(j));
  const Eigen::MatrixXcd s = b * e;  // s(x, t) = sum_w R(x, w) e^{4 pi i w (t - x)}

  const Complex c = std::pow(2.0, 2 * kDim) * gx.step * gw.step / pairing;
  SampledSignal f{lat, Eigen::VectorXcd::Zero(lat.count)};
  parallel_for(lat.count, [&](std::int64_t j) {
    const double t = lat.point(j);
    Complex acc = 0.0;
    for (Index i = 0; i < gx.count; ++i) acc += s(i, j) * g2.at(2.0 * gx.point(i) - t);
    f.values(j) = c * acc;
  });
  return f;
}

SymmetryReport symmetry_checks(const AnalyticFunction& f, const AnalyticFunction& g, const PhaseSpaceGrid& grid,
                               const Axis& quadrature) {
  validate_grid(grid);
  const Evaluator ef(f, quadrature);
  const Evaluator eg(g, quadrature);
  const Evaluator efh(f.fourier(), quadrature);
  const Evaluator egh(g.fourier(), quadrature);
  const auto mode = EvalMode::analytic;
  std::vector<std::array<double, 3>> rows(static_cast<std::size_t>(grid.x.count), {0.0, 0.0, 0.0});
  parallel_for(grid.x.count, [&](std::int64_t i) {
    const double x = grid.x.point(i);
    auto& dev = rows[static_cast<std::size_t>(i)];
    for (Index m = 0; m < grid.omega.count; ++m) {
      const double w = grid.omega.point(m);
      const Complex rgf = reference_point(TfrKind::grossmann_royer, ef, eg, x, w, quadrature, mode);
      const Complex rfg = reference_point(TfrKind::grossmann_royer, eg, ef, x, w, quadrature, mode);
      dev[0] = std::max(dev[0], std::abs(rgf - std::conj(rfg)));

      const Complex hat = reference_point(TfrKind::grossmann_royer, efh, egh, x, w, quadrature, mode);
      const Complex rot = reference_point(TfrKind::grossmann_royer, ef, eg, -w, x, quadrature, mode);
      dev[1] = std::max(dev[1], std::abs(hat - rot));

      // Operator pipeline: reflect, translate by 2x, modulate by 2w, pair with g.
      auto reflected = [&](double t) { return f(-t); };
      auto translated = [&](double t) { return reflected(t - 2.0 * x); };
      auto modulated = [&](double t) { return cis(2.0 * kPi * (2.0 * w) * t) * translated(t); };
      Complex pair = 0.0;
      for (Index j = 0; j < quadrature.count; ++j) {
        const double t = quadrature.point(j);
        pair += modulated(t) * std::conj(g(t));
      }
      pair *= quadrature.step * cis(-4.0 * kPi * w * x);
      dev[2] = std::max(dev[2], std::abs(pair - rgf));
    }
  });
  SymmetryReport rep{0.0, 0.0, 0.0};
  for (const auto& d : rows) {
    rep.conjugate_swap = std::max(rep.conjugate_swap, d[0]);
    rep.fourier_rotation = std::max(rep.fourier_rotation, d[1]);
    rep.operator_pipeline = std::max(rep.operator_pipeline, d[2]);
  }
  return rep;
}

RelationReport relation_checks(const AnalyticFunction& f, const AnalyticFunction& g, const PhaseSpaceGrid& grid,
                               const Axis& quadrature) {
  validate_grid(grid);
  const Evaluator ef(f, quadrature);
  const Evaluator eg(g, quadrature);
  const Evaluator egc = eg.reflected();
  const auto mode = EvalMode::analytic;
  const double two_n = std::pow(2.0, kDim);
  std::vector<std::array<double, 3>> rows(static_cast<std::size_t>(grid.x.count), {0.0, 0.0, 0.0});
  parallel_for(grid.x.count, [&](std::int64_t i) {
    const double x = grid.x.point(i);
    auto& dev = rows[static_cast<std::size_t>(i)];
    for (Index m = 0; m < grid.omega.count; ++m) {
      const double w = grid.omega.point(m);
      const Complex r = reference_point(TfrKind::grossmann_royer, ef, eg, x, w, quadrature, mode);
      const Complex wd = reference_point(TfrKind::wigner, ef, eg, x, w, quadrature, mode);
      dev[0] = std::max(dev[0], std::abs(wd - two_n * r));
      const Complex half = reference_point(TfrKind::grossmann_royer, ef, egc, 0.5 * x, 0.5 * w, quadrature, mode);
      const Complex v = reference_point(TfrKind::stft, ef, eg, x, w, quadrature, mode);
      dev[1] = std::max(dev[1], std::abs(v - cis(-kPi * x * w) * half));
      const Complex a = reference_point(TfrKind::ambiguity, ef, eg, x, w, quadrature, mode);
      dev[2] = std::max(dev[2], std::abs(a - half));
    }
  });
  RelationReport rep{0.0, 0.0, 0.0};
  for (const auto& d : rows) {
    rep.wigner = std::max(rep.wigner, d[0]);
    rep.stft = std::max(rep.stft, d[1]);
    rep.ambiguity = std::max(rep.ambiguity, d[2]);
  }
  return rep;
}

Complex BivariateGaussian::operator()(double x, double w) const {
  Complex p = 0.0;
  for (Eigen::Index i = coeffs.rows() - 1; i >= 0; --i) {
    Complex row = 0.0;
    for (Eigen::Index j = coeffs.cols() - 1; j >= 0; --j) row = row * w + coeffs(i, j);
    p = p * x + row;
  }
  return p * std::exp(qxx * x * x + qxw * x * w + qww * w * w);
}

BivariateGaussian BivariateGaussian::dx() const {
  // d/dx (P e^Q) = (P_x + (2 qxx x + qxw w) P) e^Q
  const auto r = coeffs.rows();
  const auto c = coeffs.cols();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(r + 1, c + 1);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      if (i > 0) d(i - 1, j) += static_cast<double>(i) * coeffs(i, j);
      d(i + 1, j) += 2.0 * qxx * coeffs(i, j);
      d(i, j + 1) += qxw * coeffs(i, j);
    }
  }
  return BivariateGaussian{d, qxx, qxw, qww};
}

BivariateGaussian BivariateGaussian::dw() const {
  const auto r = coeffs.rows();
  const auto c = coeffs.cols();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(r + 1, c + 1);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      if (j > 0) d(i, j - 1) += static_cast<double>(j) * coeffs(i, j);
      d(i, j + 1) += 2.0 * qww * coeffs(i, j);
      d(i + 1, j) += qxw * coeffs(i, j);
    }
  }
  return BivariateGaussian{d, qxx, qxw, qww};
}

BivariateGaussian grossmann_royer_closed_form(const AnalyticFunction& f, const AnalyticFunction& g) {
  auto centred_gaussian = [](const GaussianForm& s) {
    return s.degree() == 0 && s.x0 == 0.0 && s.w0 == 0.0;
  };
  if (!centred_gaussian(f.form()) || !centred_gaussian(g.form()))
    throw std::invalid_argument("closed-form Grossmann-Royer transform needs centred Gaussian inputs");
  const double a = f.form().a;
  const double b = g.form().a;
  const double c = a + b;
  // int e^{4 pi i w (t - x)} A e^{-a (2x - t)^2} conj(B) e^{-b t^2} dt
  Eigen::MatrixXcd k(1, 1);
  k(0, 0) = f.form().coeffs(0) * std::conj(g.form().coeffs(0)) * std::sqrt(kPi / c);
  return BivariateGaussian{k, Complex(-4.0 * a * b / c), 4.0 * kPi * kI * (a - b) / c, Complex(-4.0 * kPi * kPi / c)};
}

namespace {

double bivariate_sup(const BivariateGaussian& p, int ax, int aw, bool& flagged) {
  if (p.coeffs.isZero(0.0)) return 0.0;
  auto g = [&](double x, double w) { return std::pow(std::abs(x), ax) * std::pow(std::abs(w), aw) * std::abs(p(x, w)); };
  const double kx = -p.qxx.real();
  const double kw = -p.qww.real();
  const double deg = static_cast<double>(p.coeffs.rows() + p.coeffs.cols());
  double rx = 2.0 * std::sqrt((ax + deg + 1.0) / (2.0 * kx)) + 1.0;
  double rw = 2.0 * std::sqrt((aw + deg + 1.0) / (2.0 * kw)) + 1.0;
  constexpr int n = 121;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double hx = 2.0 * rx / (n - 1);
    const double hw = 2.0 * rw / (n - 1);
    double best = -1.0;
    double edge = 0.0;
    double bx = 0.0;
    double bw = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = -rx + i * hx;
        const double w = -rw + j * hw;
        const double v = g(x, w);
        if (i == 0 || j == 0 || i == n - 1 || j == n - 1) edge = std::max(edge, v);
        if (v > best) {
          best = v;
          bx = x;
          bw = w;
        }
      }
    }
    if (edge > 1e-3 * best) {
      rx *= 1.5;
      rw *= 1.5;
      continue;
    }
    // Alternating golden-section sweeps around the best node.
    double sx = hx;
    double sw = hw;
    for (int sweep = 0; sweep < 4; ++sweep) {
      auto along_x = [&](double x) { return g(x, bw); };
      auto along_w = [&](double w) { return g(bx, w); };
      auto golden = [](auto&& f, double lo, double hi, double& arg, double& val) {
        const double r = 0.6180339887498949;
        double c = hi - r * (hi - lo);
        double d = lo + r * (hi - lo);
        double fc = f(c);
        double fd = f(d);
        for (int it = 0; it < 60; ++it) {
          if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
          } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
          }
        }
        const double cand = fc >= fd ? c : d;
        const double cv = std::max(fc, fd);
        if (cv > val) {
          val = cv;
          arg = cand;
        }
      };
      golden(along_x, bx - sx, bx + sx, bx, best);
      golden(along_w, bw - sw, bw + sw, bw, best);
      sx *= 0.5;
      sw *= 0.5;
    }
    return best;
  }
  flagged = true;
  return g(0.0, 0.0);
}

}  // namespace

TfrMembership tfr_membership(const AnalyticFunction& f, const AnalyticFunction& g, double sigma, int max_order) {
  if (max_order < 4) throw std::invalid_argument("tfr_membership: max_order must be >= 4");
  const BivariateGaussian r = grossmann_royer_closed_form(f, g);
  const int k = max_order;

  // derivative forms indexed by (b1, b2) with b1 + b2 <= K
  std::vector<std::vector<BivariateGaussian>> forms(static_cast<std::size_t>(k + 1));
  for (int b1 = 0; b1 <= k; ++b1) {
    forms[b1].reserve(static_cast<std::size_t>(k + 1 - b1));
    forms[b1].push_back(b1 == 0 ? r : forms[b1 - 1][0].dx());
    for (int b2 = 1; b1 + b2 <= k; ++b2) forms[b1].push_back(forms[b1][b2 - 1].dw());
  }
  struct Job {
    int a1, a2, b1, b2;
  };
  std::vector<Job> jobs;
  for (int a1 = 0; a1 <= k; ++a1)
    for (int a2 = 0; a1 + a2 <= k; ++a2)
      for (int b1 = 0; b1 <= k; ++b1)
        for (int b2 = 0; b1 + b2 <= k; ++b2) jobs.push_back({a1, a2, b1, b2});
  std::vector<double> values(jobs.size(), 0.0);
  std::vector<char> flags(jobs.size(), 0);
  parallel_for(static_cast<std::int64_t>(jobs.size()), [&](std::int64_t e) {
    const Job& j = jobs[static_cast<std::size_t>(e)];
    bool flagged = false;
    values[static_cast<std::size_t>(e)] = bivariate_sup(forms[j.b1][j.b2], j.a1, j.a2, flagged);
    flags[static_cast<std::size_t>(e)] = flagged;
  });

  TfrMembership out;
  out.table = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (std::size_t e = 0; e < jobs.size(); ++e) {
    const Job& j = jobs[e];
    auto& cell = out.table(j.a1 + j.a2, j.b1 + j.b2);
    cell = std::max(cell, values[e]);
    out.flagged = out.flagged || flags[e] != 0;
  }
  out.fit = fit_tau(out.table, sigma);
  out.input_fit = fit_tau(seminorm_table(f, k).sup, sigma);
  return out;
}

}  // namespace extgev
