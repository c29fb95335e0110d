#include "extgev/testfn.hpp"

#include "extgev/associated.hpp"
#include "extgev/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace extgev {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex horner(const Eigen::VectorXcd& c, double y) {
  Complex acc = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * y + c(k);
  return acc;
}

// Drops trailing exact zeros so degree() reflects the true polynomial.
Eigen::VectorXcd trimmed(const Eigen::VectorXcd& c) {
  Eigen::Index n = c.size();
  while (n > 1 && c(n - 1) == Complex(0.0)) --n;
  return c.head(std::max<Eigen::Index>(n, 1));
}

double weight_exponent(double p, double sigma) { return p > 1.0 ? std::pow(p, sigma) * std::log(p) : 0.0; }

// Upper bound of |(y + x0)^alpha Q(y)| e^{-a y^2} for |y| = r >= max(|x0|, r_mono);
// non-increasing in r there.
double envelope(const Eigen::VectorXcd& q, int alpha, double a, double r) {
  double poly = 0.0;
  double rk = 1.0;
  for (Eigen::Index k = 0; k < q.size(); ++k, rk *= r) poly += std::abs(q(k)) * rk;
  return std::pow(2.0 * r, alpha) * poly * std::exp(-a * r * r);
}

struct Scan {
  double value;
  double y;
  bool boundary;
};

template <typename G>
Scan scan_and_refine(G&& g, double radius, int points) {
  const double h = 2.0 * radius / (points - 1);
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i < points; ++i) {
    const double v = g(-radius + i * h);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  Scan s{best_v, -radius + best * h, best == 0 || best == points - 1};
  if (s.boundary || best_v <= 0.0) return s;
  double lo = s.y - h;
  double hi = s.y + h;
  const double r = 0.6180339887498949;
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = g(c);
  double fd = g(d);
  for (int it = 0; it < 80; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = g(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = g(d);
    }
  }
  const double cand = fc >= fd ? c : d;
  const double cv = std::max(fc, fd);
  if (cv > s.value) {
    s.value = cv;
    s.y = cand;
  }
  return s;
}

constexpr int kScanPoints = 4001;
constexpr double kMaxRadius = 1e4;

double monotone_radius(const GaussianForm& q, int alpha) {
  return std::max(std::abs(q.x0), std::sqrt((alpha + q.degree()) / (2.0 * q.a)));
}

}  // namespace

Complex GaussianForm::operator()(double x) const {
  const double y = x - x0;
  return std::exp(2.0 * kPi * w0 * x * kI) * horner(coeffs, y) * std::exp(-a * y * y);
}

double GaussianForm::log_abs(double x) const {
  const double y = x - x0;
  return std::log(std::abs(horner(coeffs, y))) - a * y * y;
}

GaussianForm GaussianForm::derivative() const {
  // (Q e^{2 pi i w0 x - a y^2})' = (Q' + (2 pi i w0 - 2 a y) Q) e^{...}
  const Eigen::Index n = coeffs.size();
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n + 1);
  const Complex m = 2.0 * kPi * w0 * kI;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k + 1 < n) d(k) += static_cast<double>(k + 1) * coeffs(k + 1);
    d(k) += m * coeffs(k);
    d(k + 1) -= 2.0 * a * coeffs(k);
  }
  GaussianForm out = *this;
  out.coeffs = trimmed(d);
  return out;
}

GaussianForm GaussianForm::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative: order must be >= 0");
  GaussianForm out = *this;
  for (int k = 0; k < order; ++k) out = out.derivative();
  return out;
}

GaussianForm GaussianForm::fourier() const {
  // psi(y) = P(y) e^{-a y^2}: y^k e^{-a y^2} -> (i/2pi)^k d^k/deta^k [sqrt(pi/a) e^{-b eta^2}], b = pi^2/a.
  // phi = e^{2 pi i w0 x} psi(x - x0) -> e^{-2 pi i x0 (xi - w0)} psihat(xi - w0).
  const double b = kPi * kPi / a;
  const Eigen::Index n = coeffs.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(n);  // coefficients of D^k e^{-b eta^2} / e^{-b eta^2}
  h(0) = 1.0;
  Complex factor = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    out += factor * coeffs(k) * h;
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j + 1 < n) next(j) += static_cast<double>(j + 1) * h(j + 1);
      if (j + 1 < n) next(j + 1) -= 2.0 * b * h(j);
    }
    h = next;
    factor *= kI / (2.0 * kPi);
  }
  out *= std::sqrt(kPi / a) * std::exp(2.0 * kPi * x0 * w0 * kI);
  return GaussianForm{trimmed(out), b, w0, -x0};
}

GaussianForm GaussianForm::reflected() const {
  Eigen::VectorXcd c = coeffs;
  for (Eigen::Index k = 1; k < c.size(); k += 2) c(k) = -c(k);
  return GaussianForm{c, a, -x0, -w0};
}

std::string to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::hermite: return "hermite";
    case Family::modulated_gaussian: return "modulated-translated gaussian";
  }
  return "unknown";
}

AnalyticFunction::AnalyticFunction(Family family, GaussianForm form, std::string id)
    : family_(family), form_(std::move(form)), id_(std::move(id)) {
  if (!(form_.a > 0.0)) throw std::invalid_argument("AnalyticFunction: width a must be > 0");
  if (form_.coeffs.size() == 0) form_.coeffs = Eigen::VectorXcd::Zero(1);
}

AnalyticFunction AnalyticFunction::gaussian(double a, double amplitude) {
  if (!(a > 0.0)) throw std::invalid_argument("gaussian: a must be > 0");
  Eigen::VectorXcd c(1);
  c(0) = amplitude;
  std::ostringstream id;
  id << "gaussian(a=" << a << ",amp=" << amplitude << ")";
  return AnalyticFunction(Family::gaussian, GaussianForm{c, a, 0.0, 0.0}, id.str());
}

AnalyticFunction AnalyticFunction::unit_gaussian() {
  AnalyticFunction g = gaussian(kPi, std::pow(2.0, 0.25));
  g.id_ = "unit-gaussian";
  return g;
}

AnalyticFunction AnalyticFunction::hermite(int k) {
  if (k < 0) throw std::invalid_argument("hermite: k must be >= 0");
  // Physicists' H_j(z) coefficients by H_{j+1} = 2z H_j - 2j H_{j-1}.
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(k + 1);
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(k + 1);
  cur(0) = 1.0;
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(k + 1);
    for (int m = 0; m < k; ++m) next(m + 1) += 2.0 * cur(m);
    next -= 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  const double norm = std::pow(2.0, 0.25) / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0));
  const double scale = std::sqrt(2.0 * kPi);
  Eigen::VectorXcd c(k + 1);
  for (int m = 0; m <= k; ++m) c(m) = norm * cur(m) * std::pow(scale, m);
  return AnalyticFunction(Family::hermite, GaussianForm{c, kPi, 0.0, 0.0}, "hermite(" + std::to_string(k) + ")");
}

AnalyticFunction AnalyticFunction::modulated_translated(const AnalyticFunction& base, double x0, double w0) {
  // e^{2 pi i w0 x} e^{2 pi i wb (x - x0)} P(x - x0 - xb) ... = e^{-2 pi i wb x0} e^{2 pi i (w0 + wb) x} P(...)
  GaussianForm f = base.form_;
  f.coeffs *= std::exp(-2.0 * kPi * f.w0 * x0 * kI);
  f.x0 += x0;
  f.w0 += w0;
  std::ostringstream id;
  id << "M(" << w0 << ")T(" << x0 << ")" << base.id_;
  return AnalyticFunction(Family::modulated_gaussian, f, id.str());
}

AnalyticFunction AnalyticFunction::hermite_combination(const Eigen::VectorXcd& weights) {
  if (weights.size() == 0) throw std::invalid_argument("hermite_combination: empty weights");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(weights.size());
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    const auto& hk = hermite(static_cast<int>(k)).form_.coeffs;
    c.head(hk.size()) += weights(k) * hk;
  }
  return AnalyticFunction(Family::hermite, GaussianForm{trimmed(c), kPi, 0.0, 0.0},
                          "hermite-combination(" + std::to_string(weights.size()) + ")");
}

AnalyticFunction AnalyticFunction::zero() {
  return AnalyticFunction(Family::gaussian, GaussianForm{Eigen::VectorXcd::Zero(1), kPi, 0.0, 0.0}, "zero");
}

Complex AnalyticFunction::moment_derivative(int alpha, int beta, double x) const {
  return std::pow(x, alpha) * derivative(beta, x);
}

AnalyticFunction AnalyticFunction::fourier() const {
  return AnalyticFunction(family_, form_.fourier(), "F[" + id_ + "]");
}

AnalyticFunction AnalyticFunction::reflected() const {
  return AnalyticFunction(family_, form_.reflected(), "R[" + id_ + "]");
}

SupSeminorm seminorm_sup(const AnalyticFunction& phi, int alpha, int beta) {
  return seminorm_sup(phi.form(), alpha, beta);
}

SupSeminorm seminorm_sup(const GaussianForm& form, int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw std::invalid_argument("seminorm_sup: orders must be >= 0");
  const GaussianForm q = form.derivative(beta);
  SupSeminorm out;
  if (q.is_zero()) return out;
  auto g = [&](double y) {
    return std::pow(std::abs(y + q.x0), alpha) * std::abs(horner(q.coeffs, y)) * std::exp(-q.a * y * y);
  };
  double radius = std::max(2.0 * monotone_radius(q, alpha), 1.0 / std::sqrt(q.a)) + 1.0;
  Scan s{};
  for (;;) {
    s = scan_and_refine(g, radius, kScanPoints);
    if (!s.boundary && envelope(q.coeffs, alpha, q.a, radius) <= 1e-3 * s.value) break;
    if (radius * 1.5 > kMaxRadius) {
      s.boundary = true;
      break;
    }
    radius *= 1.5;
  }
  out.value = s.value;
  out.argmax = s.y + q.x0;
  out.radius = radius;
  out.boundary_flag = s.boundary;
  return out;
}

L2Seminorm seminorm_l2(const AnalyticFunction& phi, int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw std::invalid_argument("seminorm_l2: orders must be >= 0");
  const GaussianForm q = phi.form().derivative(beta);
  L2Seminorm out;
  if (q.is_zero()) return out;
  auto g2 = [&](double y) {
    const double v = std::pow(std::abs(y + q.x0), alpha) * std::abs(horner(q.coeffs, y)) * std::exp(-q.a * y * y);
    return v * v;
  };
  const SupSeminorm peak = seminorm_sup(q, alpha, 0);
  // Magnitude tail below 1e-8 of the peak: squared tail is 1e-16 relative.
  double radius = std::max(peak.radius, monotone_radius(q, alpha) + 1.0);
  while (envelope(q.coeffs, alpha, q.a, radius) > 1e-8 * peak.value && radius < kMaxRadius) radius *= 1.25;
  out.insufficient_grid = peak.boundary_flag || envelope(q.coeffs, alpha, q.a, radius) > 1e-8 * peak.value;
  auto trapezoid = [&](double h) {
    const auto n = static_cast<Index>(std::ceil(radius / h));
    double acc = 0.0;
    for (Index j = -n; j <= n; ++j) acc += g2(j * h);
    return acc * h;
  };
  double h = 0.25 / std::sqrt(q.a);
  double prev = trapezoid(h);
  for (int it = 0; it < 10; ++it) {
    h *= 0.5;
    const double cur = trapezoid(h);
    const bool done = std::abs(cur - prev) <= 1e-13 * std::abs(cur);
    prev = cur;
    if (done) break;
  }
  out.value = std::sqrt(prev);
  out.radius = radius;
  out.step = h;
  return out;
}

SeminormTable seminorm_table(const AnalyticFunction& phi, int max_order) {
  if (max_order < 0) throw std::invalid_argument("seminorm_table: max_order must be >= 0");
  SeminormTable t;
  t.function_id = phi.id();
  t.max_order = max_order;
  const int k = max_order + 1;
  t.sup.resize(k, k);
  t.l2.resize(k, k);
  std::vector<char> flagged(static_cast<std::size_t>(k) * k, 0);
  parallel_for(static_cast<std::int64_t>(k) * k, [&](std::int64_t e) {
    const int i = static_cast<int>(e / k);
    const int j = static_cast<int>(e % k);
    const auto s = seminorm_sup(phi, i, j);
    const auto l = seminorm_l2(phi, i, j);
    t.sup(i, j) = s.value;
    t.l2(i, j) = l.value;
    flagged[static_cast<std::size_t>(e)] = s.boundary_flag || l.insufficient_grid;
  });
  t.any_flagged = std::any_of(flagged.begin(), flagged.end(), [](char c) { return c != 0; });
  return t;
}

namespace {

template <typename Denominator>
TauFit fit_with(const Eigen::MatrixXd& log_entries, double log_c, Denominator&& denom) {
  TauFit fit{0.0, log_c};
  for (Eigen::Index i = 0; i < log_entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < log_entries.cols(); ++j) {
      const double ls = log_entries(i, j);
      const double d = denom(i, j);
      if (std::isnan(ls) || d == 0.0 || ls == -std::numeric_limits<double>::infinity()) continue;
      fit.tau = std::max(fit.tau, (ls - log_c) / d);
    }
  }
  return fit;
}

template <typename Denominator>
double zero_denominator_log_c(const Eigen::MatrixXd& log_entries, Denominator&& denom) {
  double log_c = 0.0;
  for (Eigen::Index i = 0; i < log_entries.rows(); ++i)
    for (Eigen::Index j = 0; j < log_entries.cols(); ++j)
      if (!std::isnan(log_entries(i, j)) && denom(i, j) == 0.0) log_c = std::max(log_c, log_entries(i, j));
  return log_c;
}

void require_fit_size(const Eigen::MatrixXd& entries) {
  if (std::max(entries.rows(), entries.cols()) < 5)
    throw std::invalid_argument("fit_tau: the table needs orders up to at least 4");
}

// Negative entries map to NaN and are skipped with the NaNs.
Eigen::MatrixXd log_table(const Eigen::MatrixXd& entries) { return entries.array().log().matrix(); }

auto separate_denominator(double sigma) {
  return [sigma](Eigen::Index i, Eigen::Index j) {
    return weight_exponent(static_cast<double>(i), sigma) + weight_exponent(static_cast<double>(j), sigma);
  };
}

}  // namespace

TauFit fit_tau_log(const Eigen::MatrixXd& log_entries, double sigma) {
  require_fit_size(log_entries);
  const auto denom = separate_denominator(sigma);
  return fit_with(log_entries, zero_denominator_log_c(log_entries, denom), denom);
}

TauFit fit_tau(const Eigen::MatrixXd& entries, double sigma) { return fit_tau_log(log_table(entries), sigma); }

TauFit fit_tau_with_log_constant(const Eigen::MatrixXd& entries, double sigma, double log_c) {
  require_fit_size(entries);
  return fit_with(log_table(entries), log_c, separate_denominator(sigma));
}

TauFit fit_tau_summed(const Eigen::MatrixXd& entries, double sigma) {
  require_fit_size(entries);
  const Eigen::MatrixXd logs = log_table(entries);
  auto denom = [sigma](Eigen::Index i, Eigen::Index j) { return weight_exponent(static_cast<double>(i + j), sigma); };
  return fit_with(logs, zero_denominator_log_c(logs, denom), denom);
}

double required_log_constant(const Eigen::MatrixXd& entries, double sigma, double tau) {
  double log_c = 0.0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      const double s = entries(i, j);
      if (std::isnan(s) || s <= 0.0) continue;
      const double d = weight_exponent(static_cast<double>(i), sigma) + weight_exponent(static_cast<double>(j), sigma);
      log_c = std::max(log_c, std::log(s) - tau * d);
    }
  }
  return log_c;
}

DecayCheck associated_decay(const GaussianForm& form, double sigma, double tau) {
  DecayCheck out;
  out.tau = tau;
  if (form.is_zero()) {
    out.log_sup = -std::numeric_limits<double>::infinity();
    out.finite = true;
    return out;
  }
  std::optional<AssociatedFunction> t;
  if (tau > 0.0) t.emplace(WeightParams(tau, sigma));
  auto maximand = [&](double x) { return form.log_abs(x) + (t ? (*t)(x) : 0.0); };
  constexpr int points = 20001;
  double radius = std::abs(form.x0) + 8.0 / std::sqrt(form.a) + 8.0;
  for (;;) {
    const double lo = form.x0 - radius;
    const double h = 2.0 * radius / (points - 1);
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
      const double v = maximand(lo + i * h);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    out.log_sup = best_v;
    out.argmax = lo + best * h;
    const bool interior = best != 0 && best != points - 1;
    if (interior && std::isfinite(best_v)) {
      out.finite = true;
      return out;
    }
    if (radius * 2.0 > kMaxRadius) return out;
    radius *= 2.0;
  }
}

MembershipReport characterize(const AnalyticFunction& phi, double sigma, int max_order) {
  if (max_order < 4) throw std::invalid_argument("characterize: max_order must be >= 4");
  if (!(sigma > 1.0)) throw std::invalid_argument("characterize: sigma must be > 1");
  MembershipReport r;
  r.sigma = sigma;
  r.max_order = max_order;
  r.table = seminorm_table(phi, max_order);
  r.seminorms_flagged = r.table.any_flagged;

  const AnalyticFunction phihat = phi.fourier();
  r.fourier_table.resize(max_order + 1);
  for (int b = 0; b <= max_order; ++b) {
    const auto s = seminorm_sup(phihat, b, 0);
    r.fourier_table(b) = s.value;
    r.seminorms_flagged = r.seminorms_flagged || s.boundary_flag;
  }

  const Eigen::MatrixXd decay_col = r.table.sup.col(0);
  const Eigen::MatrixXd deriv_col = r.table.sup.row(0).transpose();
  const Eigen::MatrixXd fourier_col = r.fourier_table;
  r.joint = fit_tau(r.table.sup, sigma);
  r.decay = fit_tau(decay_col, sigma);
  r.deriv = fit_tau(deriv_col, sigma);
  r.fourier = fit_tau(fourier_col, sigma);
  r.joint_l2 = fit_tau(r.table.l2, sigma);
  r.joint_summed = fit_tau_summed(r.table.sup, sigma);

  const double inflate = std::pow(2.0, sigma);
  r.inflated_tau = inflate * std::max(r.decay.tau, r.deriv.tau);
  r.inflated_log_c = required_log_constant(r.table.sup, sigma, r.inflated_tau);
  r.l2_with_inflated_sup_log_c = required_log_constant(r.table.l2, sigma, inflate * r.joint.tau);
  r.sup_with_inflated_l2_log_c = required_log_constant(r.table.sup, sigma, inflate * r.joint_l2.tau);

  // tau_hat = 0 means the tables sit below C outright, so every tau > 0 certifies; start the decay checks from 1.
  double tau_hat = std::max(r.decay.tau, r.fourier.tau);
  if (tau_hat == 0.0) tau_hat = 1.0;
  r.decay_base_tau = tau_hat;
  r.space_decay = associated_decay(phi.form(), sigma, tau_hat / inflate);
  r.frequency_decay = associated_decay(phihat.form(), sigma, tau_hat / inflate);
  for (int j = 1; j <= 6; ++j) {
    const double tau = std::ldexp(tau_hat, -j);
    r.beurling_space.push_back(associated_decay(phi.form(), sigma, tau));
    r.beurling_frequency.push_back(associated_decay(phihat.form(), sigma, tau));
  }
  return r;
}

}  // namespace extgev
