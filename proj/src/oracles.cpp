#include "extgev/oracles.hpp"

#include <cmath>

namespace extgev::oracles {

NumericMax geometric_sup_by_search(double h, double tau, double sigma) {
  const double lh = std::log(h);
  auto f = [&](double log_rho) {
    const double rho = std::exp(log_rho);
    return std::pow(rho, sigma) * (lh - tau * log_rho);
  };
  // Scan ln rho on a wide window; the maximand is unimodal in ln rho.
  const double lo = -30.0;
  const double hi = 30.0;
  const int n = 60001;
  const double step = (hi - lo) / (n - 1);
  int best = 0;
  double best_v = f(lo);
  for (int i = 1; i < n; ++i) {
    const double v = f(lo + step * i);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  const double a = lo + step * (best > 0 ? best - 1 : 0);
  const double b = lo + step * (best < n - 1 ? best + 1 : n - 1);
  const NumericMax m = golden_max(f, a, b);
  return {m.value, std::exp(m.argmax)};
}

EnumeratedMax associated_by_enumeration(double log_x, double tau, double sigma, std::int64_t pmax) {
  EnumeratedMax best{0.0, 0};
  for (std::int64_t p = 1; p <= pmax; ++p) {
    const double pd = static_cast<double>(p);
    const double lm = p < 2 ? 0.0 : tau * std::pow(pd, sigma) * std::log(pd);
    const double v = pd * log_x - lm;
    if (v > best.value) best = {v, p};
  }
  return best;
}

}  // namespace extgev::oracles
