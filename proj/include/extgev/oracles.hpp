#pragma once

// Reference computations used to check the main library: brute-force enumeration,
// dense grids with golden-section refinement, direct closed forms. None of these
// call into the routines they are used to check.

#include <cstdint>

namespace extgev::oracles {

struct NumericMax {
  double value;
  double argmax;
};

/// max over rho > 0 of rho^s ln h - tau rho^s ln rho, by a dense log grid and golden-section refinement.
NumericMax geometric_sup_by_search(double h, double tau, double sigma);

struct EnumeratedMax {
  double value;
  std::int64_t argmax;
};

/// max over p = 0..pmax of p L - tau p^s ln p (ties resolved towards the smaller p).
EnumeratedMax associated_by_enumeration(double log_x, double tau, double sigma, std::int64_t pmax);

/// Golden-section maximisation of a unimodal function on [a, b].
template <typename F>
NumericMax golden_max(F&& f, double a, double b, int iterations = 200) {
  const double r = 0.6180339887498949;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? NumericMax{fc, c} : NumericMax{fd, d};
}

}  // namespace extgev::oracles
