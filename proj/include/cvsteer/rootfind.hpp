#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "cvsteer/types.hpp"

namespace cvsteer {

struct BisectionResult {
  std::optional<double> root;  // empty when the bracket shows no sign change
  double bracket_width = 0.0;
  double residual = 0.0;  // f at the returned root
  int iterations = 0;
};

/// Bisection on [lo, hi] until |f| < f_tol. No sign change in the bracket is
/// not an error; the result simply carries no root.
template <typename F>
BisectionResult bisect(F&& f, double lo, double hi, double f_tol = 1e-12, int max_iter = 200) {
  if (!(lo < hi)) {
    throw ContractViolation("bisect: requires lo < hi");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) < f_tol) {
    return BisectionResult{lo, hi - lo, flo, 0};
  }
  if (std::abs(fhi) < f_tol) {
    return BisectionResult{hi, hi - lo, fhi, 0};
  }
  if (flo * fhi > 0.0) {
    return BisectionResult{std::nullopt, hi - lo, 0.0, 0};
  }
  for (int i = 1; i <= max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (std::abs(fmid) < f_tol) {
      return BisectionResult{mid, hi - lo, fmid, i};
    }
    if (flo * fmid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  throw NumericDomainError("bisect: no convergence to |f| < tolerance within the iteration cap");
}

struct GoldenSectionResult {
  double arg_max = 0.0;
  double max_value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Kinks are fine; only unimodality matters.
template <typename F>
GoldenSectionResult golden_section_max(F&& f, double lo, double hi, double x_tol = 1e-9) {
  if (!(lo < hi)) {
    throw ContractViolation("golden_section_max: requires lo < hi");
  }
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++iterations;
  }
  const double x = 0.5 * (a + b);
  return GoldenSectionResult{x, f(x), iterations};
}

}  // namespace cvsteer
