#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "oscmul/grid.hpp"

namespace oscmul {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Riemann-sum Fourier transform, f^(xi) = int e^{-i xi.x} f(x) dx.
SampledField forward_ft(const SampledField& f);

// Inverse transform, (g)^v(x) = (2pi)^{-n} int e^{i xi.x} g(xi) dxi.
SampledField inverse_ft(const SampledField& F);

// (sum |f|^p dx^n)^{1/p}; p = kInf gives the grid maximum. p < 1 is rejected.
double lp_norm(const SampledField& f, double p);

// Same as lp_norm restricted to samples with rmin <= |x| <= rmax.
double lp_norm_on(const SampledField& f, double p, double rmin, double rmax);

// L^r quasi-norm (sum |f|^r dx^n)^{1/r} for 0 < r < 1.
double quasi_norm(const SampledField& f, double r);

// Supremum over dyadic cells (side >= 4 dx) of the mean oscillation
// |Q|^{-1} sum_Q |f - f_Q| dx^n. A lower-bound estimator of the BMO norm.
double bmo_estimate(const SampledField& f);

struct ScalingReport {
  std::vector<int> j_values;
  std::vector<double> measured;
  double fitted_slope = 0.0;
  double predicted_slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least-squares line through (j, log2 value). Needs >= 4 positive values.
ScalingReport fit_dyadic_slope(std::span<const std::pair<int, double>> pairs);
ScalingReport fit_dyadic_slope(std::span<const int> j, std::span<const double> values);

}  // namespace oscmul
