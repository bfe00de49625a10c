#pragma once

#include <functional>

#include "oscmul/grid.hpp"

namespace oscmul {

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  int panels = 0;
};

// Adaptive 15-point Gauss-Kronrod on [a, b] after splitting into panels no
// wider than max_panel. Panels whose Kronrod/Gauss difference exceeds
// tol * (1 + |panel value|) are bisected, up to max_depth times.
QuadratureResult integrate_gk15(const std::function<Complex(double)>& f, double a, double b,
                                double max_panel, double tol = 1e-13, int max_depth = 30);

}  // namespace oscmul
