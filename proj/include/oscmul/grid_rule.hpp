#pragma once

#include <cstddef>

#include "oscmul/grid.hpp"

namespace oscmul {

// Grid sizing rule for the periodic stand-in of R^n.
//
// A field is described by the half-width of the region where it carries
// mass (half_extent) and the largest |xi| in its Fourier support (max_freq).
// The rule picks the smallest power-of-two N with
//     max_resolved_freq = margin * max_freq   and   period >= 2 * half_extent,
// then stretches the period to pi N / (margin * max_freq).
struct GridRule {
  double margin = 2.0;
  // Tails of the dyadic cutoffs' inverse transforms, in units of the
  // cutoff's own length scale 2^{-k}; 256 units leaves < 1e-6 relative mass.
  double tail_units = 256.0;
  std::size_t max_points = std::size_t{1} << 23;
};

GridSpec size_grid(int dim, double half_extent, double max_freq, const GridRule& rule = {});

// Half-extent of (e^{i c |xi|^s} chi(2^{-k} xi))^v when chi is supported in
// lo <= |xi| <= hi: the stationary set |x| = |c| s |xi|^{s-1} over the
// support, widened by 25 %, plus the cutoff tail rule.tail_units * 2^{-k}.
double dispersed_extent(double s, double phase_coeff, double k, double lo, double hi,
                        const GridRule& rule = {});

}  // namespace oscmul
