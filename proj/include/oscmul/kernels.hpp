#pragma once

#include <string>
#include <vector>

#include "oscmul/grid.hpp"
#include "oscmul/grid_rule.hpp"
#include "oscmul/lp_frame.hpp"

namespace oscmul {

enum class KernelKind { H, K, L };

std::string to_string(KernelKind k);

// Decay window of 2^{j(1-s)} |x|: [a, b] bounds the large region and
// [a', b'] the region where the kernel is bounded below.
struct WindowConstants {
  double a = 0.0;
  double b = 0.0;
  double a_prime = 0.0;
  double b_prime = 0.0;
};

WindowConstants window_constants(double s);

struct KernelRecord {
  KernelKind kind = KernelKind::H;
  int j = 0;
  double s = 0.0;
  SampledField samples;
  WindowConstants window;
  // K_j only, when requested: shells[k-1] = K_{k,j}, k = 1..j+1.
  std::vector<SampledField> shells;
};

// Grid for one kernel following the sizing rule; `cutoff` is the psi of
// H_j or the theta of K_j / L. For L the algebraic tail never drops below
// the wrap-around tolerance, so `l_half_extent` fixes the extent instead.
GridSpec kernel_grid(KernelKind kind, double s, int j, int dim, const RadialCutoff& cutoff,
                     const GridRule& rule = {}, double l_half_extent = 2048.0);

// Same period, points doubled until [a', b'] holds at least `min_points` samples.
GridSpec window_resolved_grid(const GridSpec& grid, double s, int j, std::size_t min_points = 200);

// H_j = (e^{i|xi|^s} psi(2^{-j} xi))^v
KernelRecord compute_Hj(double s, int j, const RadialCutoff& psi, const GridSpec& grid);

// K_j = (e^{i|xi|^s} zeta(xi) theta(2^{-j} xi))^v with theta supported in |xi| <= 2.
KernelRecord compute_Kj(double s, int j, const RadialCutoff& theta, const LPFrame& frame,
                        const GridSpec& grid, bool keep_shells = false);

// K_{k,j} = (e^{i|xi|^s} psi_k(xi) theta(2^{-j} xi))^v, 1 <= k <= j + 1.
SampledField compute_Kj_shell(double s, int j, int k, const RadialCutoff& theta,
                              const LPFrame& frame, const GridSpec& grid);

// L = (e^{i|xi|^s} theta(xi))^v
KernelRecord compute_L(double s, const RadialCutoff& theta, const GridSpec& grid);

struct StationaryData {
  std::vector<double> x;
  std::vector<double> eta0;
  double phase_at_crit = 0.0;  // 2^{js} phi_j(x, eta0)
  double hessian_det = 0.0;    // s^n (s-1) |eta0|^{(s-2)n}
  int signature = 0;           // n - 2 for s < 1, n for s > 1
  Complex leading_value;       // filled by stationary_phase_leading
  bool in_support = true;
};

// Phase of the rescaled integral: phi_j(x, eta) = |eta|^s + 2^{j(1-s)} x.eta.
double phase_function(double s, int j, const std::vector<double>& x, const std::vector<double>& eta);

// Critical point of phi_j(x, .). Throws UsageError at x = 0.
StationaryData stationary_point(double s, int j, const std::vector<double>& x);

// Closed-form leading term of H_j(x). Zero (with in_support = false) when
// |eta0| is outside the 1.1-dilated support of psi.
StationaryData stationary_phase_leading(double s, int j, const std::vector<double>& x,
                                        const RadialCutoff& psi);

enum class DecayRegion { inner, window, outer };

std::string to_string(DecayRegion r);

DecayRegion classify_decay_region(double s, int j, double radius);

// Radial kernel in the plane, (2pi)^{-1} int_0^inf e^{i r^s} chi(r) J_0(r rho) r dr,
// with chi(r) = cutoff(2^{-k} r) (times zeta(r) when with_zeta).
Complex radial_kernel_2d(double s, int k, const RadialCutoff& cutoff, double rho,
                         const RadialCutoff* zeta = nullptr);

// Writes <prefix>.bin (little-endian interleaved complex doubles) and
// <prefix>.txt (grid, s, j, window constants).
void write_kernel_dump(const KernelRecord& rec, const std::string& prefix);

}  // namespace oscmul
