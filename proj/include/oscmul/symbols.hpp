#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oscmul/grid.hpp"
#include "oscmul/lp_frame.hpp"

namespace oscmul {

// ---------------------------------------------------------------------------
// (p, q) geometry. Exponents use kInf for infinity; regions are stated in the
// (1/p, 1/q) unit square.

enum class Region { I, II, III, IV, V, VI };

std::string to_string(Region r);

// Every region containing (1/p, 1/q); boundary points return several.
std::vector<Region> classify_region(double p, double q);

// Critical order m_s(p, q). Evaluates every containing region's branch and
// throws std::logic_error if they disagree. s = 1 is rejected.
double critical_order(double s, int n, double p, double q);

// Branch formula of one region (no membership check).
double critical_order_branch(Region region, double s, int n, double p, double q);

// ---------------------------------------------------------------------------
// Bivariate symbols sigma(xi, eta), xi, eta in R (n = 1).

using SymbolFn = std::function<Complex(double, double)>;
using FactorFn = std::function<Complex(double)>;

struct SymbolSpec {
  std::string name;
  SymbolFn eval;
  double order = 0.0;
  int derivative_budget = 4;

  Complex operator()(double xi, double eta) const { return eval(xi, eta); }
};

// (1 + xi^2 + eta^2)^{m/2}
SymbolSpec elliptic_symbol(double m);
SymbolSpec constant_symbol(Complex c = 1.0);

struct SymbolClassReport {
  double order = 0.0;
  int max_order = 0;
  // constants[a][b] = sup |d_xi^a d_eta^b sigma| (1+|xi|+|eta|)^{-(m-a-b)}
  std::vector<std::vector<double>> constants;
  double worst = 0.0;
  bool passed = false;
};

struct SymbolSampling {
  double max_radius = 1e4;   // largest |xi|, |eta| sampled
  double min_radius = 1e-2;  // smallest nonzero magnitude
  int per_decade = 6;
};

// Central-difference estimate of the S^m_{1,0} constants with step
// h = 1e-3 (1 + |xi| + |eta|) on a signed log-spaced sample.
SymbolClassReport verify_symbol_class(const SymbolSpec& sigma, double m, int max_order,
                                      const SymbolSampling& sampling = {});

// ---------------------------------------------------------------------------
// Quadrant splitting: tau_1 = osc phi phi sigma, tau_2 = osc zeta phi sigma,
// tau_3 = osc phi zeta sigma, tau_4 = osc zeta zeta sigma with
// osc = e^{i(|xi|^s + |eta|^s)}.
std::array<SymbolSpec, 4> split_frequency_quadrants(const SymbolSpec& sigma, double s,
                                                    const LPFrame& frame);

// ---------------------------------------------------------------------------
// Coifman-Meyer decomposition sigma = sigma_0 + sum_j sigma_I,j + sum_k sigma_II,k.

struct CoifmanMeyerBlocks {
  SymbolSpec sigma0;                   // sigma phi(xi) phi(eta)
  std::vector<SymbolSpec> sigma_I;     // [j-1]: sigma psi_j(xi) phi_j(eta), j = 1..j_max
  std::vector<SymbolSpec> sigma_II;    // [k-1]: sigma phi_{k-1}(xi) psi_k(eta), k = 1..j_max
  int j_max = 0;

  // Sum of every block (equals sigma wherever |xi|, |eta| <= 2^{j_max}).
  Complex reconstruct(double xi, double eta) const;
};

// Throws RangeError when 2^{j_max + 1} exceeds the grid's resolved band.
CoifmanMeyerBlocks coifman_meyer_decompose(const SymbolSpec& sigma, const LPFrame& frame,
                                           int j_max, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Separable Fourier-series expansion of one dyadic block.

enum class BlockKind { zero, I, II };

struct SeparableTerm {
  Complex coeff;
  int a = 0;  // lattice index in xi
  int b = 0;  // lattice index in eta
};

struct SeparableExpansion {
  BlockKind kind = BlockKind::I;
  int j = 0;
  double order = 0.0;
  int lattice_radius = 16;
  int cell_points = 256;
  // Scale exponents: the xi factor is u(2^{-left_scale} xi), eta factor v(2^{-right_scale} eta).
  int left_scale = 0;
  int right_scale = 0;
  RadialCutoff left_cutoff;   // psi or phi of the frame
  RadialCutoff right_cutoff;
  std::vector<SeparableTerm> terms;  // |a|, |b| <= lattice_radius
  // max |truncated - block| / max |block| over the rescaled cell samples
  double cell_residual = 0.0;
  // same, restricted to the support of left_cutoff x right_cutoff
  double block_residual = 0.0;
  // sup over every computed coefficient (not just the kept ones)
  double max_coeff = 0.0;
  // envelope E(R) = max_{|a| >= R, all b} |c| (and the mirror in b), R = 0..cell_points/2-1
  std::vector<double> envelope_a;
  std::vector<double> envelope_b;

  // c psi^(a)(2^{-j} xi) phi^(b)(2^{-j} eta) summed over the kept terms.
  Complex evaluate(double xi, double eta) const;
  // Left and right factor of one term, e^{i a 2^{-l} xi} u(2^{-l} xi).
  Complex left_factor(const SeparableTerm& t, double xi) const;
  Complex right_factor(const SeparableTerm& t, double eta) const;
};

// Expands sigma(2^l xi, 2^r eta) u~(xi) v~(eta) on the cell (-pi, pi)^2 by a
// cell_points^2 DFT, where (u~, v~) = (tilde_psi, tilde_phi) for kind I,
// (tilde_phi, tilde_psi) for kind II (with l = j - 1, r = j) and
// (tilde_phi, tilde_phi) for kind zero.
SeparableExpansion separable_expand(const SymbolSpec& sigma, const LPFrame& frame, BlockKind kind,
                                    int j, double m, int lattice_radius = 16,
                                    int cell_points = 256);

// Log-log slope of an expansion's coefficient envelope over [r_lo, r_hi].
double coefficient_decay_exponent(const std::vector<double>& envelope, int r_lo, int r_hi);

// sigma_j(xi, eta) = 2^{jm} theta(2^{-j} xi) phi_nec(2^{-j} eta)
SymbolSpec build_necessity_symbol(double m, int j, const LPFrame& frame);

}  // namespace oscmul
