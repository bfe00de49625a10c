#pragma once

#include <array>
#include <vector>

#include "oscmul/atoms.hpp"
#include "oscmul/grid.hpp"
#include "oscmul/lp_frame.hpp"
#include "oscmul/spectral.hpp"
#include "oscmul/symbols.hpp"

namespace oscmul {

// Linear pieces, all with the oscillation e^{i|xi|^s}:
//   S      zeta(xi) theta(2^{-j} xi)     (the S_j of the kernel lemmas)
//   T      theta(xi)
//   S_ell  zeta(xi) theta_ell(2^{-j} xi)
//   T_ell  phi(xi) theta_ell(2^{-j} xi)
enum class PieceKind { S, T, S_ell, T_ell };

struct LinearPiece {
  PieceKind kind = PieceKind::S;
  double s = 0.5;
  int j = 0;
  FactorFn theta;
  double theta_support = 2.0;
  SampledField symbol;
};

// theta must vanish for |xi| > theta_support (<= 2).
LinearPiece make_linear_piece(PieceKind kind, double s, int j, FactorFn theta, const LPFrame& frame,
                              const GridSpec& grid, double theta_support = 2.0);

// inverse_ft(symbol * forward_ft(f))
SampledField apply_linear(const LinearPiece& piece, const SampledField& f);

// sum_k c_k u_k(xi) v_k(eta)
struct SeparableComponent {
  Complex coeff;
  FactorFn left;
  FactorFn right;
};
using SeparableSymbol = std::vector<SeparableComponent>;

SeparableSymbol to_separable(const SeparableExpansion& ex);

// T^s_sigma(f, g) for separable sigma: sum_k c_k (osc u_k)(D) f * (osc v_k)(D) g.
SampledField apply_bilinear(const SeparableSymbol& sigma, double s, const SampledField& f,
                            const SampledField& g, bool oscillation = true);

// Direct double sum over the frequency grid; the oracle path. n = 1 and
// N <= 4096 only.
SampledField apply_bilinear_dense(const SymbolSpec& sigma, double s, const SampledField& f,
                                  const SampledField& g, bool oscillation = true);

struct FourProducts {
  SampledField TT, TS, ST, SS;  // T^1 f T^2 g, T^1 f S^2 g, S^1 f T^2 g, S^1 f S^2 g
  SampledField sum() const { return TT + TS + ST + SS; }
};

// The phi / zeta split of one term theta_1(2^{-j} xi) theta_2(2^{-j} eta).
FourProducts four_product_split(const FactorFn& theta1, const FactorFn& theta2, double s, int j,
                                const LPFrame& frame, const SampledField& f, const SampledField& g);

// e^{i omega x} times a plateau of height 1 on |x| <= half_width, with a
// smooth unit-length edge.
SampledField modulated_plateau(const GridSpec& grid, double omega, double half_width);

enum class PiecePair { TT, TS, ST, SS };

struct GoalSumReport {
  std::vector<int> j_values;
  std::vector<double> summands;  // 2^{jm} max_g || U^1_j f V^2_j g ||_1
  std::vector<double> running;   // partial sums
  ScalingReport summand_fit;
  ScalingReport running_fit;
};

// Evaluates the goal-estimate sum for one atom over a family of bounded g
// (each with sup norm 1); every summand takes the worst g.
GoalSumReport goal_sum(double s, double m, const FactorFn& theta1, const FactorFn& theta2,
                       const Atom& f, const std::vector<SampledField>& g_family,
                       const std::vector<int>& j_values, PiecePair uv, const LPFrame& frame);

}  // namespace oscmul
