#pragma once

#include <string>
#include <vector>

#include "oscmul/lp_frame.hpp"

namespace oscmul {

// One sweep of a scale variable (j, A or a refinement level) for a fixed
// configuration. ratio = measured / bound_shape; the constant is fitted at
// the first scale and later ratios may exceed it by at most `slack`.
struct LemmaSeries {
  std::string label;
  std::string scale_name;
  std::vector<double> scales;
  std::vector<double> measured;
  std::vector<double> bound_shape;
  std::vector<double> ratio;
  double constant = 0.0;
  double growth = 0.0;  // max ratio / constant
  bool passed = false;
  bool asserted = true;  // informational sweeps do not enter the suite verdict
};

struct LemmaSuiteReport {
  std::string name;
  std::vector<LemmaSeries> series;
  bool passed = false;
};

LemmaSeries finish_series(LemmaSeries s, double slack = 0.2);

// ||S_j f||_p / ||f||_p against (2^j)^{sn|1/p - 1/2|}, p in {1, 2, inf}.
LemmaSuiteReport lemma_sj_lp(const LPFrame& frame, double s, const std::vector<int>& j_values);

// ||S_j f||_2 against 2^{jn/2} min{(2^j r)^t, (2^j r)^{-nt/2}}, t in {0, 1},
// atoms r in {1, 1/4, 1/16}; each r sweeps j from 2^j r = 4, where the
// band of S_j already covers the bulk of the atom's spectrum.
LemmaSuiteReport lemma_sj_l2_atoms(const LPFrame& frame, double s, int j_count = 6);

// ||T f||_q / ||f||_p under grid refinement, p <= q.
LemmaSuiteReport lemma_t_lq(const LPFrame& frame, double s);

// max_{A <= |x| <= 2A} |T f| A^{n+s} for atoms at the origin, A in {2, 4, 8}.
LemmaSuiteReport lemma_t_far_field(const LPFrame& frame, double s);

// s < 1: ||S_j f||_{L^1(|x| >= 2)} over j for atoms.
LemmaSuiteReport lemma_sj_outside(const LPFrame& frame, double s, const std::vector<int>& j_values);

// s < 1: ||S_j f||_{L^2(|x| <= A)} / ||f||_inf against A^{n(1-s)/2}, A in [0.1, 10].
// The constant is the sup over A; the asserted series tracks it across j.
LemmaSuiteReport lemma_sj_inside(const LPFrame& frame, double s, const std::vector<int>& j_values);

// s > 1: ||S_j f||_{L^2(|x| <= A)} / ||f||_inf against A^{n/2}, A >= 2^{j(s-1)}.
// Same verdict rule as lemma_sj_inside.
LemmaSuiteReport lemma_sj_large_s(const LPFrame& frame, double s, const std::vector<int>& j_values);

// Every suite at its default parameters (s = 1/2 and s = 2 where both apply).
std::vector<LemmaSuiteReport> run_lemma_suites(const LPFrame& frame);

}  // namespace oscmul
