#pragma once

#include <string>
#include <vector>

#include "oscmul/grid_rule.hpp"
#include "oscmul/lp_frame.hpp"
#include "oscmul/spectral.hpp"
#include "oscmul/symbols.hpp"

namespace oscmul {

// Test inputs of the necessity constructions (psi is the frame's psi):
//   f_plus  (e^{ i|xi|^s}   psi(2^{-j} xi))^v
//   f_minus (e^{-i|xi|^s}   psi(2^{-j} xi))^v
//   f_plain (psi(2^{-j} xi))^v
//   g_nec   (e^{-i|eta|^s}  psi(2^{-j(1-s)} eta))^v     (s < 1)
//   h_nec   (e^{-2i|eta|^s} psi(2^{-j} eta))^v
enum class FamilyName { f_plus, f_minus, f_plain, g_nec, h_nec };

std::string to_string(FamilyName f);
FamilyName family_from_string(const std::string& name);

// Predicted log2-slope in j of the L^p norm (n = space dimension).
double family_norm_slope(FamilyName f, double s, int n, double p);

// Fourier support annulus of a member: [lo, hi] in |xi|.
struct Annulus {
  double lo = 0.0;
  double hi = 0.0;
};
Annulus family_support(FamilyName f, double s, int j);

// Grid that holds one member under the sizing rule.
GridSpec family_grid(FamilyName f, double s, int j, int dim = 1, const GridRule& rule = {});

// One member on a given grid; throws RangeError when the support is not resolved.
SampledField family_member(FamilyName f, double s, int j, const LPFrame& frame, const GridSpec& grid);

struct TestFamily {
  FamilyName name = FamilyName::f_plus;
  double s = 0.5;
  int dim = 1;
  std::vector<int> j_values;
  std::vector<SampledField> fields;
  double support_violation = 0.0;  // max |F| outside the declared annulus / max |F|
  double predicted_slope(double p) const { return family_norm_slope(name, s, dim, p); }
};

TestFamily build_test_family(FamilyName f, double s, const std::vector<int>& j_values,
                             const LPFrame& frame, int dim = 1, const GridRule& rule = {});

// log2-slope fit of ||member||_{L^p} (p = kInf for the sup).
ScalingReport family_norm_scaling(const TestFamily& fam, double p);

// Slope of bmo_estimate((f_plain)^2); predicted 2n.
ScalingReport plain_square_bmo_scaling(double s, const std::vector<int>& j_values,
                                       const LPFrame& frame, const GridRule& rule = {});

struct NecessityConfig {
  Region region = Region::I;
  double s = 0.5;
  int n = 1;
  double p = kInf;
  double q = kInf;
  double m = std::numeric_limits<double>::quiet_NaN();  // NaN: use m_s(p, q)
  std::vector<int> j_values;
  GridRule rule;

  // 1/r = 1/p + 1/q
  double r() const;
  double resolved_m() const;
  void validate() const;
};

struct NecessityReport {
  ScalingReport scaling;  // measured = normalised ratio R_j
  double critical_m = 0.0;
  double m = 0.0;
  std::vector<double> numerators;
  std::vector<double> denominators;
};

NecessityReport run_necessity(const NecessityConfig& cfg, const LPFrame& frame);

// max |T^s_{sigma_j}(inputs) - closed form| / max |closed form| for the
// region's identity. Region IV uses g_nec for s < 1 and h_nec for s > 1.
double bilinear_identity_check(Region region, double s, int j, double m, const LPFrame& frame,
                               const GridRule& rule = {});

struct WindowBound {
  std::vector<int> j_values;
  std::vector<double> lower;  // min over a' <= 2^{j(1-s)}|x| <= b' of |H_j| 2^{-j(n - ns/2)}
  std::vector<double> upper;  // max over the same window, same normalisation
  int j0 = -1;                // first j after which `lower` stays within 10 %
};

WindowBound window_lower_bound(double s, const std::vector<int>& j_values, const LPFrame& frame,
                               const GridRule& rule = {});

}  // namespace oscmul
