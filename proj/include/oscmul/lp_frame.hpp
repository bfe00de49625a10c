#pragma once

#include <functional>
#include <string>

#include "oscmul/grid.hpp"

namespace oscmul {

// C^infinity step rising from 0 (t <= 0) to 1 (t >= 1), built from
// e(t) = exp(-sharpness / t): S(t) = e(t) / (e(t) + e(1 - t)).
double smooth_step(double t, double sharpness = 1.0);

// A radial cutoff chi(|xi|) together with its support and identity region.
// support_hi may be +inf (zeta).
class RadialCutoff {
public:
  using Profile = std::function<double(double)>;

  RadialCutoff() = default;
  RadialCutoff(std::string name, Profile profile, double support_lo, double support_hi,
               double one_lo, double one_hi);

  double operator()(double r) const { return profile_(std::abs(r)); }
  // chi(2^{-j} r)
  double dilated(double r, double j) const { return profile_(std::abs(r) * std::exp2(-j)); }

  const std::string& name() const { return name_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  double one_lo() const { return one_lo_; }
  double one_hi() const { return one_hi_; }

private:
  std::string name_;
  Profile profile_;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  double one_lo_ = 0.0;
  double one_hi_ = 0.0;
};

struct FrameKnobs {
  double inner = 1.0;      // phi = 1 on |xi| <= inner
  double outer = 2.0;      // supp phi in |xi| <= outer
  double sharpness = 1.0;  // exponent constant of the smooth step
};

// Cutoffs used by the decomposition and the necessity constructions.
struct AuxCutoffs {
  RadialCutoff theta;      // 1 on [1/2, 2], supp in [1/3, 3]
  RadialCutoff phi_nec;    // 1 on [0, 2],   supp in [0, 3]
  RadialCutoff psi_nec;    // the frame's psi, nonzero on [2/3, 3/2]
  RadialCutoff tilde_psi;  // 1 on [1/2, 2], supp in [1/3, 3]
  RadialCutoff tilde_phi;  // 1 on [0, 2],   supp in [0, 3]
};

// Littlewood-Paley frame: phi, psi = phi - phi(2 .), zeta = 1 - phi, plus
// the auxiliary cutoffs. Invariants are checked when the frame is built.
struct LPFrame {
  FrameKnobs knobs;
  RadialCutoff phi;
  RadialCutoff psi;
  RadialCutoff zeta;
  AuxCutoffs aux;
  int smoothness_order = 4;

  // psi_0 = phi, psi_j = psi(2^{-j} .)
  double psi_j(int j, double r) const { return j == 0 ? phi(r) : psi.dilated(r, j); }
  double phi_j(int j, double r) const { return phi.dilated(r, j); }
};

LPFrame build_frame(const FrameKnobs& knobs = {});

enum class CutoffKind { phi_j, psi_j, zeta, theta, phi_nec, psi_nec, tilde_psi, tilde_phi };

// Samples chi(2^{-j} |xi|) on the frequency grid (zeta ignores j).
// Throws RangeError if the dilated support passes max_resolved_freq.
SampledField eval_cutoff(const LPFrame& frame, CutoffKind which, int j, const GridSpec& grid);

const RadialCutoff& cutoff_of(const LPFrame& frame, CutoffKind which);

}  // namespace oscmul
