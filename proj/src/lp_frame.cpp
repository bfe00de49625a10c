#include "oscmul/lp_frame.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oscmul/error.hpp"

namespace oscmul {

double smooth_step(double t, double sharpness) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-sharpness / t);
  const double b = std::exp(-sharpness / (1.0 - t));
  return a / (a + b);
}

RadialCutoff::RadialCutoff(std::string name, Profile profile, double support_lo,
                           double support_hi, double one_lo, double one_hi)
    : name_(std::move(name)),
      profile_(std::move(profile)),
      support_lo_(support_lo),
      support_hi_(support_hi),
      one_lo_(one_lo),
      one_hi_(one_hi) {}

namespace {

// 1 on [one_lo, one_hi], 0 outside (lo, hi); lo == one_lo means no inner edge.
RadialCutoff plateau(std::string name, double lo, double one_lo, double one_hi, double hi,
                     double sharpness) {
  auto fn = [=](double r) {
    double up = 1.0;
    if (one_lo > lo) up = smooth_step((r - lo) / (one_lo - lo), sharpness);
    const double down = 1.0 - smooth_step((r - one_hi) / (hi - one_hi), sharpness);
    return up * down;
  };
  return RadialCutoff(std::move(name), fn, lo, hi, one_lo, one_hi);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError("frame invariant violated: " + what);
}

void verify(const LPFrame& f) {
  constexpr int kSamples = 4000;
  double prev = 2.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = 3.0 * i / kSamples;
    const double p = f.phi(r);
    check(std::isfinite(p), "phi finite");
    check(p <= prev + 1e-15, "phi non-increasing in |xi|");
    prev = p;
    if (r <= 1.0) check(p == 1.0, "phi = 1 on |xi| <= 1");
    if (r >= 2.0) check(p == 0.0, "phi = 0 on |xi| >= 2");
    const double s = f.psi(r);
    if (r < 0.5 || r > 2.0) check(s == 0.0, "supp psi in [1/2, 2]");
    if (r >= 2.0 / 3.0 && r <= 1.5) check(s > 0.0, "psi != 0 on [2/3, 3/2]");
    check(f.zeta(r) == 1.0 - p, "zeta = 1 - phi");
    // telescoping up to k = 8
    double acc = 0.0;
    for (int j = 0; j <= 8; ++j) acc += f.psi_j(j, r * 64.0);
    check(std::abs(acc - f.phi_j(8, r * 64.0)) < 1e-12, "sum psi_j = phi_k");
  }
  for (const RadialCutoff* c : {&f.aux.theta, &f.aux.phi_nec, &f.aux.tilde_psi, &f.aux.tilde_phi}) {
    for (int i = 0; i <= kSamples; ++i) {
      const double r = 4.0 * i / kSamples;
      const double v = (*c)(r);
      if (r >= c->one_lo() && r <= c->one_hi()) check(v == 1.0, c->name() + " = 1 on identity region");
      if (r <= c->support_lo() && c->support_lo() > 0.0) check(v == 0.0, c->name() + " support");
      if (r >= c->support_hi()) check(v == 0.0, c->name() + " support");
    }
  }
}

}  // namespace

LPFrame build_frame(const FrameKnobs& knobs) {
  if (!(knobs.sharpness > 0.0) || !std::isfinite(knobs.sharpness))
    throw ConstructionError("smooth step sharpness must be positive, otherwise the transition is not monotone");
  if (!(knobs.inner >= 1.0 && knobs.outer <= 2.0 && knobs.inner < knobs.outer))
    throw ConstructionError("need 1 <= inner < outer <= 2 for phi = 1 on |xi| <= 1 and supp phi in |xi| <= 2");

  LPFrame f;
  f.knobs = knobs;
  const double in = knobs.inner, out = knobs.outer, k = knobs.sharpness;
  auto phi = [=](double r) { return 1.0 - smooth_step((r - in) / (out - in), k); };
  f.phi = RadialCutoff("phi", phi, 0.0, out, 0.0, in);
  f.psi = RadialCutoff("psi", [=](double r) { return phi(r) - phi(2.0 * r); }, in / 2.0, out,
                       out / 2.0, in);
  f.zeta = RadialCutoff("zeta", [=](double r) { return 1.0 - phi(r); }, in,
                        std::numeric_limits<double>::infinity(), out,
                        std::numeric_limits<double>::infinity());
  f.aux.theta = plateau("theta", 1.0 / 3.0, 0.5, 2.0, 3.0, k);
  f.aux.phi_nec = plateau("phi_nec", 0.0, 0.0, 2.0, 3.0, k);
  f.aux.psi_nec = f.psi;
  f.aux.tilde_psi = plateau("tilde_psi", 1.0 / 3.0, 0.5, 2.0, 3.0, k);
  f.aux.tilde_phi = plateau("tilde_phi", 0.0, 0.0, 2.0, 3.0, k);
  verify(f);
  return f;
}

const RadialCutoff& cutoff_of(const LPFrame& frame, CutoffKind which) {
  switch (which) {
    case CutoffKind::phi_j: return frame.phi;
    case CutoffKind::psi_j: return frame.psi;
    case CutoffKind::zeta: return frame.zeta;
    case CutoffKind::theta: return frame.aux.theta;
    case CutoffKind::phi_nec: return frame.aux.phi_nec;
    case CutoffKind::psi_nec: return frame.aux.psi_nec;
    case CutoffKind::tilde_psi: return frame.aux.tilde_psi;
    case CutoffKind::tilde_phi: return frame.aux.tilde_phi;
  }
  throw UsageError("unknown cutoff kind");
}

SampledField eval_cutoff(const LPFrame& frame, CutoffKind which, int j, const GridSpec& grid) {
  if (j < 0) throw UsageError("eval_cutoff needs j >= 0");
  const RadialCutoff& c = cutoff_of(frame, which);
  const bool dilate = which != CutoffKind::zeta;
  // psi_0 is phi
  const RadialCutoff& use = (which == CutoffKind::psi_j && j == 0) ? frame.phi : c;
  if (dilate) {
    const double reach = use.support_hi() * std::exp2(j);
    if (reach > grid.max_resolved_freq()) {
      std::ostringstream os;
      os << use.name() << " dilated by 2^" << j << " reaches |xi| = " << reach
         << " beyond the resolved " << grid.max_resolved_freq();
      throw RangeError(os.str());
    }
  }
  SampledField out(grid, Domain::frequency);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r = out.radius(i);
    out[i] = dilate ? use.dilated(r, j) : use(r);
  }
  return out;
}

}  // namespace oscmul
