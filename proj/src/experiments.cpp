#include "oscmul/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscmul/error.hpp"
#include "oscmul/kernels.hpp"
#include "oscmul/operators.hpp"

namespace oscmul {

namespace {

struct MemberShape {
  double phase = 0.0;  // c in e^{i c |xi|^s}
  double scale = 0.0;  // k in psi(2^{-k} xi)
};

MemberShape shape_of(FamilyName f, double s, int j) {
  switch (f) {
    case FamilyName::f_plus: return {1.0, double(j)};
    case FamilyName::f_minus: return {-1.0, double(j)};
    case FamilyName::f_plain: return {0.0, double(j)};
    case FamilyName::g_nec:
      if (!(s < 1.0)) throw UsageError("g_nec is defined for s < 1 only");
      return {-1.0, j * (1.0 - s)};
    case FamilyName::h_nec: return {-2.0, double(j)};
  }
  throw UsageError("unknown family");
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

GridSpec merged_grid(std::initializer_list<std::pair<FamilyName, int>> members, double s, double extra_extent,
                     const GridRule& rule) {
  const double lo = 0.5, hi = 2.0;
  double extent = extra_extent, freq = 0.0;
  for (const auto& [f, j] : members) {
    const MemberShape sh = shape_of(f, s, j);
    extent = std::max(extent, dispersed_extent(s, sh.phase, sh.scale, lo, hi, rule));
    freq = std::max(freq, hi * std::exp2(sh.scale));
  }
  return size_grid(1, extent, freq, rule);
}

// rank-one necessity symbol, optionally with the roles of xi and eta swapped
SeparableSymbol necessity_symbol(double m, int j, const LPFrame& frame, bool swapped) {
  const RadialCutoff theta = frame.aux.theta, phi = frame.aux.phi_nec;
  const double amp = std::exp2(j * m);
  FactorFn th = [=](double x) { return Complex(theta.dilated(x, j)); };
  FactorFn ph = [=](double x) { return Complex(phi.dilated(x, j)); };
  return swapped ? SeparableSymbol{{amp, ph, th}} : SeparableSymbol{{amp, th, ph}};
}

struct InputPair {
  FamilyName left;
  FamilyName right;
  bool swapped = false;
};

InputPair inputs_for(Region region, double s) {
  switch (region) {
    case Region::I: return {FamilyName::f_minus, FamilyName::f_minus};
    case Region::II: return {FamilyName::f_plain, FamilyName::f_plain};
    case Region::IV:
      return s < 1.0 ? InputPair{FamilyName::f_plain, FamilyName::g_nec}
                     : InputPair{FamilyName::f_plain, FamilyName::h_nec};
    case Region::VI:
      return s < 1.0 ? InputPair{FamilyName::g_nec, FamilyName::f_plain, true}
                     : InputPair{FamilyName::h_nec, FamilyName::f_plain, true};
    default: break;
  }
  throw UsageError("necessity runs cover regions I, II, IV and VI");
}

// spatial half-extent needed by the region-IV (s < 1) output psi^v(2^{j(1-s)} x)
double output_extent(Region region, double s, int j, const GridRule& rule) {
  if ((region == Region::IV || region == Region::VI) && s < 1.0)
    return rule.tail_units * std::exp2(-j * (1.0 - s));
  return 0.0;
}

}  // namespace

std::string to_string(FamilyName f) {
  switch (f) {
    case FamilyName::f_plus: return "f_plus";
    case FamilyName::f_minus: return "f_minus";
    case FamilyName::f_plain: return "f_plain";
    case FamilyName::g_nec: return "g_nec";
    case FamilyName::h_nec: return "h_nec";
  }
  return "?";
}

FamilyName family_from_string(const std::string& name) {
  for (FamilyName f : {FamilyName::f_plus, FamilyName::f_minus, FamilyName::f_plain, FamilyName::g_nec,
                       FamilyName::h_nec})
    if (to_string(f) == name) return f;
  throw UsageError("unknown test family '" + name + "'");
}

double family_norm_slope(FamilyName f, double s, int n, double p) {
  const double u = inv(p);
  switch (f) {
    case FamilyName::f_plus:
    case FamilyName::f_minus:
    case FamilyName::h_nec: return n - s * n / 2.0 - (1.0 - s) * n * u;
    case FamilyName::f_plain: return n - n * u;
    case FamilyName::g_nec:
      if (!(s < 1.0)) throw UsageError("g_nec is defined for s < 1 only");
      return (1.0 - s) * (n - s * n / 2.0) - (1.0 - s) * (1.0 - s) * n * u;
  }
  throw UsageError("unknown family");
}

Annulus family_support(FamilyName f, double s, int j) {
  const double k = std::exp2(shape_of(f, s, j).scale);
  return {0.5 * k, 2.0 * k};
}

GridSpec family_grid(FamilyName f, double s, int j, int dim, const GridRule& rule) {
  const MemberShape sh = shape_of(f, s, j);
  return size_grid(dim, dispersed_extent(s, sh.phase, sh.scale, 0.5, 2.0, rule), 2.0 * std::exp2(sh.scale),
                   rule);
}

SampledField family_member(FamilyName f, double s, int j, const LPFrame& frame, const GridSpec& grid) {
  const MemberShape sh = shape_of(f, s, j);
  const double reach = frame.psi.support_hi() * std::exp2(sh.scale);
  if (reach > grid.max_resolved_freq()) {
    std::ostringstream os;
    os << to_string(f) << " at j = " << j << " reaches |xi| = " << reach << " beyond the resolved "
       << grid.max_resolved_freq();
    throw RangeError(os.str());
  }
  SampledField F(grid, Domain::frequency);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = F.radius(i);
    const double c = frame.psi.dilated(r, sh.scale);
    if (c == 0.0) continue;
    F[i] = sh.phase == 0.0 ? Complex(c) : c * std::polar(1.0, sh.phase * std::pow(r, s));
  }
  return inverse_ft(F);
}

TestFamily build_test_family(FamilyName f, double s, const std::vector<int>& j_values,
                             const LPFrame& frame, int dim, const GridRule& rule) {
  TestFamily fam;
  fam.name = f;
  fam.s = s;
  fam.dim = dim;
  fam.j_values = j_values;
  for (int j : j_values) {
    const GridSpec g = family_grid(f, s, j, dim, rule);
    SampledField x = family_member(f, s, j, frame, g);
    const SampledField F = forward_ft(x);
    const Annulus a = family_support(f, s, j);
    double outside = 0.0;
    const double peak = F.max_abs();
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double r = F.radius(i);
      if (r < a.lo * (1 - 1e-12) || r > a.hi * (1 + 1e-12)) outside = std::max(outside, std::abs(F[i]));
    }
    fam.support_violation = std::max(fam.support_violation, peak > 0.0 ? outside / peak : 0.0);
    fam.fields.push_back(std::move(x));
  }
  return fam;
}

ScalingReport family_norm_scaling(const TestFamily& fam, double p) {
  std::vector<double> v;
  for (const auto& f : fam.fields) v.push_back(lp_norm(f, p));
  ScalingReport rep = fit_dyadic_slope(fam.j_values, v);
  rep.predicted_slope = fam.predicted_slope(p);
  return rep;
}

ScalingReport plain_square_bmo_scaling(double s, const std::vector<int>& j_values, const LPFrame& frame,
                                       const GridRule& rule) {
  std::vector<double> v;
  for (int j : j_values) {
    const GridSpec g = family_grid(FamilyName::f_plain, s, j, 1, rule);
    const SampledField f = family_member(FamilyName::f_plain, s, j, frame, g);
    v.push_back(bmo_estimate(f * f));
  }
  ScalingReport rep = fit_dyadic_slope(j_values, v);
  rep.predicted_slope = 2.0;
  return rep;
}

double NecessityConfig::r() const {
  const double u = inv(p) + inv(q);
  return u == 0.0 ? kInf : 1.0 / u;
}

double NecessityConfig::resolved_m() const { return std::isnan(m) ? critical_order(s, n, p, q) : m; }

void NecessityConfig::validate() const {
  if (n != 1) throw UsageError("necessity runs are implemented for n = 1");
  if (!(s > 0.0) || s == 1.0) throw UsageError("necessity runs need s > 0, s != 1");
  const auto regions = classify_region(p, q);
  if (std::find(regions.begin(), regions.end(), region) == regions.end()) {
    std::ostringstream os;
    os << "(p, q) = (" << p << ", " << q << ") is not in region " << to_string(region);
    throw UsageError(os.str());
  }
  if (region == Region::III || region == Region::V)
    throw UsageError("necessity runs cover regions I, II, IV and VI");
  if (j_values.size() < 4) throw UsageError("necessity runs need at least four j values");
}

NecessityReport run_necessity(const NecessityConfig& cfg, const LPFrame& frame) {
  cfg.validate();
  const double s = cfg.s;
  const double r = cfg.r();
  const InputPair in = inputs_for(cfg.region, s);
  const bool windowed = cfg.region == Region::IV || cfg.region == Region::VI;
  const WindowConstants w = window_constants(s);
  NecessityReport rep;
  rep.critical_m = critical_order(s, cfg.n, cfg.p, cfg.q);
  rep.m = cfg.resolved_m();
  std::vector<double> ratios;
  for (int j : cfg.j_values) {
    const GridSpec grid = merged_grid({{in.left, j}, {in.right, j}}, s,
                                      output_extent(cfg.region, s, j, cfg.rule), cfg.rule);
    const SampledField f = family_member(in.left, s, j, frame, grid);
    const SampledField g = family_member(in.right, s, j, frame, grid);
    const SampledField t = apply_bilinear(necessity_symbol(rep.m, j, frame, in.swapped), s, f, g);
    double num;
    if (std::isinf(r))
      num = bmo_estimate(t);
    else if (r < 1.0)
      num = quasi_norm(t, r);
    else if (windowed) {
      const double to_x = std::exp2(-j * (1.0 - s));
      num = lp_norm_on(t, r, w.a_prime * to_x, w.b_prime * to_x);
    } else
      num = lp_norm(t, r);
    const double den = lp_norm(f, cfg.p) * lp_norm(g, cfg.q);
    rep.numerators.push_back(num);
    rep.denominators.push_back(den);
    ratios.push_back(num / den);
  }
  rep.scaling = fit_dyadic_slope(cfg.j_values, ratios);
  rep.scaling.predicted_slope = rep.m - rep.critical_m;
  return rep;
}

double bilinear_identity_check(Region region, double s, int j, double m, const LPFrame& frame,
                               const GridRule& rule) {
  const InputPair in = inputs_for(region, s);
  const GridSpec grid =
      merged_grid({{in.left, j}, {in.right, j}, {FamilyName::f_plus, j}}, s, output_extent(region, s, j, rule), rule);
  const SampledField f = family_member(in.left, s, j, frame, grid);
  const SampledField g = family_member(in.right, s, j, frame, grid);
  const SampledField t = apply_bilinear(necessity_symbol(m, j, frame, in.swapped), s, f, g);
  const Complex amp = std::exp2(j * m);
  SampledField expect(grid, Domain::space);
  switch (region) {
    case Region::I: {
      const SampledField p = family_member(FamilyName::f_plain, s, j, frame, grid);
      expect = amp * (p * p);
      break;
    }
    case Region::II: {
      const SampledField p = family_member(FamilyName::f_plus, s, j, frame, grid);
      expect = amp * (p * p);
      break;
    }
    case Region::IV:
    case Region::VI: {
      const SampledField plus = family_member(FamilyName::f_plus, s, j, frame, grid);
      if (s < 1.0) {
        // 2^{j(1-s)n} psi^v(2^{j(1-s)} x) = (psi(2^{-j(1-s)} .))^v
        SampledField F(grid, Domain::frequency);
        for (std::size_t i = 0; i < F.size(); ++i) F[i] = frame.psi.dilated(F.radius(i), j * (1.0 - s));
        expect = amp * (plus * inverse_ft(F));
      } else {
        expect = amp * (plus * family_member(FamilyName::f_minus, s, j, frame, grid));
      }
      break;
    }
    default: throw UsageError("identity checks cover regions I, II, IV and VI");
  }
  return (t - expect).max_abs() / expect.max_abs();
}

WindowBound window_lower_bound(double s, const std::vector<int>& j_values, const LPFrame& frame,
                               const GridRule& rule) {
  WindowBound out;
  out.j_values = j_values;
  const WindowConstants w = window_constants(s);
  for (int j : j_values) {
    const GridSpec g = kernel_grid(KernelKind::H, s, j, 1, frame.psi, rule);
    const KernelRecord h = compute_Hj(s, j, frame.psi, g);
    const double to_x = std::exp2(-j * (1.0 - s));
    const double norm = std::exp2(-j * (1.0 - s / 2.0));
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < h.samples.size(); ++i) {
      const double x = h.samples.radius(i);
      if (x < w.a_prime * to_x || x > w.b_prime * to_x) continue;
      const double v = std::abs(h.samples[i]) * norm;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.lower.push_back(lo);
    out.upper.push_back(hi);
  }
  for (std::size_t i = 0; i < out.lower.size() && out.j0 < 0; ++i) {
    bool stable = true;
    for (std::size_t k = i + 1; k < out.lower.size(); ++k)
      if (std::abs(out.lower[k] / out.lower[i] - 1.0) > 0.1) stable = false;
    if (stable && out.lower[i] > 0.0) out.j0 = out.j_values[i];
  }
  return out;
}

}  // namespace oscmul
