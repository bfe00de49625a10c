#include "oscmul/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oscmul/error.hpp"
#include "oscmul/quadrature.hpp"
#include "oscmul/spectral.hpp"

namespace oscmul {

namespace {

void check_s(double s) {
  if (!(s > 0.0) || s == 1.0) throw UsageError("phase exponent needs s > 0, s != 1");
}

void check_reach(double reach, const GridSpec& grid, const std::string& what) {
  if (reach > grid.max_resolved_freq()) {
    std::ostringstream os;
    os << what << " reaches |xi| = " << reach << " beyond the resolved " << grid.max_resolved_freq();
    throw RangeError(os.str());
  }
}

Complex oscillation(double s, double r) { return std::polar(1.0, std::pow(r, s)); }

double norm_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double c : v) acc += c * c;
  return std::sqrt(acc);
}

}  // namespace

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::H: return "H_j";
    case KernelKind::K: return "K_j";
    case KernelKind::L: return "L";
  }
  return "?";
}

std::string to_string(DecayRegion r) {
  switch (r) {
    case DecayRegion::inner: return "inner";
    case DecayRegion::window: return "window";
    case DecayRegion::outer: return "outer";
  }
  return "?";
}

WindowConstants window_constants(double s) {
  check_s(s);
  const double e = std::abs(1.0 - s);
  return {s * std::pow(4.0, -e), s * std::pow(4.0, e), s * std::pow(1.5, -e), s * std::pow(1.5, e)};
}

GridSpec kernel_grid(KernelKind kind, double s, int j, int dim, const RadialCutoff& cutoff,
                     const GridRule& rule, double l_half_extent) {
  check_s(s);
  double extent = 0.0, max_freq = 0.0;
  switch (kind) {
    case KernelKind::H:
      extent = dispersed_extent(s, 1.0, j, cutoff.support_lo(), cutoff.support_hi(), rule);
      max_freq = cutoff.support_hi() * std::exp2(j);
      break;
    case KernelKind::K: {
      max_freq = cutoff.support_hi() * std::exp2(j);
      // zeta switches on at |xi| = 1, so its tail lives on the unit scale
      const double window = s * std::max(1.0, std::pow(max_freq, s - 1.0));
      extent = 1.25 * window + rule.tail_units;
      break;
    }
    case KernelKind::L:
      extent = l_half_extent;
      max_freq = cutoff.support_hi();
      break;
  }
  GridSpec g = size_grid(dim, extent, max_freq, rule);
  if (dim == 2 && g.points > 4096) {
    std::ostringstream os;
    os << "planar kernel grid needs " << g.points << "^2 points; use radial_kernel_2d instead";
    throw ConfigError(os.str());
  }
  return g;
}

GridSpec window_resolved_grid(const GridSpec& grid, double s, int j, std::size_t min_points) {
  const WindowConstants w = window_constants(s);
  const double width = (w.b_prime - w.a_prime) * std::exp2(-j * (1.0 - s));
  std::size_t n = grid.points;
  while (width / (grid.period / static_cast<double>(n)) < static_cast<double>(min_points)) n *= 2;
  return GridSpec::make(grid.dim, grid.period, n);
}

KernelRecord compute_Hj(double s, int j, const RadialCutoff& psi, const GridSpec& grid) {
  check_s(s);
  check_reach(psi.support_hi() * std::exp2(j), grid, "H_j symbol");
  SampledField sym(grid, Domain::frequency);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double r = sym.radius(i);
    const double c = psi.dilated(r, j);
    sym[i] = c == 0.0 ? Complex{} : c * oscillation(s, r);
  }
  return KernelRecord{KernelKind::H, j, s, inverse_ft(sym), window_constants(s), {}};
}

SampledField compute_Kj_shell(double s, int j, int k, const RadialCutoff& theta,
                              const LPFrame& frame, const GridSpec& grid) {
  check_s(s);
  if (k < 1 || k > j + 1) throw UsageError("shell index needs 1 <= k <= j + 1");
  check_reach(std::min(theta.support_hi() * std::exp2(j), frame.psi.support_hi() * std::exp2(k)),
              grid, "K_{k,j} symbol");
  SampledField sym(grid, Domain::frequency);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double r = sym.radius(i);
    const double c = frame.psi_j(k, r) * theta.dilated(r, j);
    sym[i] = c == 0.0 ? Complex{} : c * oscillation(s, r);
  }
  return inverse_ft(sym);
}

KernelRecord compute_Kj(double s, int j, const RadialCutoff& theta, const LPFrame& frame,
                        const GridSpec& grid, bool keep_shells) {
  check_s(s);
  if (j < 0) throw UsageError("K_j needs j >= 0");
  if (theta.support_hi() > 2.0) throw UsageError("K_j needs theta supported in |xi| <= 2");
  check_reach(theta.support_hi() * std::exp2(j), grid, "K_j symbol");
  SampledField sym(grid, Domain::frequency);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double r = sym.radius(i);
    const double c = frame.zeta(r) * theta.dilated(r, j);
    sym[i] = c == 0.0 ? Complex{} : c * oscillation(s, r);
  }
  KernelRecord rec{KernelKind::K, j, s, inverse_ft(sym), window_constants(s), {}};
  if (keep_shells)
    for (int k = 1; k <= j + 1; ++k) rec.shells.push_back(compute_Kj_shell(s, j, k, theta, frame, grid));
  return rec;
}

KernelRecord compute_L(double s, const RadialCutoff& theta, const GridSpec& grid) {
  check_s(s);
  if (theta.support_hi() > 2.0) throw UsageError("L needs theta supported in |xi| <= 2");
  check_reach(theta.support_hi(), grid, "L symbol");
  SampledField sym(grid, Domain::frequency);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double r = sym.radius(i);
    const double c = theta(r);
    sym[i] = c == 0.0 ? Complex{} : c * oscillation(s, r);
  }
  return KernelRecord{KernelKind::L, 0, s, inverse_ft(sym), window_constants(s), {}};
}

double phase_function(double s, int j, const std::vector<double>& x, const std::vector<double>& eta) {
  if (x.size() != eta.size()) throw UsageError("phase_function: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * eta[i];
  return std::pow(norm_of(eta), s) + std::exp2(j * (1.0 - s)) * dot;
}

StationaryData stationary_point(double s, int j, const std::vector<double>& x) {
  check_s(s);
  const int n = static_cast<int>(x.size());
  if (n < 1 || n > 2) throw UsageError("stationary_point supports n = 1, 2");
  const double rx = norm_of(x);
  if (rx == 0.0) throw UsageError("stationary_point: x = 0 has no critical point");
  StationaryData d;
  d.x = x;
  const double mag = std::pow(std::exp2(j * (1.0 - s)) * rx / s, 1.0 / (s - 1.0));
  d.eta0.resize(n);
  for (int i = 0; i < n; ++i) d.eta0[i] = -x[i] / rx * mag;
  d.phase_at_crit = std::pow(rx, s / (s - 1.0)) * std::pow(s, -s / (s - 1.0)) * (1.0 - s);
  d.hessian_det = std::pow(s, n) * (s - 1.0) * std::pow(mag, (s - 2.0) * n);
  d.signature = s < 1.0 ? n - 2 : n;
  return d;
}

StationaryData stationary_phase_leading(double s, int j, const std::vector<double>& x,
                                        const RadialCutoff& psi) {
  StationaryData d = stationary_point(s, j, x);
  const int n = static_cast<int>(x.size());
  const double r0 = norm_of(d.eta0);
  d.in_support = r0 >= psi.support_lo() / 1.1 && r0 <= psi.support_hi() * 1.1;
  if (!d.in_support) {
    d.leading_value = 0.0;
    return d;
  }
  const double amp = std::pow(2.0 * kPi, -0.5 * n) / std::sqrt(std::abs(d.hessian_det)) * psi(r0) *
                     std::exp2(j * (n - 0.5 * n * s));
  d.leading_value = amp * std::polar(1.0, d.phase_at_crit + kPi * d.signature / 4.0);
  return d;
}

DecayRegion classify_decay_region(double s, int j, double radius) {
  const WindowConstants w = window_constants(s);
  const double t = std::exp2(j * (1.0 - s)) * std::abs(radius);
  if (t < w.a) return DecayRegion::inner;
  if (t <= w.b) return DecayRegion::window;
  return DecayRegion::outer;
}

Complex radial_kernel_2d(double s, int k, const RadialCutoff& cutoff, double rho,
                         const RadialCutoff* zeta) {
  check_s(s);
  const double scale = std::exp2(k);
  double lo = cutoff.support_lo() * scale;
  const double hi = cutoff.support_hi() * scale;
  if (zeta) lo = std::max(lo, zeta->support_lo());
  if (!(hi > lo)) return 0.0;
  const double rate = s * std::max(std::pow(lo > 0.0 ? lo : 1e-300, s - 1.0), std::pow(hi, s - 1.0));
  const double panel = kPi / (2.0 * (std::min(rate, 1e6) + std::abs(rho) + 1.0));
  auto f = [&](double r) -> Complex {
    double c = cutoff.dilated(r, k);
    if (zeta) c *= (*zeta)(r);
    if (c == 0.0) return 0.0;
    return c * oscillation(s, r) * std::cyl_bessel_j(0.0, r * rho) * r;
  };
  return integrate_gk15(f, lo, hi, panel, 1e-12).value / (2.0 * kPi);
}

void write_kernel_dump(const KernelRecord& rec, const std::string& prefix) {
  const auto& g = rec.samples.grid();
  {
    std::ofstream bin(prefix + ".bin", std::ios::binary);
    if (!bin) throw ConfigError("cannot open " + prefix + ".bin for writing");
    for (const Complex& v : rec.samples.samples()) {
      const double parts[2] = {v.real(), v.imag()};
      // little-endian on every supported target; bytes are written in host order
      static_assert(std::endian::native == std::endian::little, "dump format is little-endian");
      bin.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
  }
  std::ofstream txt(prefix + ".txt");
  if (!txt) throw ConfigError("cannot open " + prefix + ".txt for writing");
  txt << std::setprecision(17);
  txt << "kind = " << to_string(rec.kind) << "\n"
      << "s = " << rec.s << "\n"
      << "j = " << rec.j << "\n"
      << "dim = " << g.dim << "\n"
      << "period = " << g.period << "\n"
      << "points = " << g.points << "\n"
      << "dx = " << g.dx() << "\n"
      << "x0 = " << g.x(0) << "\n"
      << "a = " << rec.window.a << "\n"
      << "b = " << rec.window.b << "\n"
      << "a_prime = " << rec.window.a_prime << "\n"
      << "b_prime = " << rec.window.b_prime << "\n"
      << "layout = little-endian float64 pairs (re, im), centred order\n";
}

}  // namespace oscmul
