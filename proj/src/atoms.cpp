#include "oscmul/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "oscmul/error.hpp"

namespace oscmul {

namespace {

struct Profile {
  double steepness = 1.0;
  double tilt = 0.0;
};

Profile profile_for(std::uint64_t seed) {
  if (seed == 0) return {};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> steep(0.5, 2.0), tilt(-0.5, 0.5);
  Profile p;
  p.steepness = steep(rng);
  p.tilt = tilt(rng);
  return p;
}

// exp(-c / (1 - t^2)) (1 + tilt t^2) on |t| < 1
double bump(double t, const Profile& p) {
  const double u = 1.0 - t * t;
  if (u <= 0.0) return 0.0;
  return std::exp(-p.steepness / u) * (1.0 + p.tilt * t * t);
}

double displacement(const SampledField& f, std::size_t i, const std::vector<double>& c, int axis) {
  const double origin = c.empty() ? 0.0 : c[static_cast<std::size_t>(axis)];
  return f.coord(i, axis) - origin;
}

double distance(const SampledField& f, std::size_t i, const std::vector<double>& c) {
  const double d0 = displacement(f, i, c, 0);
  if (f.grid().dim == 1) return std::abs(d0);
  return std::hypot(d0, displacement(f, i, c, 1));
}

}  // namespace

Atom make_atom(AtomKind kind, double r, std::uint64_t seed, const GridSpec& grid) {
  if (kind == AtomKind::first && !(r > 0.0 && r < 1.0))
    throw UsageError("first-kind atoms need 0 < r < 1");
  if (kind == AtomKind::second && r != 1.0) throw UsageError("second-kind atoms have r = 1");
  if (r >= grid.period / 2.0) throw UsageError("atom support does not fit in the grid period");
  if (r < 8.0 * grid.dx()) throw UsageError("atom radius is under eight grid steps");
  const Profile prof = profile_for(seed);
  const int n = grid.dim;
  Atom a{kind, r, std::vector<double>(static_cast<std::size_t>(n), 0.0), SampledField(grid, Domain::space)};
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double t = a.samples.radius(i) / r;
    const double b = bump(t, prof);
    if (b == 0.0) continue;
    // first kind: x_1 times a radial bump is odd in x_1, hence mean zero
    a.samples[i] = kind == AtomKind::first ? a.samples.coord(i, 0) / r * b : b;
  }
  const double peak = a.samples.max_abs();
  if (!(peak > 0.0)) throw UsageError("atom is not resolved by the grid");
  a.samples *= Complex(std::pow(r, -n) / peak);
  return a;
}

AtomCheck validate_atom(const SampledField& f, AtomKind kind, double r,
                        const std::vector<double>& center) {
  if (f.domain() != Domain::space) throw UsageError("validate_atom expects a space-domain field");
  const int n = f.grid().dim;
  AtomCheck c;
  Complex sum{};
  double l1 = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    if (distance(f, i, center) > r * (1.0 + 1e-12)) c.outside_support = std::max(c.outside_support, m);
    peak = std::max(peak, m);
    sum += f[i];
    l1 += m;
  }
  const double vol = f.grid().cell_volume(Domain::space);
  c.sup_ratio = peak * std::pow(r, n);
  c.mean = std::abs(sum) * vol;
  l1 *= vol;
  if (c.outside_support > 0.0)
    c.worst = "support";
  else if (c.sup_ratio > 1.0 + 1e-12)
    c.worst = "sup bound";
  else if (kind == AtomKind::first && c.mean > 1e-12 * std::max(1.0, l1))
    c.worst = "moment";
  c.passed = c.worst.empty();
  return c;
}

AtomCheck validate_atom(const Atom& a) { return validate_atom(a.samples, a.kind, a.r, a.center); }

SampledField plain_bump(const GridSpec& grid, double radius, double height) {
  SampledField f(grid, Domain::space);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = height * bump(f.radius(i) / radius, Profile{});
  const double peak = f.max_abs();
  if (peak > 0.0) f *= Complex(height / peak);
  return f;
}

std::vector<Atom> partition_bump(const GridSpec& grid) {
  const int n = grid.dim;
  const SampledField big = plain_bump(grid, 2.0, std::pow(2.0, -n));
  const double w = 0.5;
  auto hat = [w](double x, double c) { return std::max(0.0, 1.0 - std::abs(x - c) / w); };
  std::vector<double> centers;
  for (int k = -4; k <= 4; ++k) centers.push_back(k * w);
  std::vector<Atom> out;
  auto emit = [&](std::vector<double> c) {
    Atom a{AtomKind::second, 1.0, c, SampledField(grid, Domain::space)};
    for (std::size_t i = 0; i < big.size(); ++i) {
      if (big[i] == Complex{}) continue;
      double h = hat(a.samples.coord(i, 0), c[0]);
      if (n == 2) h *= hat(a.samples.coord(i, 1), c[1]);
      a.samples[i] = big[i] * h;
    }
    out.push_back(std::move(a));
  };
  for (double c0 : centers) {
    if (n == 1) {
      emit({c0});
      continue;
    }
    for (double c1 : centers) emit({c0, c1});
  }
  return out;
}

}  // namespace oscmul
