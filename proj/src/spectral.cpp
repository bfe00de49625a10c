#include "oscmul/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "oscmul/error.hpp"

namespace oscmul {

namespace {

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// Centred <-> natural ordering; for even N the half rotation is an involution.
void swap_halves(std::vector<Complex>& v, std::size_t n, int dim) {
  const std::size_t h = n / 2;
  if (dim == 1) {
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
    return;
  }
  for (std::size_t r = 0; r < n; ++r) {
    auto row = v.begin() + static_cast<std::ptrdiff_t>(r * n);
    std::rotate(row, row + static_cast<std::ptrdiff_t>(h), row + static_cast<std::ptrdiff_t>(n));
  }
  for (std::size_t r = 0; r < h; ++r)
    std::swap_ranges(v.begin() + static_cast<std::ptrdiff_t>(r * n),
                     v.begin() + static_cast<std::ptrdiff_t>((r + 1) * n),
                     v.begin() + static_cast<std::ptrdiff_t>((r + h) * n));
}

void require_same_grid(const SampledField& a, const SampledField& b) {
  if (!(a.grid() == b.grid()) || a.domain() != b.domain())
    throw UsageError("field arithmetic needs matching grid and domain");
}

}  // namespace

GridSpec GridSpec::make(int dim, double period, std::size_t points) {
  if (dim != 1 && dim != 2) throw UsageError("grid dimension must be 1 or 2");
  if (!(period > 0.0) || !std::isfinite(period)) throw UsageError("grid period must be positive");
  if (!is_pow2(points))
    throw UsageError("grid points must be a power of two, got " + std::to_string(points));
  return GridSpec{dim, period, points};
}

double GridSpec::cell_volume(Domain d) const {
  const double h = d == Domain::space ? dx() : dxi();
  return dim == 1 ? h : h * h;
}

SampledField::SampledField(GridSpec grid, Domain domain)
    : grid_(grid), domain_(domain), samples_(grid.size()) {}

SampledField::SampledField(GridSpec grid, Domain domain, std::vector<Complex> samples)
    : grid_(grid), domain_(domain), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw UsageError("sample count does not match grid");
}

double SampledField::coord(std::size_t flat, int axis) const {
  const std::size_t n = grid_.points;
  const std::size_t k = grid_.dim == 1 ? flat : (axis == 0 ? flat / n : flat % n);
  return domain_ == Domain::space ? grid_.x(k) : grid_.xi(k);
}

double SampledField::radius(std::size_t flat) const {
  if (grid_.dim == 1) return std::abs(coord(flat));
  return std::hypot(coord(flat, 0), coord(flat, 1));
}

SampledField& SampledField::operator*=(const SampledField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] *= other.samples_[i];
  return *this;
}

SampledField& SampledField::operator+=(const SampledField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

SampledField& SampledField::operator-=(const SampledField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= other.samples_[i];
  return *this;
}

SampledField& SampledField::operator*=(Complex c) {
  for (auto& v : samples_) v *= c;
  return *this;
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

SampledField operator*(SampledField a, const SampledField& b) { return a *= b; }
SampledField operator+(SampledField a, const SampledField& b) { return a += b; }
SampledField operator-(SampledField a, const SampledField& b) { return a -= b; }
SampledField operator*(SampledField a, Complex c) { return a *= c; }
SampledField operator*(Complex c, SampledField a) { return a *= c; }

SampledField forward_ft(const SampledField& f) {
  if (f.domain() != Domain::space) throw UsageError("forward_ft expects a space-domain field");
  const GridSpec& g = f.grid();
  std::vector<Complex> data = f.samples();
  swap_halves(data, g.points, g.dim);
  detail::dft_inplace(data, g.points, g.dim, -1);
  swap_halves(data, g.points, g.dim);
  const double scale = g.cell_volume(Domain::space);
  for (auto& v : data) v *= scale;
  return SampledField(g, Domain::frequency, std::move(data));
}

SampledField inverse_ft(const SampledField& F) {
  if (F.domain() != Domain::frequency)
    throw UsageError("inverse_ft expects a frequency-domain field");
  const GridSpec& g = F.grid();
  std::vector<Complex> data = F.samples();
  swap_halves(data, g.points, g.dim);
  detail::dft_inplace(data, g.points, g.dim, +1);
  swap_halves(data, g.points, g.dim);
  // (2pi)^{-n} dxi^n = L^{-n}
  const double scale = g.cell_volume(Domain::frequency) / std::pow(2.0 * kPi, g.dim);
  for (auto& v : data) v *= scale;
  return SampledField(g, Domain::space, std::move(data));
}

namespace {

double norm_impl(const SampledField& f, double p, double rmin, double rmax, bool restricted) {
  if (f.domain() != Domain::space) throw UsageError("norms are taken on space-domain fields");
  const auto& v = f.samples();
  auto inside = [&](std::size_t i) {
    if (!restricted) return true;
    const double r = f.radius(i);
    return r >= rmin && r <= rmax;
  };
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (inside(i)) m = std::max(m, std::abs(v[i]));
    return m;
  }
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (inside(i)) acc += std::abs(v[i]);
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (inside(i)) acc += std::norm(v[i]);
  } else {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (inside(i)) acc += std::pow(std::abs(v[i]), p);
  }
  return std::pow(acc * f.grid().cell_volume(Domain::space), 1.0 / p);
}

}  // namespace

double lp_norm(const SampledField& f, double p) {
  if (!(p >= 1.0)) throw UsageError("lp_norm supports 1 <= p <= inf");
  return norm_impl(f, p, 0.0, 0.0, false);
}

double lp_norm_on(const SampledField& f, double p, double rmin, double rmax) {
  if (!(p >= 1.0)) throw UsageError("lp_norm supports 1 <= p <= inf");
  return norm_impl(f, p, rmin, rmax, true);
}

double quasi_norm(const SampledField& f, double r) {
  if (!(r > 0.0 && r < 1.0)) throw UsageError("quasi_norm expects 0 < r < 1");
  return norm_impl(f, r, 0.0, 0.0, false);
}

double bmo_estimate(const SampledField& f) {
  if (f.domain() != Domain::space) throw UsageError("bmo_estimate expects a space-domain field");
  const GridSpec& g = f.grid();
  const std::size_t n = g.points;
  const auto& v = f.samples();
  double best = 0.0;
  for (std::size_t side = 4; side <= n; side *= 2) {
    const std::size_t cells = n / side;
    if (g.dim == 1) {
      for (std::size_t c = 0; c < cells; ++c) {
        const auto first = v.begin() + static_cast<std::ptrdiff_t>(c * side);
        const auto last = first + static_cast<std::ptrdiff_t>(side);
        const Complex mean = std::accumulate(first, last, Complex{}) / static_cast<double>(side);
        double osc = 0.0;
        for (auto it = first; it != last; ++it) osc += std::abs(*it - mean);
        best = std::max(best, osc / static_cast<double>(side));
      }
    } else {
      const double count = static_cast<double>(side * side);
      for (std::size_t cr = 0; cr < cells; ++cr)
        for (std::size_t cc = 0; cc < cells; ++cc) {
          Complex mean{};
          for (std::size_t r = cr * side; r < (cr + 1) * side; ++r)
            for (std::size_t c = cc * side; c < (cc + 1) * side; ++c) mean += v[r * n + c];
          mean /= count;
          double osc = 0.0;
          for (std::size_t r = cr * side; r < (cr + 1) * side; ++r)
            for (std::size_t c = cc * side; c < (cc + 1) * side; ++c) osc += std::abs(v[r * n + c] - mean);
          best = std::max(best, osc / count);
        }
    }
  }
  return best;
}

ScalingReport fit_dyadic_slope(std::span<const int> j, std::span<const double> values) {
  if (j.size() != values.size()) throw UsageError("fit_dyadic_slope: length mismatch");
  if (j.size() < 4) throw UsageError("fit_dyadic_slope needs at least 4 points");
  ScalingReport rep;
  rep.j_values.assign(j.begin(), j.end());
  rep.measured.assign(values.begin(), values.end());
  const double m = static_cast<double>(j.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw UsageError("fit_dyadic_slope needs positive finite values");
    const double x = j[i];
    const double y = std::log2(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  if (den == 0.0) throw UsageError("fit_dyadic_slope needs at least two distinct j");
  rep.fitted_slope = (m * sxy - sx * sy) / den;
  rep.intercept = (sy - rep.fitted_slope * sx) / m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double fit = rep.intercept + rep.fitted_slope * j[i];
    rep.max_residual = std::max(rep.max_residual, std::abs(std::log2(values[i]) - fit));
  }
  return rep;
}

ScalingReport fit_dyadic_slope(std::span<const std::pair<int, double>> pairs) {
  std::vector<int> j;
  std::vector<double> v;
  for (const auto& [jj, vv] : pairs) {
    j.push_back(jj);
    v.push_back(vv);
  }
  return fit_dyadic_slope(j, v);
}

}  // namespace oscmul
