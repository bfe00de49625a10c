#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace oscmul {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Domain { space, frequency };

// Periodic grid standing in for R^n, n in {1, 2}. Samples are stored in
// centred order: index k on an axis sits at (k - N/2) * step.
struct GridSpec {
  int dim = 1;
  double period = 1.0;
  std::size_t points = 2;

  static GridSpec make(int dim, double period, std::size_t points);

  double dx() const { return period / static_cast<double>(points); }
  double dxi() const { return 2.0 * kPi / period; }
  double max_resolved_freq() const { return kPi * static_cast<double>(points) / period; }
  std::size_t size() const { return dim == 1 ? points : points * points; }

  double x(std::size_t k) const { return (static_cast<double>(k) - points / 2.0) * dx(); }
  double xi(std::size_t k) const { return (static_cast<double>(k) - points / 2.0) * dxi(); }
  std::size_t centre() const { return points / 2; }

  // Volume element of a space / frequency cell (dx^n, dxi^n).
  double cell_volume(Domain d) const;

  bool operator==(const GridSpec&) const = default;
};

// Complex samples on a GridSpec, tagged with the domain they live in.
class SampledField {
public:
  SampledField(GridSpec grid, Domain domain);
  SampledField(GridSpec grid, Domain domain, std::vector<Complex> samples);

  const GridSpec& grid() const { return grid_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return samples_.size(); }

  const std::vector<Complex>& samples() const { return samples_; }
  std::vector<Complex>& samples() { return samples_; }

  Complex& operator[](std::size_t i) { return samples_[i]; }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }

  // Coordinate (x for space, xi for frequency) of a flat index; for dim 2
  // `axis` selects the component.
  double coord(std::size_t flat, int axis = 0) const;
  // Euclidean modulus of the coordinate vector at a flat index.
  double radius(std::size_t flat) const;

  // Fill by evaluating fn at every sample. For dim 1 fn receives (c0, c0),
  // for dim 2 (c0, c1).
  template <class Fn>
  static SampledField from_function(const GridSpec& grid, Domain domain, Fn&& fn) {
    SampledField out(grid, domain);
    for (std::size_t i = 0; i < out.size(); ++i)
      out.samples_[i] = fn(out.coord(i, 0), grid.dim == 2 ? out.coord(i, 1) : out.coord(i, 0));
    return out;
  }

  SampledField& operator*=(const SampledField& other);
  SampledField& operator+=(const SampledField& other);
  SampledField& operator-=(const SampledField& other);
  SampledField& operator*=(Complex c);

  double max_abs() const;

private:
  GridSpec grid_;
  Domain domain_;
  std::vector<Complex> samples_;
};

SampledField operator*(SampledField a, const SampledField& b);
SampledField operator+(SampledField a, const SampledField& b);
SampledField operator-(SampledField a, const SampledField& b);
SampledField operator*(SampledField a, Complex c);
SampledField operator*(Complex c, SampledField a);

}  // namespace oscmul
