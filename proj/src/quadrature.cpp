#include "oscmul/quadrature.hpp"

#include <array>
#include <cmath>

namespace oscmul {

namespace {

// Kronrod nodes on [0, 1); odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  Complex kronrod;
  Complex gauss;
};

Panel gk15(const std::function<Complex(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex k = fc * kKronrod[7];
  Complex g = fc * kGauss[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const Complex s = f(c - dx) + f(c + dx);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  return {k * h, g * h};
}

void adapt(const std::function<Complex(double)>& f, double a, double b, double tol, int depth,
           QuadratureResult& acc) {
  const Panel p = gk15(f, a, b);
  const double err = std::abs(p.kronrod - p.gauss);
  if (err <= tol * (1.0 + std::abs(p.kronrod)) || depth == 0) {
    acc.value += p.kronrod;
    acc.error_estimate += err;
    ++acc.panels;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, tol, depth - 1, acc);
  adapt(f, m, b, tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<Complex(double)>& f, double a, double b,
                                double max_panel, double tol, int max_depth) {
  QuadratureResult out{};
  if (!(b > a)) return out;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) adapt(f, a + i * w, a + (i + 1) * w, tol, max_depth, out);
  return out;
}

}  // namespace oscmul
