#include "oscmul/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"
#include "oscmul/error.hpp"

namespace oscmul {

namespace {

constexpr double kEdgeTol = 1e-12;

double inverse_exponent(double p) {
  if (!(p >= 1.0)) throw UsageError("exponents must satisfy 1 <= p <= inf");
  return std::isinf(p) ? 0.0 : 1.0 / p;
}

}  // namespace

std::string to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
  }
  return "?";
}

std::vector<Region> classify_region(double p, double q) {
  const double u = inverse_exponent(p);
  const double v = inverse_exponent(q);
  auto le = [](double a, double b) { return a <= b + kEdgeTol; };
  std::vector<Region> out;
  if (le(u, 0.5) && le(v, 0.5)) out.push_back(Region::I);
  if (le(0.5, u) && le(0.5, v)) out.push_back(Region::II);
  const bool p_low_q_high = le(0.5, u) && le(v, 0.5);  // 1 <= p <= 2 <= q
  const bool q_low_p_high = le(0.5, v) && le(u, 0.5);  // 1 <= q <= 2 <= p
  if (p_low_q_high && le(u + v, 1.0)) out.push_back(Region::III);
  if (p_low_q_high && le(1.0, u + v)) out.push_back(Region::IV);
  if (q_low_p_high && le(u + v, 1.0)) out.push_back(Region::V);
  if (q_low_p_high && le(1.0, u + v)) out.push_back(Region::VI);
  return out;
}

double critical_order_branch(Region region, double s, int n, double p, double q) {
  const double du = std::abs(inverse_exponent(p) - 0.5);
  const double dv = std::abs(inverse_exponent(q) - 0.5);
  const double ns = n * s;
  const bool low = s < 1.0;
  switch (region) {
    case Region::I:
    case Region::II: return -ns * (du + dv);
    case Region::III:
    case Region::VI: return low ? -ns * (1.0 - s) * du - ns * dv : -ns * dv;
    case Region::IV:
    case Region::V: return low ? -ns * du - ns * (1.0 - s) * dv : -ns * du;
  }
  throw UsageError("unknown region");
}

double critical_order(double s, int n, double p, double q) {
  if (!(s > 0.0)) throw UsageError("critical_order needs s > 0");
  if (s == 1.0) throw UsageError("critical_order: s = 1 is not covered");
  if (n < 1) throw UsageError("critical_order needs n >= 1");
  const auto regions = classify_region(p, q);
  const double m = critical_order_branch(regions.front(), s, n, p, q);
  for (Region r : regions) {
    const double other = critical_order_branch(r, s, n, p, q);
    if (std::abs(other - m) > 1e-12) {
      std::ostringstream os;
      os << "critical_order branches disagree on a boundary: " << to_string(regions.front()) << " -> "
         << m << ", " << to_string(r) << " -> " << other;
      throw std::logic_error(os.str());
    }
  }
  return m;
}

SymbolSpec elliptic_symbol(double m) {
  return SymbolSpec{"elliptic", [m](double x, double y) { return Complex(std::pow(1.0 + x * x + y * y, 0.5 * m)); },
                    m, 4};
}

SymbolSpec constant_symbol(Complex c) {
  return SymbolSpec{"constant", [c](double, double) { return c; }, 0.0, 4};
}

namespace {

std::vector<double> signed_log_sample(const SymbolSampling& s) {
  std::vector<double> out{0.0};
  const double lo = std::log10(s.min_radius);
  const double hi = std::log10(s.max_radius);
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) * s.per_decade)));
  for (int i = 0; i <= steps; ++i) {
    const double v = std::pow(10.0, lo + (hi - lo) * i / steps);
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SymbolClassReport verify_symbol_class(const SymbolSpec& sigma, double m, int max_order,
                                      const SymbolSampling& sampling) {
  if (max_order < 0 || max_order > 6) throw UsageError("verify_symbol_class: max_order in [0, 6]");
  if (!sigma.eval) throw UsageError("verify_symbol_class: symbol has no evaluator");
  SymbolClassReport rep;
  rep.order = m;
  rep.max_order = max_order;
  rep.constants.assign(max_order + 1, std::vector<double>(max_order + 1, 0.0));
  const auto pts = signed_log_sample(sampling);

  for (double xi : pts)
    for (double eta : pts) {
      const double weight = 1.0 + std::abs(xi) + std::abs(eta);
      const double h = 1e-3 * weight;
      if (xi + h == xi || eta + h == eta) throw UsageError("verify_symbol_class: step underflow");
      for (int a = 0; a <= max_order; ++a)
        for (int b = 0; a + b <= max_order; ++b) {
          Complex d{};
          for (int k = 0; k <= a; ++k)
            for (int l = 0; l <= b; ++l) {
              const double w = binomial(a, k) * binomial(b, l) * (((k + l) % 2) ? -1.0 : 1.0);
              const Complex v = sigma(xi + (0.5 * a - k) * h, eta + (0.5 * b - l) * h);
              if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw UsageError("verify_symbol_class: evaluator returned a non-finite value");
              d += w * v;
            }
          d /= std::pow(h, a + b);
          const double c = std::abs(d) * std::pow(weight, -(m - a - b));
          rep.constants[a][b] = std::max(rep.constants[a][b], c);
        }
    }
  rep.passed = true;
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; a + b <= max_order; ++b) {
      rep.worst = std::max(rep.worst, rep.constants[a][b]);
      if (!std::isfinite(rep.constants[a][b])) rep.passed = false;
    }
  return rep;
}

std::array<SymbolSpec, 4> split_frequency_quadrants(const SymbolSpec& sigma, double s,
                                                    const LPFrame& frame) {
  auto make = [&](const char* name, bool zeta_xi, bool zeta_eta) {
    const RadialCutoff cx = zeta_xi ? frame.zeta : frame.phi;
    const RadialCutoff cy = zeta_eta ? frame.zeta : frame.phi;
    SymbolFn f = [=, ev = sigma.eval](double xi, double eta) {
      const Complex osc = std::polar(1.0, std::pow(std::abs(xi), s) + std::pow(std::abs(eta), s));
      return osc * cx(xi) * cy(eta) * ev(xi, eta);
    };
    return SymbolSpec{std::string(name), f, sigma.order, sigma.derivative_budget};
  };
  return {make("tau1", false, false), make("tau2", true, false), make("tau3", false, true),
          make("tau4", true, true)};
}

Complex CoifmanMeyerBlocks::reconstruct(double xi, double eta) const {
  Complex acc = sigma0(xi, eta);
  for (const auto& b : sigma_I) acc += b(xi, eta);
  for (const auto& b : sigma_II) acc += b(xi, eta);
  return acc;
}

CoifmanMeyerBlocks coifman_meyer_decompose(const SymbolSpec& sigma, const LPFrame& frame,
                                           int j_max, const GridSpec& grid) {
  if (j_max < 1) throw UsageError("coifman_meyer_decompose needs j_max >= 1");
  const double reach = frame.phi.support_hi() * std::exp2(j_max);
  if (reach > grid.max_resolved_freq()) {
    std::ostringstream os;
    os << "j_max = " << j_max << " reaches |xi| = " << reach << " beyond the resolved "
       << grid.max_resolved_freq();
    throw RangeError(os.str());
  }
  CoifmanMeyerBlocks out;
  out.j_max = j_max;
  const auto ev = sigma.eval;
  const LPFrame fr = frame;
  out.sigma0 = SymbolSpec{sigma.name + ":0",
                          [=](double x, double y) { return ev(x, y) * fr.phi(x) * fr.phi(y); },
                          sigma.order, sigma.derivative_budget};
  for (int j = 1; j <= j_max; ++j) {
    out.sigma_I.push_back(SymbolSpec{
        sigma.name + ":I" + std::to_string(j),
        [=](double x, double y) { return ev(x, y) * fr.psi_j(j, x) * fr.phi_j(j, y); }, sigma.order,
        sigma.derivative_budget});
    out.sigma_II.push_back(SymbolSpec{
        sigma.name + ":II" + std::to_string(j),
        [=](double x, double y) { return ev(x, y) * fr.phi_j(j - 1, x) * fr.psi_j(j, y); },
        sigma.order, sigma.derivative_budget});
  }
  return out;
}

Complex SeparableExpansion::left_factor(const SeparableTerm& t, double xi) const {
  const double u = xi * std::exp2(-left_scale);
  return std::polar(left_cutoff(u), t.a * u);
}

Complex SeparableExpansion::right_factor(const SeparableTerm& t, double eta) const {
  const double v = eta * std::exp2(-right_scale);
  return std::polar(right_cutoff(v), t.b * v);
}

Complex SeparableExpansion::evaluate(double xi, double eta) const {
  const double u = xi * std::exp2(-left_scale);
  const double v = eta * std::exp2(-right_scale);
  const double w = left_cutoff(u) * right_cutoff(v);
  if (w == 0.0) return 0.0;
  Complex acc{};
  for (const auto& t : terms) acc += t.coeff * std::polar(1.0, t.a * u + t.b * v);
  return w * acc;
}

SeparableExpansion separable_expand(const SymbolSpec& sigma, const LPFrame& frame, BlockKind kind,
                                    int j, double m, int lattice_radius, int cell_points) {
  if (lattice_radius < 0) throw UsageError("lattice_radius must be >= 0");
  if (cell_points < 2 * lattice_radius + 2 || (cell_points & (cell_points - 1)) != 0)
    throw UsageError("cell_points must be a power of two above 2 * lattice_radius + 1");
  if (kind != BlockKind::zero && j < 1) throw UsageError("dyadic blocks need j >= 1");

  SeparableExpansion ex;
  ex.kind = kind;
  ex.j = kind == BlockKind::zero ? 0 : j;
  ex.order = m;
  ex.lattice_radius = lattice_radius;
  ex.cell_points = cell_points;

  RadialCutoff tilde_u, tilde_v;
  switch (kind) {
    case BlockKind::zero:
      ex.left_scale = ex.right_scale = 0;
      tilde_u = tilde_v = frame.aux.tilde_phi;
      ex.left_cutoff = ex.right_cutoff = frame.phi;
      break;
    case BlockKind::I:
      ex.left_scale = ex.right_scale = j;
      tilde_u = frame.aux.tilde_psi;
      tilde_v = frame.aux.tilde_phi;
      ex.left_cutoff = frame.psi;
      ex.right_cutoff = frame.phi;
      break;
    case BlockKind::II:
      ex.left_scale = j - 1;
      ex.right_scale = j;
      tilde_u = frame.aux.tilde_phi;
      tilde_v = frame.aux.tilde_psi;
      ex.left_cutoff = frame.phi;
      ex.right_cutoff = frame.psi;
      break;
  }
  // psi_0 = phi: for kind II with j = 1 the left factor is phi(xi).
  if (tilde_u.support_hi() >= kPi || tilde_v.support_hi() >= kPi)
    throw UsageError("separable_expand: tilde cutoff support escapes the cell (-pi, pi)");

  const std::size_t P = static_cast<std::size_t>(cell_points);
  const double lscale = std::exp2(ex.left_scale);
  const double rscale = std::exp2(ex.right_scale);
  std::vector<double> cell(P);
  for (std::size_t k = 0; k < P; ++k) cell[k] = -kPi + 2.0 * kPi * static_cast<double>(k) / P;

  std::vector<Complex> G(P * P);
  std::vector<double> weight(P * P);
  double gmax = 0.0, gwmax = 0.0;
  for (std::size_t k = 0; k < P; ++k) {
    const double tu = tilde_u(cell[k]);
    const double u = ex.left_cutoff(cell[k]);
    for (std::size_t l = 0; l < P; ++l) {
      const double tv = tilde_v(cell[l]);
      Complex g{};
      if (tu != 0.0 && tv != 0.0) g = sigma(lscale * cell[k], rscale * cell[l]) * tu * tv;
      G[k * P + l] = g;
      weight[k * P + l] = u * ex.right_cutoff(cell[l]);
      gmax = std::max(gmax, std::abs(g));
      gwmax = std::max(gwmax, std::abs(g) * weight[k * P + l]);
    }
  }

  std::vector<Complex> C = G;
  detail::dft_inplace(C, P, 2, -1);
  const double norm = 1.0 / static_cast<double>(P * P);
  auto lattice = [&](std::size_t idx) {
    return idx < P / 2 ? static_cast<int>(idx) : static_cast<int>(idx) - static_cast<int>(P);
  };
  const int half = static_cast<int>(P / 2);
  ex.envelope_a.assign(half, 0.0);
  ex.envelope_b.assign(half, 0.0);
  for (std::size_t ka = 0; ka < P; ++ka)
    for (std::size_t kb = 0; kb < P; ++kb) {
      const int a = lattice(ka), b = lattice(kb);
      // cell starts at -pi: e^{-i a (-pi)} = (-1)^a
      const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      Complex& c = C[ka * P + kb];
      c *= sign * norm;
      const double mag = std::abs(c);
      ex.max_coeff = std::max(ex.max_coeff, mag);
      const int ra = std::min(std::abs(a), half - 1), rb = std::min(std::abs(b), half - 1);
      ex.envelope_a[ra] = std::max(ex.envelope_a[ra], mag);
      ex.envelope_b[rb] = std::max(ex.envelope_b[rb], mag);
      if (std::abs(a) <= lattice_radius && std::abs(b) <= lattice_radius)
        ex.terms.push_back({c, a, b});
      else
        c = 0.0;
    }
  for (int r = half - 2; r >= 0; --r) {
    ex.envelope_a[r] = std::max(ex.envelope_a[r], ex.envelope_a[r + 1]);
    ex.envelope_b[r] = std::max(ex.envelope_b[r], ex.envelope_b[r + 1]);
  }

  // Truncated series back on the cell: undo the sign and normalisation.
  for (std::size_t ka = 0; ka < P; ++ka)
    for (std::size_t kb = 0; kb < P; ++kb) {
      const int a = lattice(ka), b = lattice(kb);
      const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      C[ka * P + kb] *= sign;
    }
  detail::dft_inplace(C, P, 2, +1);
  double worst = 0.0, worst_w = 0.0;
  for (std::size_t i = 0; i < P * P; ++i) {
    const double d = std::abs(C[i] - G[i]);
    worst = std::max(worst, d);
    worst_w = std::max(worst_w, d * weight[i]);
  }
  ex.cell_residual = gmax > 0.0 ? worst / gmax : worst;
  ex.block_residual = gwmax > 0.0 ? worst_w / gwmax : worst_w;
  return ex;
}

double coefficient_decay_exponent(const std::vector<double>& envelope, int r_lo, int r_hi) {
  if (r_lo < 1 || r_hi <= r_lo || r_hi >= static_cast<int>(envelope.size()))
    throw UsageError("coefficient_decay_exponent: need 1 <= r_lo < r_hi < envelope size");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int r = r_lo; r <= r_hi; ++r) {
    if (!(envelope[r] > 0.0)) continue;
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(envelope[r]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw UsageError("coefficient_decay_exponent: envelope vanishes on the range");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

SymbolSpec build_necessity_symbol(double m, int j, const LPFrame& frame) {
  const RadialCutoff theta = frame.aux.theta;
  const RadialCutoff phi = frame.aux.phi_nec;
  const double amp = std::exp2(j * m);
  return SymbolSpec{"sigma_nec_" + std::to_string(j),
                    [=](double x, double y) { return Complex(amp * theta.dilated(x, j) * phi.dilated(y, j)); },
                    m, 4};
}

}  // namespace oscmul
