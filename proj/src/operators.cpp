#include "oscmul/operators.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "oscmul/error.hpp"

namespace oscmul {

namespace {

Complex osc(double s, double xi) { return std::polar(1.0, std::pow(std::abs(xi), s)); }

void require_space_1d(const SampledField& f, const char* who) {
  if (f.domain() != Domain::space) throw UsageError(std::string(who) + " expects space-domain inputs");
  if (f.grid().dim != 1) throw UsageError(std::string(who) + " is implemented for n = 1");
}

SampledField multiplier(const SampledField& F, const std::function<Complex(double)>& m) {
  SampledField out = F;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] != Complex{}) out[i] *= m(out.coord(i));
  return inverse_ft(out);
}

}  // namespace

LinearPiece make_linear_piece(PieceKind kind, double s, int j, FactorFn theta, const LPFrame& frame,
                              const GridSpec& grid, double theta_support) {
  if (!(s > 0.0) || s == 1.0) throw UsageError("linear pieces need s > 0, s != 1");
  if (!(theta_support > 0.0 && theta_support <= 2.0))
    throw UsageError("theta must be supported in |xi| <= 2");
  if (kind != PieceKind::T && j < 0) throw UsageError("linear pieces need j >= 0");
  const double reach = kind == PieceKind::T ? theta_support : theta_support * std::exp2(j);
  if (reach > grid.max_resolved_freq()) {
    std::ostringstream os;
    os << "linear piece reaches |xi| = " << reach << " beyond the resolved " << grid.max_resolved_freq();
    throw RangeError(os.str());
  }
  LinearPiece p{kind, s, j, theta, theta_support, SampledField(grid, Domain::frequency)};
  const double scale = std::exp2(-j);
  for (std::size_t i = 0; i < p.symbol.size(); ++i) {
    const double xi = p.symbol.coord(i);
    const double r = p.symbol.radius(i);
    Complex v;
    switch (kind) {
      case PieceKind::T: v = theta(xi); break;
      case PieceKind::S:
      case PieceKind::S_ell: v = frame.zeta(r) == 0.0 ? Complex{} : frame.zeta(r) * theta(xi * scale); break;
      case PieceKind::T_ell: v = frame.phi(r) == 0.0 ? Complex{} : frame.phi(r) * theta(xi * scale); break;
    }
    p.symbol[i] = v == Complex{} ? v : v * osc(s, r);
  }
  return p;
}

SampledField apply_linear(const LinearPiece& piece, const SampledField& f) {
  if (!(f.grid() == piece.symbol.grid())) throw UsageError("apply_linear: grid mismatch");
  SampledField F = forward_ft(f);
  F *= piece.symbol;
  return inverse_ft(F);
}

SeparableSymbol to_separable(const SeparableExpansion& ex) {
  SeparableSymbol out;
  out.reserve(ex.terms.size());
  auto keep = std::make_shared<SeparableExpansion>(ex);
  keep->terms.clear();
  keep->envelope_a.clear();
  keep->envelope_b.clear();
  for (const auto& t : ex.terms) {
    out.push_back({t.coeff, [keep, t](double xi) { return keep->left_factor(t, xi); },
                   [keep, t](double eta) { return keep->right_factor(t, eta); }});
  }
  return out;
}

SampledField apply_bilinear(const SeparableSymbol& sigma, double s, const SampledField& f,
                            const SampledField& g, bool oscillation) {
  require_space_1d(f, "apply_bilinear");
  require_space_1d(g, "apply_bilinear");
  if (!(f.grid() == g.grid())) throw UsageError("apply_bilinear: grid mismatch");
  const SampledField F = forward_ft(f);
  const SampledField G = forward_ft(g);
  SampledField out(f.grid(), Domain::space);
  for (const auto& term : sigma) {
    const auto u = [&](double xi) { return oscillation ? osc(s, xi) * term.left(xi) : term.left(xi); };
    const auto v = [&](double xi) { return oscillation ? osc(s, xi) * term.right(xi) : term.right(xi); };
    SampledField prod = multiplier(F, u);
    prod *= multiplier(G, v);
    prod *= term.coeff;
    out += prod;
  }
  return out;
}

SampledField apply_bilinear_dense(const SymbolSpec& sigma, double s, const SampledField& f,
                                  const SampledField& g, bool oscillation) {
  require_space_1d(f, "apply_bilinear_dense");
  require_space_1d(g, "apply_bilinear_dense");
  if (!(f.grid() == g.grid())) throw UsageError("apply_bilinear_dense: grid mismatch");
  const GridSpec& grid = f.grid();
  const std::size_t n = grid.points;
  if (n > 4096)
    throw UsageError("dense bilinear path refuses N > 4096; expand the symbol separably instead");
  const long long N = static_cast<long long>(n);
  std::vector<Complex> roots(n);
  for (std::size_t m = 0; m < n; ++m) roots[m] = std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / N);
  auto phase = [&](long long k, long long a) {  // e^{2 pi i k a / N}
    long long m = (k * a) % N;
    if (m < 0) m += N;
    return roots[static_cast<std::size_t>(m)];
  };
  // direct transforms of f and g
  std::vector<Complex> F(n), G(n);
  for (long long a = 0; a < N; ++a) {
    Complex fa{}, ga{};
    for (long long k = 0; k < N; ++k) {
      const Complex e = std::conj(phase(k - N / 2, a - N / 2));
      fa += f[static_cast<std::size_t>(k)] * e;
      ga += g[static_cast<std::size_t>(k)] * e;
    }
    F[static_cast<std::size_t>(a)] = fa * grid.dx();
    G[static_cast<std::size_t>(a)] = ga * grid.dx();
  }
  // D[c] = sum over xi_a + xi_b = c dxi (mod N) of sigma F_a G_b
  std::vector<Complex> D(n);
  for (long long a = 0; a < N; ++a) {
    const Complex Fa = F[static_cast<std::size_t>(a)];
    if (Fa == Complex{}) continue;
    const double xa = grid.xi(static_cast<std::size_t>(a));
    const Complex oa = oscillation ? osc(s, xa) : Complex(1.0);
    for (long long b = 0; b < N; ++b) {
      const Complex Gb = G[static_cast<std::size_t>(b)];
      if (Gb == Complex{}) continue;
      const double xb = grid.xi(static_cast<std::size_t>(b));
      Complex w = sigma(xa, xb) * Fa * Gb * oa;
      if (oscillation) w *= osc(s, xb);
      long long c = (a + b - N) % N;
      if (c < 0) c += N;
      D[static_cast<std::size_t>(c)] += w;
    }
  }
  const double scale = grid.dxi() * grid.dxi() / (4.0 * kPi * kPi);
  SampledField out(grid, Domain::space);
  for (long long k = 0; k < N; ++k) {
    Complex acc{};
    for (long long c = 0; c < N; ++c) acc += phase(k - N / 2, c) * D[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(k)] = acc * scale;
  }
  return out;
}

FourProducts four_product_split(const FactorFn& theta1, const FactorFn& theta2, double s, int j,
                                const LPFrame& frame, const SampledField& f, const SampledField& g) {
  require_space_1d(f, "four_product_split");
  require_space_1d(g, "four_product_split");
  const GridSpec& grid = f.grid();
  const auto T1 = make_linear_piece(PieceKind::T_ell, s, j, theta1, frame, grid);
  const auto S1 = make_linear_piece(PieceKind::S_ell, s, j, theta1, frame, grid);
  const auto T2 = make_linear_piece(PieceKind::T_ell, s, j, theta2, frame, grid);
  const auto S2 = make_linear_piece(PieceKind::S_ell, s, j, theta2, frame, grid);
  const SampledField tf = apply_linear(T1, f), sf = apply_linear(S1, f);
  const SampledField tg = apply_linear(T2, g), sg = apply_linear(S2, g);
  return {tf * tg, tf * sg, sf * tg, sf * sg};
}

SampledField modulated_plateau(const GridSpec& grid, double omega, double half_width) {
  if (!(half_width > 0.0) || half_width + 1.0 >= grid.period / 2.0)
    throw UsageError("plateau does not fit in the grid period");
  return SampledField::from_function(grid, Domain::space, [&](double x, double) {
    const double edge = 1.0 - smooth_step(std::abs(x) - half_width);
    return edge * std::polar(1.0, omega * x);
  });
}

GoalSumReport goal_sum(double s, double m, const FactorFn& theta1, const FactorFn& theta2,
                       const Atom& f, const std::vector<SampledField>& g_family,
                       const std::vector<int>& j_values, PiecePair uv, const LPFrame& frame) {
  if (!validate_atom(f).passed) throw UsageError("goal_sum needs a valid atom");
  if (g_family.empty()) throw UsageError("goal_sum needs at least one bounded field g");
  for (const auto& g : g_family)
    if (std::abs(lp_norm(g, kInf) - 1.0) > 1e-9) throw UsageError("goal_sum needs sup |g| = 1");
  const GridSpec& grid = f.samples.grid();
  const bool u_is_s = uv == PiecePair::SS || uv == PiecePair::ST;
  const bool v_is_s = uv == PiecePair::SS || uv == PiecePair::TS;
  GoalSumReport rep;
  double total = 0.0;
  for (int j : j_values) {
    const auto U = make_linear_piece(u_is_s ? PieceKind::S_ell : PieceKind::T_ell, s, j, theta1, frame, grid);
    const auto V = make_linear_piece(v_is_s ? PieceKind::S_ell : PieceKind::T_ell, s, j, theta2, frame, grid);
    const SampledField uf = apply_linear(U, f.samples);
    double worst = 0.0;
    for (const auto& g : g_family) worst = std::max(worst, lp_norm(uf * apply_linear(V, g), 1.0));
    const double term = std::exp2(j * m) * worst;
    total += term;
    rep.j_values.push_back(j);
    rep.summands.push_back(term);
    rep.running.push_back(total);
  }
  if (j_values.size() >= 4) {
    rep.summand_fit = fit_dyadic_slope(rep.j_values, rep.summands);
    rep.running_fit = fit_dyadic_slope(rep.j_values, rep.running);
  }
  return rep;
}

}  // namespace oscmul
