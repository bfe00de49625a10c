#include "doctest.h"
#include "oracles.hpp"
#include "oscmul/atoms.hpp"
#include "oscmul/error.hpp"
#include "oscmul/operators.hpp"
#include "oscmul/spectral.hpp"

using namespace oscmul;

namespace {

SampledField gaussian_field(const GridSpec& g, double centre, double width, double freq) {
  return SampledField::from_function(g, Domain::space, [=](double x, double) {
    return oracle::gaussian((x - centre) / width) * std::polar(1.0, freq * x);
  });
}

FactorFn cut(const RadialCutoff& c) {
  return [c](double x) { return Complex(c(x)); };
}

}  // namespace

TEST_CASE("S_j on a Gaussian agrees with direct quadrature") {
  const LPFrame f = build_frame();
  const double s = 0.5;
  const int j = 3;
  const GridSpec g = GridSpec::make(1, 400.0, 1 << 14);
  const SampledField in = gaussian_field(g, 0.0, 0.25, 0.0);
  const LinearPiece S = make_linear_piece(PieceKind::S, s, j, cut(f.phi), f, g);
  const SampledField out = apply_linear(S, in);
  for (double x : {0.0, 0.3, -1.1, 4.0}) {
    const auto i = static_cast<std::size_t>(std::llround(x / g.dx() + g.points / 2.0));
    const double xx = out.coord(i);
    auto integrand = [&](double xi) {
      const double a = std::abs(xi);
      return f.zeta(a) * f.phi.dilated(a, j) * 0.25 * oracle::gaussian_hat(0.25 * xi) *
             std::polar(1.0, std::sqrt(a) + xi * xx);
    };
    const Complex ref = (oracle::kronrod(integrand, -16.0, -1.0, 0.05) + oracle::kronrod(integrand, 1.0, 16.0, 0.05)) /
                        (2.0 * oracle::kPi);
    CHECK(std::abs(out[i] - ref) < 1e-11);
  }
}

TEST_CASE("T keeps the L2 norm of the cut-off spectrum") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 200.0, 1 << 12);
  const SampledField in = gaussian_field(g, 1.0, 0.7, 0.5);
  const LinearPiece T = make_linear_piece(PieceKind::T, 2.0, 0, cut(f.phi), f, g);
  SampledField cutoff = forward_ft(in);
  for (std::size_t i = 0; i < cutoff.size(); ++i) cutoff[i] *= f.phi(cutoff.coord(i));
  CHECK(lp_norm(apply_linear(T, in), 2.0) == doctest::Approx(lp_norm(inverse_ft(cutoff), 2.0)).epsilon(1e-12));
}

TEST_CASE("linear pieces reject theta beyond the allowed support") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 200.0, 1 << 12);
  CHECK_THROWS(make_linear_piece(PieceKind::T, 0.5, 0, cut(f.aux.tilde_phi), f, g, 3.0));
}

TEST_CASE("separable bilinear path equals the dense double sum") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 64.0, 512);
  const SampledField a = gaussian_field(g, 0.5, 0.8, 1.0);
  const SampledField b = gaussian_field(g, -0.3, 0.6, -2.0);
  const RadialCutoff u = f.aux.theta, v = f.aux.phi_nec;
  const SeparableSymbol sep{{Complex(0.7, 0.2), cut(u), cut(v)}};
  SymbolSpec dense{"uv", [=](double xi, double eta) { return Complex(0.7, 0.2) * u(xi) * v(eta); }, 0.0};
  for (double s : {0.5, 2.0})
    for (bool osc : {true, false}) {
      const SampledField x = apply_bilinear(sep, s, a, b, osc);
      const SampledField y = apply_bilinear_dense(dense, s, a, b, osc);
      CHECK((x - y).max_abs() < 1e-12 * y.max_abs());
    }
}

TEST_CASE("truncated expansion applied separably equals the dense evaluation of the same series") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 64.0, 256);
  const SampledField a = gaussian_field(g, 0.0, 0.3, 0.0);
  const SampledField b = gaussian_field(g, 0.4, 0.3, 0.0);
  const SeparableExpansion ex = separable_expand(elliptic_symbol(-0.5), f, BlockKind::I, 2, -0.5, 4, 64);
  SymbolSpec dense{"series", [&](double xi, double eta) { return ex.evaluate(xi, eta); }, -0.5};
  const SampledField x = apply_bilinear(to_separable(ex), 0.5, a, b);
  const SampledField y = apply_bilinear_dense(dense, 0.5, a, b);
  CHECK((x - y).max_abs() < 1e-11 * y.max_abs());
}

TEST_CASE("dense oracle refuses large grids") {
  const GridSpec g = GridSpec::make(1, 64.0, 8192);
  SampledField a(g, Domain::space);
  CHECK_THROWS(apply_bilinear_dense(constant_symbol(), 0.5, a, a));
}

TEST_CASE("four-product split adds up to the full block") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 64.0, 512);
  const SampledField a = gaussian_field(g, 0.0, 0.2, 0.0);
  const SampledField b = gaussian_field(g, 0.1, 0.3, 3.0);
  const int j = 3;
  const RadialCutoff t1 = f.psi, t2 = f.phi;
  const FourProducts fp = four_product_split(cut(t1), cut(t2), 0.5, j, f, a, b);
  SymbolSpec dense{"block", [=](double xi, double eta) { return Complex(t1.dilated(xi, j) * t2.dilated(eta, j)); }, 0.0};
  const SampledField ref = apply_bilinear_dense(dense, 0.5, a, b);
  CHECK((fp.sum() - ref).max_abs() < 1e-12 * ref.max_abs());
}

TEST_CASE("modulated plateau") {
  const GridSpec g = GridSpec::make(1, 64.0, 4096);
  const SampledField p = modulated_plateau(g, 3.0, 8.0);
  CHECK(p.max_abs() == doctest::Approx(1.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = std::abs(p.coord(i));
    if (x <= 8.0) CHECK(std::abs(p[i]) == doctest::Approx(1.0));
    if (x >= 9.0) CHECK(std::abs(p[i]) == 0.0);
  }
}

TEST_CASE("goal sum rejects unnormalised g") {
  const LPFrame f = build_frame();
  const GridSpec g = GridSpec::make(1, 128.0, 1 << 12);
  const Atom a = make_atom(AtomKind::first, 0.25, 0, g);
  std::vector<SampledField> fam{modulated_plateau(g, 0.0, 8.0) * Complex(2.0)};
  CHECK_THROWS_AS(goal_sum(0.5, -0.375, cut(f.psi), cut(f.phi), a, fam, {2, 3, 4, 5}, PiecePair::SS, f), UsageError);
}
