#include "doctest.h"
#include "oscmul/error.hpp"
#include "oscmul/experiments.hpp"
#include "oscmul/spectral.hpp"

using namespace oscmul;

TEST_CASE("predicted family slopes") {
  CHECK(family_norm_slope(FamilyName::f_plus, 0.5, 1, 2.0) == doctest::Approx(0.5));
  CHECK(family_norm_slope(FamilyName::f_plus, 0.5, 1, kInf) == doctest::Approx(0.75));
  CHECK(family_norm_slope(FamilyName::f_minus, 0.5, 1, 1.0) == doctest::Approx(0.25));
  CHECK(family_norm_slope(FamilyName::f_plain, 2.0, 1, 1.0) == doctest::Approx(0.0));
  CHECK(family_norm_slope(FamilyName::h_nec, 2.0, 1, 1.0) == doctest::Approx(1.0));
  CHECK(family_norm_slope(FamilyName::g_nec, 0.5, 1, kInf) == doctest::Approx(0.375));
  CHECK_THROWS(family_norm_slope(FamilyName::g_nec, 2.0, 1, 1.0));
}

TEST_CASE("family names round-trip") {
  for (auto f : {FamilyName::f_plus, FamilyName::f_minus, FamilyName::f_plain, FamilyName::g_nec, FamilyName::h_nec})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK_THROWS(family_from_string("nope"));
}

TEST_CASE("members stay in their Fourier annulus and mirror under conjugation") {
  const LPFrame f = build_frame();
  const TestFamily fam = build_test_family(FamilyName::f_plus, 0.5, {4, 5, 6}, f);
  CHECK(fam.support_violation < 1e-12);
  const GridSpec g = family_grid(FamilyName::f_plus, 0.5, 6);
  const SampledField p = family_member(FamilyName::f_plus, 0.5, 6, f, g);
  const SampledField m = family_member(FamilyName::f_minus, 0.5, 6, f, g);
  // f_minus(x) = conj f_plus(-x)
  const std::size_t n = g.points;
  double err = 0.0;
  for (std::size_t i = 1; i < n; ++i) err = std::max(err, std::abs(m[i] - std::conj(p[n - i])));
  CHECK(err < 1e-13 * p.max_abs());
}

TEST_CASE("unresolved members are refused") {
  const LPFrame f = build_frame();
  CHECK_THROWS_AS(family_member(FamilyName::f_plus, 0.5, 10, f, GridSpec::make(1, 2.0 * kPi, 256)), RangeError);
}

TEST_CASE("plain member has a j-independent L1 norm") {
  const LPFrame f = build_frame();
  const TestFamily fam = build_test_family(FamilyName::f_plain, 0.5, {3, 4, 5, 6, 7}, f);
  CHECK(family_norm_scaling(fam, 1.0).fitted_slope == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(family_norm_scaling(fam, 2.0).fitted_slope == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("necessity identities hold on the grid") {
  const LPFrame f = build_frame();
  CHECK(bilinear_identity_check(Region::I, 0.5, 6, -0.5, f) < 1e-10);
  CHECK(bilinear_identity_check(Region::II, 0.5, 6, -0.5, f) < 1e-10);
  CHECK(bilinear_identity_check(Region::IV, 0.5, 6, -0.375, f) < 1e-10);
  CHECK(bilinear_identity_check(Region::IV, 2.0, 4, -1.0, f) < 1e-10);
  CHECK(bilinear_identity_check(Region::VI, 2.0, 4, -1.0, f) < 1e-10);
}

TEST_CASE("necessity configs are validated") {
  NecessityConfig c;
  c.region = Region::IV;
  c.p = kInf;
  c.q = kInf;
  c.j_values = {4, 5, 6, 7};
  CHECK_THROWS(c.validate());
  c.p = 1.0;
  CHECK_NOTHROW(c.validate());
  CHECK(c.r() == doctest::Approx(1.0));
  CHECK(c.resolved_m() == doctest::Approx(-0.375));
  c.j_values = {4, 5};
  CHECK_THROWS(c.validate());
}

TEST_CASE("necessity ratio at s = 2 is flat at criticality") {
  NecessityConfig c;
  c.region = Region::IV;
  c.s = 2.0;
  c.p = 1.0;
  c.q = kInf;
  c.j_values = {3, 4, 5, 6};
  const NecessityReport r = run_necessity(c, build_frame());
  CHECK(r.critical_m == doctest::Approx(-1.0));
  CHECK(std::abs(r.scaling.fitted_slope) < 0.2);
}

TEST_CASE("kernel lower bound on the inner window") {
  const WindowBound w = window_lower_bound(2.0, {3, 4, 5, 6}, build_frame());
  for (std::size_t i = 0; i < w.lower.size(); ++i) {
    CHECK(w.lower[i] > 0.0);
    CHECK(w.lower[i] <= w.upper[i]);
  }
  CHECK(w.j0 >= 3);
}
