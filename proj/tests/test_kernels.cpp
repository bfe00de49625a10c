#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "oscmul/error.hpp"
#include "oscmul/kernels.hpp"
#include "oscmul/spectral.hpp"

using namespace oscmul;

namespace {

// Grid indices of `count` points spread across the [a', b'] window.
std::vector<std::size_t> window_points(const KernelRecord& k, int count) {
  const GridSpec& g = k.samples.grid();
  const double to_x = std::exp2(-k.j * (1.0 - k.s));
  std::vector<std::size_t> out;
  for (int i = 0; i < count; ++i) {
    const double t = k.window.a_prime + (k.window.b_prime - k.window.a_prime) * (i + 0.5) / count;
    const double x = (i % 2 ? -1.0 : 1.0) * t * to_x;
    out.push_back(static_cast<std::size_t>(std::llround(x / g.dx() + g.points / 2.0)));
  }
  return out;
}

}  // namespace

TEST_CASE("window constants") {
  const WindowConstants h = window_constants(0.5);
  CHECK(h.a == doctest::Approx(0.25));
  CHECK(h.b == doctest::Approx(1.0));
  CHECK(h.a_prime == doctest::Approx(0.5 / std::sqrt(1.5)));
  CHECK(h.b_prime == doctest::Approx(0.5 * std::sqrt(1.5)));
  const WindowConstants w = window_constants(2.0);
  CHECK(w.a == doctest::Approx(0.5));
  CHECK(w.b == doctest::Approx(8.0));
  CHECK(w.a_prime == doctest::Approx(2.0 / 1.5));
  CHECK(w.b_prime == doctest::Approx(3.0));
  CHECK_THROWS(window_constants(1.0));
}

TEST_CASE("H_j agrees with the quadrature oracle in the window") {
  const LPFrame f = build_frame();
  for (auto [s, j] : {std::pair{0.5, 8}, std::pair{2.0, 4}, std::pair{2.0, 6}}) {
    const GridSpec g = window_resolved_grid(kernel_grid(KernelKind::H, s, j, 1, f.psi), s, j, 40);
    const KernelRecord k = compute_Hj(s, j, f.psi, g);
    for (std::size_t i : window_points(k, 8)) {
      const Complex ref = oracle::dyadic_kernel(s, j, k.samples.coord(i), f.psi);
      CHECK(std::abs(k.samples[i] - ref) < 1e-7 * std::abs(ref));
    }
  }
}

TEST_CASE("L agrees with the quadrature oracle for s = 2") {
  const LPFrame f = build_frame();
  const KernelRecord L = compute_L(2.0, f.phi, kernel_grid(KernelKind::L, 2.0, 0, 1, f.phi));
  const GridSpec& g = L.samples.grid();
  for (double x : {0.0, 0.5, 1.5, 3.0, -2.25, 6.0}) {
    const auto i = static_cast<std::size_t>(std::llround(x / g.dx() + g.points / 2.0));
    const Complex ref = oracle::dyadic_kernel(2.0, 0.0, L.samples.coord(i), f.phi);
    CHECK(std::abs(L.samples[i] - ref) < 1e-9);
  }
}

TEST_CASE("K_j is the sum of its shells") {
  const LPFrame f = build_frame();
  const int j = 5;
  const GridSpec g = kernel_grid(KernelKind::K, 0.5, j, 1, f.phi);
  const KernelRecord k = compute_Kj(0.5, j, f.phi, f, g, true);
  REQUIRE(k.shells.size() == static_cast<std::size_t>(j + 1));
  SampledField sum(g, Domain::space);
  for (const auto& sh : k.shells) sum += sh;
  CHECK((sum - k.samples).max_abs() < 1e-12 * k.samples.max_abs());
  CHECK((compute_Kj_shell(0.5, j, 3, f.phi, f, g) - k.shells[2]).max_abs() < 1e-14);
}

TEST_CASE("kernels refuse grids that do not resolve their band") {
  const LPFrame f = build_frame();
  const GridSpec small = GridSpec::make(1, 2.0 * kPi, 64);
  CHECK_THROWS_AS(compute_Hj(0.5, 8, f.psi, small), RangeError);
  CHECK_THROWS_AS(compute_Kj(0.5, 8, f.phi, f, small), RangeError);
}

TEST_CASE("stationary point and leading term") {
  CHECK_THROWS_AS(stationary_point(0.5, 4, {0.0}), UsageError);
  const StationaryData d = stationary_point(0.5, 4, {0.125});
  // eta0 = -(2^{j(1-s)}|x|/s)^{1/(s-1)} = -(4 * 0.125 / 0.5)^{-2}
  CHECK(d.eta0[0] == doctest::Approx(-1.0));
  CHECK(d.signature == -1);
  CHECK(stationary_point(2.0, 4, {1.0}).signature == 1);
  const LPFrame f = build_frame();
  const StationaryData far = stationary_phase_leading(0.5, 4, {10.0}, f.psi);
  CHECK_FALSE(far.in_support);
  CHECK(far.leading_value == Complex(0.0));
  // s = 2 converges fast: leading term within 1e-3 of the oracle at j = 8
  const double x = 2.0 * std::exp2(8.0);  // 2^{j(1-s)}|x| = 2 inside [a', b']
  const Complex lead = stationary_phase_leading(2.0, 8, {x}, f.psi).leading_value;
  const Complex ref = oracle::dyadic_kernel(2.0, 8, x, f.psi);
  CHECK(std::abs(lead / ref - 1.0) < 1e-3);
}

TEST_CASE("decay region classification") {
  CHECK(classify_decay_region(0.5, 4, 0.01) == DecayRegion::inner);
  CHECK(classify_decay_region(0.5, 4, 0.125) == DecayRegion::window);
  CHECK(classify_decay_region(0.5, 4, 1.0) == DecayRegion::outer);
}

TEST_CASE("radial Hankel path matches the planar DFT kernel") {
  const LPFrame f = build_frame();
  const double s = 2.0;
  const int k = 2;
  const GridSpec g = kernel_grid(KernelKind::H, s, k, 2, f.psi);
  const KernelRecord h = compute_Hj(s, k, f.psi, g);
  const std::size_t c = g.centre();
  for (std::size_t off : {0u, 3u, 17u, 40u}) {
    const std::size_t flat = c * g.points + c + off;  // along the second axis
    const double rho = h.samples.radius(flat);
    const Complex ref = radial_kernel_2d(s, k, f.psi, rho);
    CHECK(std::abs(h.samples[flat] - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("planar grids above the cap are refused") {
  const LPFrame f = build_frame();
  CHECK_THROWS_AS(kernel_grid(KernelKind::H, 2.0, 9, 2, f.psi), ConfigError);
}

TEST_CASE("kernel dump layout") {
  const LPFrame f = build_frame();
  const KernelRecord k = compute_Hj(0.5, 4, f.psi, kernel_grid(KernelKind::H, 0.5, 4, 1, f.psi));
  const auto dir = std::filesystem::temp_directory_path() / "oscmul_dump_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "h4").string();
  write_kernel_dump(k, prefix);
  CHECK(std::filesystem::file_size(prefix + ".bin") == 16 * k.samples.size());
  std::ifstream bin(prefix + ".bin", std::ios::binary);
  std::vector<double> first(2);
  bin.read(reinterpret_cast<char*>(first.data()), 16);
  CHECK(first[0] == k.samples[0].real());
  CHECK(first[1] == k.samples[0].imag());
  std::ifstream txt(prefix + ".txt");
  const std::string side((std::istreambuf_iterator<char>(txt)), {});
  for (const char* key : {"kind", "s ", "j ", "points", "a_prime", "b_prime"}) CHECK(side.find(key) != std::string::npos);
  std::filesystem::remove_all(dir);
}
