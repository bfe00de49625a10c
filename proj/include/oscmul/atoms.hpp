#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscmul/grid.hpp"

namespace oscmul {

enum class AtomKind { first, second };

struct Atom {
  AtomKind kind = AtomKind::first;
  double r = 1.0;
  std::vector<double> center;  // origin unless produced by a partition
  SampledField samples;
};

// First kind (0 < r < 1): r^{-n} times a normalised x_1-derivative of a
// smooth bump on |x| < r, so the grid mean vanishes by symmetry.
// Second kind (r = 1): a positive bump of height 1.
// Seed 0 is the plain bump; other seeds perturb the profile deterministically.
Atom make_atom(AtomKind kind, double r, std::uint64_t seed, const GridSpec& grid);

struct AtomCheck {
  bool passed = false;
  double outside_support = 0.0;  // max |f| beyond radius r of the center
  double sup_ratio = 0.0;        // max |f| / r^{-n}
  double mean = 0.0;             // |sum f dx^n|
  std::string worst;             // first failed condition, empty on pass
};

AtomCheck validate_atom(const SampledField& f, AtomKind kind, double r,
                        const std::vector<double>& center = {});
AtomCheck validate_atom(const Atom& a);

// Plain bump of radius 2 and height 2^{-n} split by a hat partition of
// spacing 1/2 into second-kind atoms (each supported in a ball of radius
// 1/2 <= 1 around its hat center).
std::vector<Atom> partition_bump(const GridSpec& grid);
SampledField plain_bump(const GridSpec& grid, double radius, double height);

}  // namespace oscmul
