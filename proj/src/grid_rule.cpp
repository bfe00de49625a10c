#include "oscmul/grid_rule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscmul/error.hpp"

namespace oscmul {

GridSpec size_grid(int dim, double half_extent, double max_freq, const GridRule& rule) {
  if (!(half_extent > 0.0) || !(max_freq > 0.0) || !(rule.margin >= 2.0))
    throw ConfigError("size_grid: need half_extent > 0, max_freq > 0, margin >= 2");
  const double resolved = rule.margin * max_freq;
  const double need = 2.0 * half_extent * resolved / kPi;
  std::size_t n = 4;
  while (static_cast<double>(n) < need) {
    n *= 2;
    if (n > rule.max_points) {
      std::ostringstream os;
      os << "grid for half-extent " << half_extent << " and max |xi| " << max_freq
         << " needs N >= " << need << " points, above the cap " << rule.max_points;
      throw ConfigError(os.str());
    }
  }
  return GridSpec::make(dim, kPi * static_cast<double>(n) / resolved, n);
}

double dispersed_extent(double s, double phase_coeff, double k, double lo, double hi,
                        const GridRule& rule) {
  const double scale = std::exp2(k);
  const double f_lo = lo * scale;
  const double f_hi = hi * scale;
  double window = 0.0;
  if (phase_coeff != 0.0 && f_lo > 0.0)
    window = std::abs(phase_coeff) * s * std::max(std::pow(f_lo, s - 1.0), std::pow(f_hi, s - 1.0));
  else if (phase_coeff != 0.0)
    window = std::abs(phase_coeff) * s * std::pow(f_hi, s - 1.0);
  return 1.25 * window + rule.tail_units / scale;
}

}  // namespace oscmul
