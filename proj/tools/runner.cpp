#include "runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "config.hpp"
#include "oscmul/atoms.hpp"
#include "oscmul/error.hpp"
#include "oscmul/experiments.hpp"
#include "oscmul/lemmas.hpp"
#include "oscmul/operators.hpp"
#include "oscmul/spectral.hpp"
#include "oscmul/symbols.hpp"

namespace osclab {

using namespace oscmul;
using json = nlohmann::ordered_json;
using Config = std::map<std::string, std::string>;

namespace {

std::string get(const Config& c, const std::string& k, const std::string& dflt) {
  auto it = c.find(k);
  return it == c.end() ? dflt : it->second;
}

double num(const Config& c, const std::string& k, double dflt) {
  auto it = c.find(k);
  return it == c.end() ? dflt : parse_number(k, it->second);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Runs fn(i) for i < count on thread_count() workers; results stay in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

json base_report(const std::string& experiment, double s, int n, const Config& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg) params[k] = v;
  json r;
  r["experiment"] = experiment;
  r["s"] = s;
  r["n"] = n;
  r["params"] = params;
  return r;
}

void fill_scaling(json& r, const ScalingReport& rep, bool pass) {
  r["j_values"] = rep.j_values;
  r["measured"] = rep.measured;
  r["fitted_slope"] = number_or_null(rep.fitted_slope);
  r["predicted_slope"] = number_or_null(rep.predicted_slope);
  r["max_residual"] = rep.max_residual;
  r["pass"] = pass;
}

std::vector<std::pair<int, double>> rows_of(const std::vector<int>& j, const std::vector<double>& v) {
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.emplace_back(j[i], v[i]);
  return out;
}

void require_n1(int n) {
  if (n != 1) throw ConfigError("this experiment runs at n = 1");
}

GridSpec grid_override(const Config& cfg, const GridSpec& fallback) {
  const bool hasL = cfg.count("L") != 0, hasN = cfg.count("N") != 0;
  if (hasL != hasN) throw ConfigError("grid overrides need both L and N");
  if (!hasL) return fallback;
  const double L = parse_number("L", cfg.at("L"));
  const int N = parse_int("N", cfg.at("N"));
  try {
    return GridSpec::make(fallback.dim, L, static_cast<std::size_t>(N));
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
}

double window_max(const KernelRecord& k) {
  const double to_x = std::exp2(-k.j * (1.0 - k.s));
  return lp_norm_on(k.samples, kInf, k.window.a_prime * to_x, k.window.b_prime * to_x);
}

RunResult run_kernel(const Config& cfg) {
  const double s = num(cfg, "s", 0.5);
  const int n = parse_int("n", get(cfg, "n", "1"));
  const int j = parse_int("j", get(cfg, "j", "8"));
  const std::string kind = get(cfg, "kind", "H");
  const LPFrame frame = build_frame();
  RunResult res;
  std::optional<KernelRecord> made;
  double max_dev = 0.0, lead_peak = 0.0;
  if (kind == "H") {
    const GridSpec g = grid_override(cfg, kernel_grid(KernelKind::H, s, j, n, frame.psi));
    made.emplace(compute_Hj(s, j, frame.psi, g));
    const KernelRecord& rec = *made;
    if (n == 1) {
      const double to_x = std::exp2(-j * (1.0 - s));
      for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const double x = rec.samples.coord(i);
        if (std::abs(x) < rec.window.a_prime * to_x || std::abs(x) > rec.window.b_prime * to_x) continue;
        const Complex lead = stationary_phase_leading(s, j, {x}, frame.psi).leading_value;
        max_dev = std::max(max_dev, std::abs(rec.samples[i] - lead));
        lead_peak = std::max(lead_peak, std::abs(lead));
      }
      if (lead_peak > 0.0) max_dev /= lead_peak;
    }
  } else if (kind == "K") {
    made.emplace(compute_Kj(s, j, frame.phi, frame, grid_override(cfg, kernel_grid(KernelKind::K, s, j, n, frame.phi))));
  } else if (kind == "L") {
    made.emplace(compute_L(s, frame.phi, grid_override(cfg, kernel_grid(KernelKind::L, s, 0, n, frame.phi))));
  } else {
    throw ConfigError("kind must be H, K or L");
  }
  const KernelRecord& rec = *made;
  const double peak = window_max(rec);
  json r = base_report("kernel", s, n, cfg);
  r["params"]["window"] = {{"a", rec.window.a}, {"b", rec.window.b}, {"a_prime", rec.window.a_prime},
                           {"b_prime", rec.window.b_prime}};
  const GridSpec& g = rec.samples.grid();
  r["params"]["grid"] = {{"dim", g.dim}, {"period", g.period}, {"points", g.points}};
  r["params"]["l1_norm"] = lp_norm(rec.samples, 1.0);
  r["j_values"] = {j};
  r["measured"] = {peak};
  r["fitted_slope"] = nullptr;
  r["predicted_slope"] = nullptr;
  r["max_residual"] = max_dev;
  r["pass"] = peak > 0.0;
  res.report = r;
  res.rows = {{j, peak}};
  res.kernel = std::move(made);
  return res;
}

RunResult run_scaling(const Config& cfg) {
  const double s = num(cfg, "s", 0.5);
  const int n = parse_int("n", get(cfg, "n", "1"));
  require_n1(n);
  const std::string quantity = get(cfg, "quantity", "kernel_peak");
  const std::vector<int> js = parse_j_list(get(cfg, "j", s < 1.0 ? "6..12" : "4..9"));
  const LPFrame frame = build_frame();
  std::vector<double> v(js.size());
  double predicted, tol;
  if (quantity == "kernel_peak") {
    predicted = n - n * s / 2.0;
    tol = num(cfg, "tol", 0.1);
    parallel_for(js.size(), [&](std::size_t i) {
      const GridSpec g = window_resolved_grid(kernel_grid(KernelKind::H, s, js[i], 1, frame.psi), s, js[i]);
      v[i] = window_max(compute_Hj(s, js[i], frame.psi, g));
    });
  } else if (quantity == "kernel_l1") {
    predicted = s * n / 2.0;
    tol = num(cfg, "tol", 0.15);
    parallel_for(js.size(), [&](std::size_t i) {
      const GridSpec g = kernel_grid(KernelKind::K, s, js[i], 1, frame.phi);
      v[i] = lp_norm(compute_Kj(s, js[i], frame.phi, frame, g).samples, 1.0);
    });
  } else if (quantity == "family_norm") {
    const FamilyName fam = family_from_string(get(cfg, "family", "f_plus"));
    const double p = parse_exponent(get(cfg, "p", "2"));
    predicted = family_norm_slope(fam, s, n, p);
    tol = num(cfg, "tol", 0.1);
    parallel_for(js.size(), [&](std::size_t i) {
      const GridSpec g = family_grid(fam, s, js[i]);
      v[i] = lp_norm(family_member(fam, s, js[i], frame, g), p);
    });
  } else if (quantity == "bmo") {
    predicted = 2.0 * n;
    tol = num(cfg, "tol", 0.2);
    const ScalingReport rep = plain_square_bmo_scaling(s, js, frame);
    v = rep.measured;
  } else {
    throw ConfigError("quantity must be kernel_peak, kernel_l1, family_norm or bmo");
  }
  ScalingReport rep = fit_dyadic_slope(js, v);
  rep.predicted_slope = predicted;
  RunResult res;
  res.report = base_report("scaling", s, n, cfg);
  res.report["params"]["tolerance"] = tol;
  fill_scaling(res.report, rep, std::abs(rep.fitted_slope - predicted) <= tol);
  res.rows = rows_of(js, v);
  return res;
}

Region region_from(const std::string& name, double p, double q, double s) {
  if (name.empty()) {
    for (Region r : classify_region(p, q))
      if (r == Region::I || r == Region::II || r == Region::IV || r == Region::VI) return r;
    throw ConfigError("(p, q) lies only in regions III / V, where no necessity run exists");
  }
  for (Region r : {Region::I, Region::II, Region::III, Region::IV, Region::V, Region::VI})
    if (to_string(r) == name) return r;
  (void)s;
  throw ConfigError("unknown region '" + name + "'");
}

RunResult run_necessity_cmd(const Config& cfg) {
  NecessityConfig nc;
  nc.s = num(cfg, "s", 0.5);
  nc.n = parse_int("n", get(cfg, "n", "1"));
  require_n1(nc.n);
  nc.p = parse_exponent(get(cfg, "p", "inf"));
  nc.q = parse_exponent(get(cfg, "q", "inf"));
  nc.region = region_from(get(cfg, "region", ""), nc.p, nc.q, nc.s);
  nc.j_values = parse_j_list(get(cfg, "j", "6..11"));
  const double crit = critical_order(nc.s, nc.n, nc.p, nc.q);
  nc.m = cfg.count("m") ? parse_number("m", cfg.at("m")) : crit + num(cfg, "m_offset", 0.0);
  const double tol = num(cfg, "tol", 0.2);
  const NecessityReport rep = run_necessity(nc, build_frame());
  RunResult res;
  res.report = base_report("necessity", nc.s, nc.n, cfg);
  res.report["params"]["region"] = to_string(nc.region);
  res.report["params"]["critical_m"] = crit;
  res.report["params"]["m_used"] = nc.m;
  res.report["params"]["tolerance"] = tol;
  fill_scaling(res.report, rep.scaling, std::abs(rep.scaling.fitted_slope - rep.scaling.predicted_slope) <= tol);
  res.rows = rows_of(rep.scaling.j_values, rep.scaling.measured);
  return res;
}

RunResult run_decompose(const Config& cfg) {
  const double m = num(cfg, "m", -0.5);
  const int radius = parse_int("lattice_radius", get(cfg, "lattice_radius", "16"));
  const int cell = parse_int("cell_points", get(cfg, "cell_points", "1024"));
  const std::vector<int> js = parse_j_list(get(cfg, "j", "4..9"));
  const LPFrame frame = build_frame();
  const SymbolSpec sigma = elliptic_symbol(m);
  std::vector<double> scaled(js.size()), residual(js.size()), cell_res(js.size()), da(js.size()), db(js.size());
  parallel_for(js.size(), [&](std::size_t i) {
    const SeparableExpansion ex = separable_expand(sigma, frame, BlockKind::I, js[i], m, radius, cell);
    scaled[i] = std::exp2(-js[i] * m) * ex.max_coeff;
    residual[i] = ex.block_residual;
    cell_res[i] = ex.cell_residual;
    const int hi = std::min(cell / 2 - 1, 16 * radius);
    da[i] = coefficient_decay_exponent(ex.envelope_a, 4 * radius, hi);
    db[i] = coefficient_decay_exponent(ex.envelope_b, 4 * radius, hi);
  });
  ScalingReport rep = fit_dyadic_slope(js, scaled);
  rep.predicted_slope = 0.0;
  double worst_res = 0.0, worst_a = -kInf, worst_b = -kInf;
  for (std::size_t i = 0; i < js.size(); ++i) {
    worst_res = std::max(worst_res, residual[i]);
    worst_a = std::max(worst_a, da[i]);
    worst_b = std::max(worst_b, db[i]);
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  RunResult res;
  res.report = base_report("decompose", 0.0, 1, cfg);
  res.report["params"]["block_residuals"] = residual;
  res.report["params"]["cell_residuals"] = cell_res;
  res.report["params"]["decay_exponent_a"] = da;
  res.report["params"]["decay_exponent_b"] = db;
  res.report["params"]["uniformity_ratio"] = *hi / *lo;
  const bool pass = worst_res < 1e-8 && worst_a <= -4.0 && worst_b <= -4.0 && *hi / *lo <= 2.0;
  fill_scaling(res.report, rep, pass);
  res.report["max_residual"] = worst_res;
  res.rows = rows_of(js, scaled);
  return res;
}

RunResult run_lemmas(const Config& cfg) {
  const auto suites = run_lemma_suites(build_frame());
  json list = json::array();
  std::vector<double> growth;
  bool pass = true;
  for (const auto& suite : suites) {
    json js = {{"name", suite.name}, {"passed", suite.passed}, {"series", json::array()}};
    for (const auto& ser : suite.series) {
      js["series"].push_back({{"label", ser.label},
                              {"scale", ser.scale_name},
                              {"scales", ser.scales},
                              {"ratio", ser.ratio},
                              {"constant", ser.constant},
                              {"growth", ser.growth},
                              {"asserted", ser.asserted},
                              {"passed", ser.passed}});
      if (ser.asserted) growth.push_back(ser.growth);
    }
    pass = pass && suite.passed;
    list.push_back(js);
  }
  RunResult res;
  res.report = base_report("lemmas", num(cfg, "s", 0.5), 1, cfg);
  res.report["params"]["suites"] = list;
  res.report["j_values"] = json::array();
  res.report["measured"] = growth;
  res.report["fitted_slope"] = nullptr;
  res.report["predicted_slope"] = nullptr;
  res.report["max_residual"] = *std::max_element(growth.begin(), growth.end());
  res.report["pass"] = pass;
  for (std::size_t i = 0; i < growth.size(); ++i) res.rows.emplace_back(static_cast<int>(i), growth[i]);
  return res;
}

RunResult run_goal_sum(const Config& cfg) {
  const double s = num(cfg, "s", 0.5);
  const int n = parse_int("n", get(cfg, "n", "1"));
  require_n1(n);
  const double crit = -s * n / 2.0 - s * (1.0 - s) * n / 2.0;
  const double m = cfg.count("m") ? parse_number("m", cfg.at("m")) : crit + num(cfg, "m_offset", 0.0);
  const std::vector<int> js = parse_j_list(get(cfg, "j", "4..10"));
  const std::vector<double> radii = parse_number_list("radii", get(cfg, "radii", "1,0.25,0.0625"));
  const int seed_value = parse_int("seed", get(cfg, "seed", "0"));
  if (seed_value < 0) throw ConfigError("seed must be non-negative");
  const auto seed = static_cast<std::uint64_t>(seed_value);
  const std::string pair = get(cfg, "pair", "SS");
  const PiecePair uv = pair == "SS"   ? PiecePair::SS
                       : pair == "ST" ? PiecePair::ST
                       : pair == "TS" ? PiecePair::TS
                       : pair == "TT" ? PiecePair::TT
                                      : throw ConfigError("pair must be SS, ST, TS or TT");
  const LPFrame frame = build_frame();
  const int j_max = *std::max_element(js.begin(), js.end());
  GridRule rule;
  const double r_min = *std::min_element(radii.begin(), radii.end());
  const GridSpec grid = size_grid(1, 64.0, std::max(2.0 * std::exp2(j_max), 4.0 * kPi / r_min), rule);
  std::vector<SampledField> gs;
  for (int k = -1; k <= j_max + 1; ++k)
    for (double sign : {1.0, -1.0}) gs.push_back(modulated_plateau(grid, k < 0 ? 0.0 : sign * std::exp2(k), 16.0));
  const RadialCutoff psi = frame.psi, phi = frame.phi;
  FactorFn t1 = [psi](double x) { return Complex(psi(x)); };
  FactorFn t2 = [phi](double x) { return Complex(phi(x)); };
  std::vector<GoalSumReport> per(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const Atom a = make_atom(radii[i] < 1.0 ? AtomKind::first : AtomKind::second, radii[i], seed, grid);
    per[i] = goal_sum(s, m, t1, t2, a, gs, js, uv, frame);
  });
  // growth of the running sum: slope over the upper half of the j range
  const std::size_t half = js.size() / 2;
  const std::vector<int> tail_j(js.begin() + half, js.end());
  const double predicted = m - crit, tol = num(cfg, "tol", 0.1);
  json atoms = json::array();
  std::size_t worst = 0;
  std::vector<double> tail_slope(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const std::vector<double> tail(per[i].running.begin() + half, per[i].running.end());
    tail_slope[i] = fit_dyadic_slope(tail_j, tail).fitted_slope;
    if (std::abs(tail_slope[i] - predicted) > std::abs(tail_slope[worst] - predicted)) worst = i;
    atoms.push_back({{"r", radii[i]},
                     {"summands", per[i].summands},
                     {"running", per[i].running},
                     {"summand_slope", per[i].summand_fit.fitted_slope},
                     {"running_tail_slope", tail_slope[i]}});
  }
  RunResult res;
  res.report = base_report("goal-sum", s, n, cfg);
  res.report["params"]["critical_m"] = crit;
  res.report["params"]["m_used"] = m;
  res.report["params"]["tolerance"] = tol;
  res.report["params"]["worst_radius"] = radii[worst];
  res.report["params"]["atoms"] = atoms;
  res.report["j_values"] = js;
  res.report["measured"] = per[worst].running;
  res.report["fitted_slope"] = tail_slope[worst];
  res.report["predicted_slope"] = predicted;
  res.report["max_residual"] = per[worst].running_fit.max_residual;
  res.report["pass"] = std::abs(tail_slope[worst] - predicted) <= tol;
  res.rows = rows_of(js, per[worst].running);
  return res;
}

}  // namespace

unsigned thread_count() {
  if (const char* v = std::getenv("OSCMUL_THREADS")) {
    char* end = nullptr;
    const long k = std::strtol(v, &end, 10);
    if (end && *end == '\0' && k >= 1 && k <= 256) return static_cast<unsigned>(k);
    throw ConfigError("OSCMUL_THREADS must be an integer in [1, 256]");
  }
  return 1;
}

RunResult run_experiment(const std::string& experiment, const Config& cfg) {
  if (experiment == "kernel") return run_kernel(cfg);
  if (experiment == "scaling") return run_scaling(cfg);
  if (experiment == "necessity") return run_necessity_cmd(cfg);
  if (experiment == "decompose") return run_decompose(cfg);
  if (experiment == "lemmas") return run_lemmas(cfg);
  if (experiment == "goal-sum") return run_goal_sum(cfg);
  throw UsageError("unknown experiment '" + experiment + "'");
}

std::string csv_text(const std::vector<std::pair<int, double>>& rows) {
  std::ostringstream os;
  os << "j,value\n" << std::setprecision(17);
  for (const auto& [j, v] : rows) os << j << ',' << v << '\n';
  return os.str();
}

}  // namespace osclab
