#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "oscmul/error.hpp"

namespace osclab {

using oscmul::ConfigError;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"kernel", "scaling", "necessity", "decompose", "lemmas", "goal-sum"};
  return names;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "s",      "n",       "p",    "q",    "m",    "m_offset", "region",         "j",           "kind",
      "quantity", "family", "tol", "radii", "pair", "L",       "N",              "seed",        "out",
      "csv",    "dump",    "lattice_radius", "cell_points"};
  return keys;
}

ConfigFile parse_config(const std::string& text) {
  static const std::regex key_re("[A-Za-z_][A-Za-z0-9_]*");
  ConfigFile cfg;
  std::map<std::string, std::string>* current = &cfg.global;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail(line, "unterminated section header");
      const std::string name = trim(l.substr(1, l.size() - 2));
      if (name.empty()) fail(line, "empty section name");
      if (!contains(experiment_names(), name)) fail(line, "unknown section [" + name + "]");
      current = &cfg.sections[name];
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(l.substr(0, eq));
    const std::string value = trim(l.substr(eq + 1));
    if (!std::regex_match(key, key_re)) fail(line, "bad key '" + key + "'");
    if (value.empty()) fail(line, "empty value for '" + key + "'");
    if (!current->emplace(key, value).second) fail(line, "duplicate key '" + key + "'");
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::map<std::string, std::string> resolve_config(const ConfigFile& file, const std::string& experiment,
                                                  const std::map<std::string, std::string>& flags) {
  if (!contains(experiment_names(), experiment)) throw oscmul::UsageError("unknown experiment '" + experiment + "'");
  std::map<std::string, std::string> out = file.global;
  if (auto it = file.sections.find(experiment); it != file.sections.end())
    for (const auto& [k, v] : it->second) out[k] = v;
  for (const auto& [k, v] : flags) out[k] = v;
  for (const auto& [k, v] : out)
    if (!contains(known_keys(), k)) throw ConfigError("unknown config key '" + k + "'");
  return out;
}

double parse_number(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_number(key, v);
  if (x != std::floor(x)) throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(x);
}

double parse_exponent(const std::string& v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  const double x = parse_number("exponent", v);
  if (x < 1.0) throw ConfigError("exponents must be >= 1 or 'inf', got '" + v + "'");
  return x;
}

std::vector<int> parse_j_list(const std::string& v) {
  std::vector<int> out;
  if (const auto dots = v.find(".."); dots != std::string::npos) {
    const int lo = parse_int("j", trim(v.substr(0, dots)));
    const int hi = parse_int("j", trim(v.substr(dots + 2)));
    if (hi < lo) throw ConfigError("empty j range '" + v + "'");
    for (int j = lo; j <= hi; ++j) out.push_back(j);
  } else {
    std::istringstream in(v);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(parse_int("j", trim(part)));
  }
  for (int j : out)
    if (j < 0 || j > 48) throw ConfigError("j values must lie in [0, 48]");
  return out;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(parse_number(key, trim(part)));
  if (out.empty()) throw ConfigError("'" + key + "' needs at least one value");
  return out;
}

}  // namespace osclab
