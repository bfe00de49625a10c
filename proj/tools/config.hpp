#pragma once

#include <map>
#include <string>
#include <vector>

namespace osclab {

// Flat `key = value` text with optional `[section]` headers. Keys before
// any header are global; a section named after an experiment overrides them
// for that experiment. `#` and `;` start comments.
struct ConfigFile {
  std::map<std::string, std::string> global;
  std::map<std::string, std::map<std::string, std::string>> sections;
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::string& path);

const std::vector<std::string>& experiment_names();
const std::vector<std::string>& known_keys();

// global < [experiment] section < flags; rejects unknown keys and sections.
std::map<std::string, std::string> resolve_config(const ConfigFile& file, const std::string& experiment,
                                                  const std::map<std::string, std::string>& flags);

// "inf" or a decimal >= 1
double parse_exponent(const std::string& v);
double parse_number(const std::string& key, const std::string& v);
int parse_int(const std::string& key, const std::string& v);
// "6..11", "4,5,7" or "8"
std::vector<int> parse_j_list(const std::string& v);
std::vector<double> parse_number_list(const std::string& key, const std::string& v);

}  // namespace osclab
