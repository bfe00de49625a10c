#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "oscmul/error.hpp"
#include "runner.hpp"

using namespace osclab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_path) {
  const std::string cmd = std::string(OSCLAB_BINARY) + " " + args + " > " + stdout_path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config grammar") {
  const ConfigFile c = parse_config("# comment\ns = 0.5  ; trailing\n\n[necessity]\np = inf\nq=1\n[kernel]\nj = 8\n");
  CHECK(c.global.at("s") == "0.5");
  CHECK(c.sections.at("necessity").at("p") == "inf");
  CHECK(c.sections.at("necessity").at("q") == "1");
  CHECK(c.sections.at("kernel").at("j") == "8");
}

TEST_CASE("config errors carry the line number") {
  for (const char* bad : {"s = 1\ns = 2\n", "[nope]\n", "just words\n", "s =\n", "[kernel\n", "1x = 3\n"}) {
    try {
      parse_config(bad);
      FAIL("accepted: " << bad);
    } catch (const oscmul::ConfigError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
}

TEST_CASE("flags override sections override globals") {
  const ConfigFile c = parse_config("s = 0.5\nj = 3\n[scaling]\ns = 2\n");
  auto r = resolve_config(c, "scaling", {{"j", "4..9"}});
  CHECK(r.at("s") == "2");
  CHECK(r.at("j") == "4..9");
  CHECK(resolve_config(c, "kernel", {}).at("s") == "0.5");
  CHECK_THROWS_AS(resolve_config(parse_config("bogus = 1\n"), "kernel", {}), oscmul::ConfigError);
  CHECK_THROWS_AS(resolve_config(c, "nope", {}), oscmul::UsageError);
}

TEST_CASE("value parsers") {
  CHECK(parse_j_list("6..9") == std::vector<int>{6, 7, 8, 9});
  CHECK(parse_j_list("4, 5,7") == std::vector<int>{4, 5, 7});
  CHECK(parse_j_list("8") == std::vector<int>{8});
  CHECK_THROWS(parse_j_list("9..6"));
  CHECK_THROWS(parse_j_list("a..b"));
  CHECK(std::isinf(parse_exponent("inf")));
  CHECK(parse_exponent("1.5") == 1.5);
  CHECK_THROWS(parse_exponent("0.5"));
  CHECK_THROWS(parse_number("s", "0.5x"));
  CHECK_THROWS(parse_int("n", "1.5"));
}

TEST_CASE("kernel report schema") {
  const RunResult r = run_experiment("kernel", {{"s", "0.5"}, {"j", "6"}});
  std::vector<std::string> keys;
  for (auto it = r.report.begin(); it != r.report.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"experiment", "s", "n", "params", "j_values", "measured", "fitted_slope",
                                         "predicted_slope", "max_residual", "pass"});
  CHECK(r.report["params"]["window"]["a"].get<double>() == doctest::Approx(0.25));
  CHECK(r.report["params"]["j"] == "6");
  CHECK(r.kernel.has_value());
  CHECK(csv_text(r.rows).rfind("j,value\n6,", 0) == 0);
  CHECK_THROWS_AS(run_experiment("nope", {}), oscmul::UsageError);
  CHECK_THROWS_AS(run_experiment("kernel", {{"kind", "Q"}}), oscmul::ConfigError);
}

TEST_CASE("command line: reports, failures and determinism") {
  const fs::path dir = fs::temp_directory_path() / "osclab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const fs::path out = dir / "k.json", csv = dir / "k.csv", dump = dir / "k";
  CHECK(run_cli("run kernel --s 0.5 --j 8 --out " + out.string() + " --csv " + csv.string() + " --dump " + dump.string(),
                dir / "stdout1") == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(dir / "k.bin"));
  CHECK(fs::exists(dir / "k.txt"));
  CHECK(slurp(csv).rfind("j,value\n8,", 0) == 0);
  CHECK(run_cli("run kernel --s 0.5 --j 8", dir / "stdout2") == 0);
  CHECK(slurp(dir / "stdout2").find("\"window\"") != std::string::npos);
  CHECK(run_cli("run kernel --s 0.5 --j 8", dir / "stdout3") == 0);
  CHECK(slurp(dir / "stdout2") == slurp(dir / "stdout3"));

  std::ofstream(dir / "bad.cfg") << "s = 0.5\nthis is not a pair\n";
  const fs::path never = dir / "never.json";
  CHECK(run_cli("run kernel --config " + (dir / "bad.cfg").string() + " --out " + never.string(), dir / "stdout4") == 1);
  CHECK_FALSE(fs::exists(never));
  CHECK(slurp(dir / "stdout4").empty());

  CHECK(run_cli("run nonsense", dir / "stdout5") != 0);
  CHECK(run_cli("run kernel --kind Q --out " + never.string(), dir / "stdout6") == 1);
  CHECK_FALSE(fs::exists(never));
  // a grid override that cannot resolve the band is an aliasing error
  CHECK(run_cli("run kernel --s 0.5 --j 8 --L 6.283185307179586 --N 64", dir / "stdout7") == 1);

  std::ofstream(dir / "ok.cfg") << "s = 2\n[kernel]\nj = 4\n";
  CHECK(run_cli("run kernel --config " + (dir / "ok.cfg").string() + " --j 5", dir / "stdout8") == 0);
  const std::string rep = slurp(dir / "stdout8");
  CHECK(rep.find("\"j\": \"5\"") != std::string::npos);
  CHECK(rep.find("\"s\": \"2\"") != std::string::npos);
  fs::remove_all(dir);
}
