#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "specband/pipeline.hpp"
#include "specband/report.hpp"

using namespace specband;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("specband_cli_" + name);
  fs::remove_all(p);
  return p;
}

int line_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

int run_file(const std::string& config, const fs::path& out_dir, std::string* err_text = nullptr) {
  RunConfig cfg = load_config(std::string(SPECBAND_CONFIG_DIR) + "/" + config);
  cfg.output_dir = out_dir.string();
  std::ostringstream out, err;
  const int status = run(cfg, {}, out, err);
  if (err_text) *err_text = err.str();
  return status;
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1e-300) == "1e-300");
  CHECK(format_real(2.5e-17) == "2.4999999999999999e-17");
  for (double v : {M_PI, 1.0 / 3.0, 6.02214076e23, -2.5e-17}) CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
  CHECK_THROWS(format_real(std::nan("")));
  CHECK_THROWS(format_real(INFINITY));
}

TEST_CASE("tables") {
  Table t({"name", "value", "count", "empty"});
  t.add_row({std::string("a,b"), 0.5, 3LL, Cell()});
  CHECK(t.csv() == "name,value,count,empty\n\"a,b\",0.5,3,\n");
  CHECK(t.json()[0]["value"] == 0.5);
  CHECK(t.json()[0]["empty"].is_null());
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  Table bad({"x"});
  bad.add_row({std::nan("")});
  CHECK_THROWS(bad.csv());
}

TEST_CASE("json line map") {
  const std::string text = "{\n  \"a\": 1,\n  \"b\": {\n    \"c\": [1,\n      2]\n  }\n}\n";
  const auto lines = json_lines(text);
  CHECK(lines.at("") == 1);
  CHECK(lines.at("/a") == 2);
  CHECK(lines.at("/b") == 3);
  CHECK(lines.at("/b/c") == 4);
  CHECK(lines.at("/b/c/0") == 4);
  CHECK(lines.at("/b/c/1") == 5);
}

TEST_CASE("config errors are line anchored") {
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8, \"N\": 64,}\n}") == 3);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"wavelet\"},\n  \"grid\": {\"X\": 8, \"N\": 64}\n}") == 2);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8,\n  \"N\": 6.5}\n}") == 4);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"hankel\", \"alpha\": 11},\n  \"grid\": {\"X\": 8, \"N\": 64}\n}") == 2);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8, \"N\": 64},\n  \"colour\": 1\n}") ==
        4);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8, \"N\": 64},\n  \"command\": "
                "\"plot\"\n}") == 4);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"}\n}") == 1);
  CHECK(line_of("{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8, \"N\": 64},\n  \"signals\": {\n"
                "    \"g\": {\"type\": \"sinc\"}\n  }\n}") == 5);

  const std::string unresolved =
      "{\n  \"kernel\": {\"family\": \"cosine\"},\n  \"grid\": {\"X\": 8, \"N\": 64},\n  \"command\": \"spectrum\",\n"
      "  \"command_params\": {\n    \"S\": \"missing\"\n  },\n  \"regions\": {\"Sigma\": [[0, 2]]}\n}";
  const RunConfig cfg = parse_config(unresolved, "cfg.json");
  std::ostringstream out, err;
  CHECK(run(cfg, {}, out, err) == kExitConfig);
  CHECK(err.str().find("cfg.json:6: unknown region 'missing'") != std::string::npos);
}

TEST_CASE("info reports a unitary cosine transform") {
  const fs::path dir = scratch("info");
  REQUIRE(run_file("info.json", dir) == kExitOk);
  const auto rows = csv_rows(dir / "info_info.csv");
  bool seen = false;
  for (const auto& r : rows)
    if (r[0] == "defect") {
      seen = true;
      CHECK(std::stod(r[1]) <= 1e-12);
    }
  CHECK(seen);
}

TEST_CASE("spectrum with an empty frequency set") {
  const fs::path dir = scratch("empty");
  REQUIRE(run_file("spectrum_empty.json", dir) == kExitOk);
  const auto rows = csv_rows(dir / "spectrum_spectrum_empty.csv");
  REQUIRE(rows.size() == 129);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::stod(rows[k][1]) == 0.0);
  const auto meta = nlohmann::json::parse(slurp(dir / "spectrum_spectrum_empty.json"));
  CHECK(meta["trace_lhs"] == 0.0);
}

TEST_CASE("corrupted transform fails the audit with record ids") {
  std::string err;
  CHECK(run_file("audit_corrupt.json", scratch("corrupt"), &err) == kExitAssertion);
  CHECK(err.find("FAIL SCH-INF ") != std::string::npos);
  CHECK(err.find("FAIL TRACE-P ") != std::string::npos);
}

TEST_CASE("defect excess stops the run unless forced") {
  RunConfig cfg = load_config(std::string(SPECBAND_CONFIG_DIR) + "/defect.json");
  cfg.output_dir = scratch("defect").string();
  std::ostringstream out, err;
  CHECK(run(cfg, {}, out, err) == kExitDefect);
  CHECK_FALSE(fs::exists(fs::path(cfg.output_dir) / "info_defect.csv"));
  CHECK(run(cfg, {true, 1}, out, err) == kExitOk);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "info_defect.csv"));
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const fs::path a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  REQUIRE(run_file("audit.json", a) == kExitOk);
  REQUIRE(run_file("audit.json", b) == kExitOk);
  CHECK(slurp(a / "audit_audit.csv") == slurp(b / "audit_audit.csv"));
  CHECK(slurp(a / "audit_audit.json") == slurp(b / "audit_audit.json"));
  CHECK(slurp(a / "audit_audit.csv").find('\r') == std::string::npos);

  RunConfig cfg = load_config(std::string(SPECBAND_CONFIG_DIR) + "/audit.json");
  cfg.output_dir = c.string();
  cfg.seed += 1;
  std::ostringstream out, err;
  REQUIRE(run(cfg, {false, 3}, out, err) == kExitOk);
  CHECK(slurp(a / "audit_audit.csv") != slurp(c / "audit_audit.csv"));
}

TEST_CASE("approx, multiplier and sequence commands") {
  CHECK(run_file("approx.json", scratch("approx")) == kExitOk);
  CHECK(run_file("multiplier.json", scratch("mult")) == kExitOk);
  const fs::path dir = scratch("seq");
  REQUIRE(run_file("sequence.json", dir) == kExitOk);
  const auto meta = nlohmann::json::parse(slurp(dir / "sequence_sequence.json"));
  CHECK(meta["product_variation"].get<double>() <= 1e-3);
  CHECK(meta["gram_deviation"].get<double>() <= 1e-6);
  const auto rows = csv_rows(dir / "sequence_sequence_shapiro.csv");
  REQUIRE(rows.size() == 9);
  for (std::size_t k = 2; k < rows.size(); ++k) CHECK(std::stod(rows[k][1]) > std::stod(rows[k - 1][1]));
}

TEST_CASE("thread count from the environment") {
  ::setenv("SPECBAND_THREADS", "4", 1);
  CHECK(threads_from_env() == 4);
  ::setenv("SPECBAND_THREADS", "zero", 1);
  CHECK(threads_from_env() == 1);
  ::unsetenv("SPECBAND_THREADS");
  CHECK(threads_from_env() == 1);
}
