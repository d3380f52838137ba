#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "specband/grid.hpp"
#include "specband/transform.hpp"

namespace specband {

// Validation failure anchored to a line of the config file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SignalSpec {
  std::string name;
  std::string type;  // gaussian, bump, indicator, transformed, eigenfunction, eigen_mixture, random, dilate
  nlohmann::json params;
  bool normalize = true;
};

struct RunConfig {
  std::string file;
  std::string name;
  std::string family = "cosine";
  double alpha = 0.0;
  double X = 8.0;
  int N = 256;
  double defect_max = 1e-8;
  DefectNorm defect_norm = DefectNorm::Spectral;
  std::optional<GridRule> rule;
  std::map<std::string, Region> regions;
  std::map<std::string, SignalSpec> signals;
  std::string command = "info";
  nlohmann::json params = nlohmann::json::object();
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<double> corrupt_transform;

  // JSON pointer to source line, for anchoring later errors.
  std::map<std::string, int> lines;
  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;
};

const std::vector<std::string>& command_names();

RunConfig parse_config(const std::string& text, const std::string& file);
RunConfig load_config(const std::string& path);

// Line of every value in a JSON document, keyed by JSON pointer ("" is the root).
std::map<std::string, int> json_lines(const std::string& text);

}  // namespace specband
