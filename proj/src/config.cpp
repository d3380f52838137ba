#include "specband/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace specband {

namespace {

using nlohmann::json;

const std::vector<std::string> kSignalTypes = {"gaussian",      "bump",          "indicator", "transformed",
                                               "eigenfunction", "eigen_mixture", "random",    "dilate"};

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }

void expect_keys(const RunConfig& cfg, const json& obj, const std::string& pointer,
                 const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      cfg.fail(child(pointer, key), "unknown key '" + key + "'");
}

const json& require_object(const RunConfig& cfg, const json& parent, const std::string& pointer,
                           const std::string& key) {
  if (!parent.contains(key)) cfg.fail(pointer, "missing object '" + key + "'");
  const json& v = parent.at(key);
  if (!v.is_object()) cfg.fail(child(pointer, key), "'" + key + "' must be an object");
  return v;
}

double get_number(const RunConfig& cfg, const json& obj, const std::string& pointer, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    cfg.fail(pointer, "missing number '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) cfg.fail(child(pointer, key), "'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) cfg.fail(child(pointer, key), "'" + key + "' must be finite");
  return d;
}

std::string get_string(const RunConfig& cfg, const json& obj, const std::string& pointer, const std::string& key,
                       std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    cfg.fail(pointer, "missing string '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) cfg.fail(child(pointer, key), "'" + key + "' must be a string");
  return v.get<std::string>();
}

Region parse_region(const RunConfig& cfg, const json& v, const std::string& pointer) {
  if (!v.is_array()) cfg.fail(pointer, "region must be an array of [lo, hi] pairs");
  std::vector<Interval> ivs;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string p = child(pointer, std::to_string(k));
    const json& pair = v[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      cfg.fail(p, "interval must be a pair of numbers");
    ivs.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  try {
    return Region(std::move(ivs));
  } catch (const std::invalid_argument& e) {
    cfg.fail(pointer, e.what());
  }
}

void skip_string(const std::string& text, std::size_t& i, std::string& out) {
  out.clear();
  for (++i; i < text.size() && text[i] != '"'; ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) ++i;
    out += text[i];
  }
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

}  // namespace

void RunConfig::fail(const std::string& pointer, const std::string& message) const {
  std::string p = pointer;
  for (;;) {
    const auto it = lines.find(p);
    if (it != lines.end()) throw ConfigError(file, it->second, message);
    if (p.empty()) throw ConfigError(file, 1, message);
    p = p.substr(0, p.rfind('/'));
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"info", "spectrum", "approx", "audit", "multiplier", "sequence"};
  return names;
}

std::map<std::string, int> json_lines(const std::string& text) {
  struct Frame {
    bool object = false;
    std::string pointer;
    std::size_t index = 0;
    std::string key;
  };
  std::map<std::string, int> lines;
  std::vector<Frame> stack;
  int line = 1;
  bool expect_key = false;
  auto value_pointer = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& f = stack.back();
    return f.pointer + "/" + (f.object ? escape_pointer(f.key) : std::to_string(f.index));
  };
  std::string token;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ':') {
      continue;
    } else if (c == '"') {
      skip_string(text, i, token);
      if (!stack.empty() && stack.back().object && expect_key) {
        stack.back().key = token;
        expect_key = false;
      }
      lines.emplace(value_pointer(), line);
    } else if (c == '{' || c == '[') {
      const std::string p = value_pointer();
      lines.emplace(p, line);
      stack.push_back({c == '{', p, 0, ""});
      expect_key = c == '{';
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
      expect_key = false;
    } else if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object)
          expect_key = true;
        else
          ++stack.back().index;
      }
    } else {
      lines.emplace(value_pointer(), line);
      while (i + 1 < text.size() && !std::strchr(",]}\n \t\r", text[i + 1])) ++i;
    }
  }
  return lines;
}

RunConfig parse_config(const std::string& text, const std::string& file) {
  RunConfig cfg;
  cfg.file = file;
  cfg.name = std::filesystem::path(file).stem().string();
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ConfigError(file, line, std::string("parse error: ") + e.what());
  }
  cfg.lines = json_lines(text);
  if (!root.is_object()) cfg.fail("", "config must be a JSON object");
  expect_keys(cfg, root, "",
              {"name", "kernel", "grid", "regions", "signals", "command", "command_params", "output_dir", "seed",
               "debug"});

  cfg.name = get_string(cfg, root, "", "name", cfg.name);
  if (cfg.name.empty() || cfg.name.find('/') != std::string::npos) cfg.fail("/name", "name must be a plain file stem");

  const json& kernel = require_object(cfg, root, "", "kernel");
  expect_keys(cfg, kernel, "/kernel", {"family", "alpha"});
  cfg.family = get_string(cfg, kernel, "/kernel", "family");
  cfg.alpha = get_number(cfg, kernel, "/kernel", "alpha", 0.0);
  try {
    (void)kernel_from_name(cfg.family, cfg.alpha);
  } catch (const std::invalid_argument& e) {
    cfg.fail(kernel.contains("alpha") && cfg.family == "hankel" ? "/kernel/alpha" : "/kernel/family", e.what());
  }

  const json& grid = require_object(cfg, root, "", "grid");
  expect_keys(cfg, grid, "/grid", {"X", "N", "defect_max", "defect_norm", "rule"});
  cfg.X = get_number(cfg, grid, "/grid", "X");
  if (!(cfg.X > 0.0)) cfg.fail("/grid/X", "X must be positive");
  const double n = get_number(cfg, grid, "/grid", "N");
  if (n != std::floor(n) || n < 2 || n > 4096) cfg.fail("/grid/N", "N must be an integer in [2, 4096]");
  cfg.N = static_cast<int>(n);
  cfg.defect_max = get_number(cfg, grid, "/grid", "defect_max", 1e-8);
  if (!(cfg.defect_max >= 0.0)) cfg.fail("/grid/defect_max", "defect_max must be non-negative");
  const std::string dn = get_string(cfg, grid, "/grid", "defect_norm", "spectral");
  if (dn == "spectral")
    cfg.defect_norm = DefectNorm::Spectral;
  else if (dn == "frobenius")
    cfg.defect_norm = DefectNorm::Frobenius;
  else
    cfg.fail("/grid/defect_norm", "defect_norm must be 'spectral' or 'frobenius'");
  if (grid.contains("rule")) {
    const std::string r = get_string(cfg, grid, "/grid", "rule");
    if (r == "midpoint")
      cfg.rule = GridRule::Midpoint;
    else if (r == "bessel_zeros")
      cfg.rule = GridRule::BesselZeros;
    else
      cfg.fail("/grid/rule", "rule must be 'midpoint' or 'bessel_zeros'");
    if (cfg.rule == GridRule::BesselZeros && cfg.family != "hankel")
      cfg.fail("/grid/rule", "bessel_zeros requires the hankel family");
  }

  if (root.contains("regions")) {
    const json& regions = require_object(cfg, root, "", "regions");
    for (const auto& [key, value] : regions.items())
      cfg.regions[key] = parse_region(cfg, value, "/regions/" + escape_pointer(key));
  }

  if (root.contains("signals")) {
    const json& signals = require_object(cfg, root, "", "signals");
    for (const auto& [key, value] : signals.items()) {
      const std::string p = "/signals/" + escape_pointer(key);
      if (!value.is_object()) cfg.fail(p, "signal must be an object");
      SignalSpec spec;
      spec.name = key;
      spec.type = get_string(cfg, value, p, "type");
      if (std::find(kSignalTypes.begin(), kSignalTypes.end(), spec.type) == kSignalTypes.end())
        cfg.fail(child(p, "type"), "unknown signal type '" + spec.type + "'");
      if (value.contains("normalize")) {
        if (!value.at("normalize").is_boolean()) cfg.fail(child(p, "normalize"), "normalize must be a boolean");
        spec.normalize = value.at("normalize").get<bool>();
      }
      spec.params = value;
      cfg.signals[key] = std::move(spec);
    }
  }

  cfg.command = get_string(cfg, root, "", "command", cfg.command);
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    cfg.fail("/command", "unknown command '" + cfg.command + "'");
  if (root.contains("command_params")) cfg.params = require_object(cfg, root, "", "command_params");
  cfg.output_dir = get_string(cfg, root, "", "output_dir", cfg.output_dir);
  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) cfg.fail("/seed", "seed must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (root.contains("debug")) {
    const json& debug = require_object(cfg, root, "", "debug");
    expect_keys(cfg, debug, "/debug", {"corrupt_transform"});
    if (debug.contains("corrupt_transform"))
      cfg.corrupt_transform = get_number(cfg, debug, "/debug", "corrupt_transform");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace specband
