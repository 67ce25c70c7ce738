#include "eraser/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace eraser {

EraserSettings RunConfig::settings() const {
  EraserSettings s;
  s.zeta = Angle::from_degrees(zeta_deg);
  s.eta = Angle::from_degrees(eta_deg);
  s.theta = Angle::from_degrees(theta_deg);
  s.xi = Angle::from_degrees(xi_deg);
  s.tau_a = tau_a;
  s.tau_b = tau_b;
  s.delta = source.aom_bandwidth;
  s.i0 = i0;
  return s;
}

McConfig RunConfig::mc_config() const {
  McConfig mc;
  mc.n_events = n_events;
  mc.mode = mc_mode;
  mc.settings = settings();
  mc.source = source;
  return mc;
}

namespace {

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// One settable key: a parse/assign action plus a range description used in
// error messages.
struct KeyHandler {
  std::function<void(RunConfig&, const std::string& value,
                     const std::string& origin, int line)>
      assign;
};

double parse_double(const std::string& value, const std::string& origin,
                    int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) fail(origin, line, "trailing junk after number");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(origin, line, "expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& origin,
                        int line) {
  std::uint64_t v = 0;
  const auto* begin = value.data();
  const auto* end = begin + value.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(origin, line, "expected an unsigned integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& value, const std::string& origin,
                int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(origin, line, "expected true or false, got '" + value + "'");
}

using Schema = std::map<std::string, std::map<std::string, KeyHandler>>;

const Schema& schema() {
  static const Schema table = [] {
    Schema s;

    auto dbl = [](auto setter, double lo, bool lo_strict,
                  const char* range_msg) {
      return KeyHandler{[=](RunConfig& c, const std::string& v,
                            const std::string& origin, int line) {
        const double x = parse_double(v, origin, line);
        const bool ok = lo_strict ? (x > lo) : (x >= lo);
        if (!ok || !std::isfinite(x)) fail(origin, line, range_msg);
        setter(c, x);
      }};
    };
    auto dbl_any = [](auto setter) {
      return KeyHandler{[=](RunConfig& c, const std::string& v,
                            const std::string& origin, int line) {
        const double x = parse_double(v, origin, line);
        if (!std::isfinite(x)) fail(origin, line, "value must be finite");
        setter(c, x);
      }};
    };

    s["source"]["mean_photon_number"] =
        dbl([](RunConfig& c, double x) { c.source.mean_photon_number = x; },
            0.0, false, "mean_photon_number must be >= 0");
    s["source"]["aom_bandwidth"] =
        dbl([](RunConfig& c, double x) { c.source.aom_bandwidth = x; }, 0.0,
            true, "aom_bandwidth must be > 0");
    s["source"]["detuning_mode"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) {
          if (v == "uniform_random") {
            c.source.detuning_mode = DetuningMode::uniform_random;
          } else if (v == "linear_scan") {
            c.source.detuning_mode = DetuningMode::linear_scan;
          } else {
            fail(origin, line,
                 "detuning_mode must be uniform_random or linear_scan");
          }
        }};
    s["source"]["scan_length"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) {
          const std::uint64_t x = parse_u64(v, origin, line);
          if (x == 0) fail(origin, line, "scan_length must be >= 1");
          c.source.scan_length = x;
        }};
    s["source"]["seed"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) { c.source.seed = parse_u64(v, origin, line); }};

    s["settings"]["zeta_deg"] =
        dbl_any([](RunConfig& c, double x) { c.zeta_deg = x; });
    s["settings"]["eta_deg"] =
        dbl_any([](RunConfig& c, double x) { c.eta_deg = x; });
    s["settings"]["theta_deg"] =
        dbl_any([](RunConfig& c, double x) { c.theta_deg = x; });
    s["settings"]["xi_deg"] =
        dbl_any([](RunConfig& c, double x) { c.xi_deg = x; });
    s["settings"]["tau_a"] =
        dbl_any([](RunConfig& c, double x) { c.tau_a = x; });
    s["settings"]["tau_b"] =
        dbl_any([](RunConfig& c, double x) { c.tau_b = x; });
    s["settings"]["i0"] = dbl([](RunConfig& c, double x) { c.i0 = x; }, 0.0,
                              true, "i0 must be > 0");

    s["mc"]["n_events"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) {
          const std::uint64_t x = parse_u64(v, origin, line);
          if (x == 0) fail(origin, line, "n_events must be >= 1");
          c.n_events = x;
        }};
    s["mc"]["mode"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) {
          if (v == "quantum_gated") {
            c.mc_mode = McMode::quantum_gated;
          } else if (v == "classical_ungated") {
            c.mc_mode = McMode::classical_ungated;
          } else {
            fail(origin, line,
                 "mode must be quantum_gated or classical_ungated");
          }
        }};

    s["output"]["dir"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string&, int) {
          c.output_dir = v;
        }};
    s["output"]["format"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) {
          if (v == "csv") {
            c.output_format = OutputFormat::csv;
          } else if (v == "json") {
            c.output_format = OutputFormat::json;
          } else {
            fail(origin, line, "format must be csv or json");
          }
        }};
    s["output"]["svg"] = KeyHandler{
        [](RunConfig& c, const std::string& v, const std::string& origin,
           int line) { c.emit_svg = parse_bool(v, origin, line); }};

    return s;
  }();
  return table;
}

}  // namespace

RunConfig parse_run_config(const std::string& text,
                           const std::string& origin) {
  RunConfig cfg;
  const Schema& known = schema();
  const std::map<std::string, KeyHandler>* section = nullptr;
  std::string section_name;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "unterminated section header");
      section_name = trim(s.substr(1, s.size() - 2));
      const auto it = known.find(section_name);
      if (it == known.end()) {
        fail(origin, line, "unknown section [" + section_name + "]");
      }
      section = &it->second;
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail(origin, line, "expected 'key = value'");
    }
    if (section == nullptr) {
      fail(origin, line, "key outside any [section]");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto it = section->find(key);
    if (it == section->end()) {
      fail(origin, line,
           "unknown key '" + key + "' in [" + section_name + "]");
    }
    it->second.assign(cfg, value, origin, line);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string());
}

namespace {

// %.17g round-trips every double exactly through parse_double.
std::string full_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize(const RunConfig& cfg) {
  std::string out;
  out += "[source]\n";
  out += "mean_photon_number = " + full_double(cfg.source.mean_photon_number) +
         "\n";
  out += "aom_bandwidth = " + full_double(cfg.source.aom_bandwidth) + "\n";
  out += std::string("detuning_mode = ") +
         (cfg.source.detuning_mode == DetuningMode::uniform_random
              ? "uniform_random"
              : "linear_scan") +
         "\n";
  out += "scan_length = " + std::to_string(cfg.source.scan_length) + "\n";
  out += "seed = " + std::to_string(cfg.source.seed) + "\n";
  out += "\n[settings]\n";
  out += "zeta_deg = " + full_double(cfg.zeta_deg) + "\n";
  out += "eta_deg = " + full_double(cfg.eta_deg) + "\n";
  out += "theta_deg = " + full_double(cfg.theta_deg) + "\n";
  out += "xi_deg = " + full_double(cfg.xi_deg) + "\n";
  out += "tau_a = " + full_double(cfg.tau_a) + "\n";
  out += "tau_b = " + full_double(cfg.tau_b) + "\n";
  out += "i0 = " + full_double(cfg.i0) + "\n";
  out += "\n[mc]\n";
  out += "n_events = " + std::to_string(cfg.n_events) + "\n";
  out += std::string("mode = ") +
         (cfg.mc_mode == McMode::quantum_gated ? "quantum_gated"
                                               : "classical_ungated") +
         "\n";
  out += "\n[output]\n";
  out += "dir = " + cfg.output_dir + "\n";
  out += std::string("format = ") +
         (cfg.output_format == OutputFormat::csv ? "csv" : "json") + "\n";
  out += std::string("svg = ") + (cfg.emit_svg ? "true" : "false") + "\n";
  return out;
}

}  // namespace eraser
