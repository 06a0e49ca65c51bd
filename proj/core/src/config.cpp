#include "rydscale/config.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rydscale/constants.hpp"
#include "rydscale/errors.hpp"
#include "rydscale/params.hpp"

namespace ryd {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double_strict(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("cannot parse '" + text + "' as a number" +
                      (what.empty() ? "" : " for " + what));
  return value;
}

// Splits "6.6e18 m^-3" into the numeric part and the unit token.
std::pair<double, std::string> split_quantity(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first)
    throw ConfigError("cannot parse quantity '" + text + "'");
  return {value, trim(std::string(ptr, last))};
}

}  // namespace

double parse_angular_frequency(const std::string& text) {
  const auto [value, unit] = split_quantity(text);
  if (unit == "rad/s") return value;
  double scale = 0.0;
  if (unit == "Hz") scale = 1.0;
  else if (unit == "kHz") scale = 1e3;
  else if (unit == "MHz") scale = 1e6;
  else if (unit == "GHz") scale = 1e9;
  else
    throw ConfigError("frequency '" + text + "' needs a unit (Hz, kHz, MHz, GHz or rad/s)");
  return 2.0 * std::numbers::pi * value * scale;
}

double parse_length_m(const std::string& text) {
  const auto [value, unit] = split_quantity(text);
  if (unit == "m") return value;
  if (unit == "cm") return value * 1e-2;
  if (unit == "mm") return value * 1e-3;
  if (unit == "um") return value * 1e-6;
  if (unit == "nm") return value * 1e-9;
  throw ConfigError("length '" + text + "' needs a unit (m, cm, mm, um, nm)");
}

double parse_time_s(const std::string& text) {
  const auto [value, unit] = split_quantity(text);
  if (unit == "s") return value;
  if (unit == "ms") return value * 1e-3;
  if (unit == "us") return value * 1e-6;
  if (unit == "ns") return value * 1e-9;
  throw ConfigError("time '" + text + "' needs a unit (s, ms, us, ns)");
}

double parse_density_si(const std::string& text, int dimension) {
  const auto [value, unit] = split_quantity(text);
  const std::string expected = "m^-" + std::to_string(dimension);
  if (unit == expected) return value;
  if (dimension == 3) {
    if (unit == "cm^-3") return value * 1e6;
    if (unit == "um^-3") return value * 1e18;
  }
  if (dimension == 1 && unit == "um^-1") return value * 1e6;
  throw ConfigError("density '" + text + "' needs a unit matching d=" +
                    std::to_string(dimension) + " (e.g. " + expected + ")");
}

double parse_c6_si(const std::string& text) {
  const auto [value, unit] = split_quantity(text);
  if (unit == "au" || unit == "a.u.") return c6_atomic_to_si(value);
  if (unit == "J*m^6" || unit == "J m^6") return value;
  if (unit == "Hz*um^6" || unit == "Hz um^6")
    return value * constants::planck_Js * 1e-36;
  throw ConfigError("C6 '" + text + "' needs a unit (au, J*m^6 or Hz*um^6)");
}

Config Config::parse(std::istream& in) {
  Config config;
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_number) + " is not 'key = value'");
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key on config line " + std::to_string(line_number));
    if (!section.empty()) key = section + "." + key;
    config.entries_[key] = value;
  }
  return config;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json manifest;
    try {
      in >> manifest;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad manifest JSON in " + path + ": " + e.what());
    }
    if (!manifest.contains("config") || !manifest["config"].is_object())
      throw ConfigError("manifest " + path + " has no config object");
    Config config;
    for (const auto& [key, value] : manifest["config"].items()) {
      if (!value.is_string())
        throw ConfigError("manifest config values must be strings (key " + key + ")");
      config.entries_[key] = value.get<std::string>();
    }
    return config;
  }
  return parse(in);
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

void Config::set(const std::string& key, std::string value) {
  entries_[key] = std::move(value);
}

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_number(const std::string& key) const {
  return parse_double_strict(get_string(key), key);
}

double Config::get_number(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const std::string text = trim(get_string(key));
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("cannot parse '" + text + "' as an integer for " + key);
  return value;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string text = trim(get_string(key));
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("cannot parse '" + text + "' as a seed for " + key);
  return value;
}

double Config::get_angular_frequency(const std::string& key) const {
  return parse_angular_frequency(get_string(key));
}

double Config::get_length(const std::string& key) const {
  return parse_length_m(get_string(key));
}

double Config::get_time(const std::string& key) const {
  return parse_time_s(get_string(key));
}

double Config::get_density(const std::string& key, int dimension) const {
  return parse_density_si(get_string(key), dimension);
}

double Config::get_c6(const std::string& key) const { return parse_c6_si(get_string(key)); }

void Config::require_schema(int expected) const {
  if (!has("schema")) throw ConfigError("config is missing 'schema = 1'");
  if (get_int("schema") != expected)
    throw ConfigError("unsupported config schema " + get_string("schema"));
}

}  // namespace ryd
