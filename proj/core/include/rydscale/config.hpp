#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace ryd {

// Declarative run configuration: dotted keys, `key = value` lines, '#'
// comments, optional [section] headers that prefix the keys that follow.
// Physical quantities carry explicit unit suffixes ("154 kHz", "8.6 um");
// conversion to internal units happens here, exactly once.
class Config {
 public:
  static Config parse(std::istream& in);
  // Plain text, or a run manifest (.json) whose "config" object is reused.
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, std::string value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_number(const std::string& key) const;
  double get_number(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;

  double get_angular_frequency(const std::string& key) const;  // -> rad/s
  double get_length(const std::string& key) const;             // -> m
  double get_time(const std::string& key) const;               // -> s
  double get_density(const std::string& key, int dimension) const;
  double get_c6(const std::string& key) const;                 // -> J m^6

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Every versioned config must declare `schema = 1`.
  void require_schema(int expected = 1) const;

 private:
  std::map<std::string, std::string> entries_;
};

// Unit parsers, exposed for direct use. Frequencies written in Hz multiples
// denote ordinary frequencies and are converted to angular ones (2 pi nu);
// "rad/s" passes through.
double parse_angular_frequency(const std::string& text);
double parse_length_m(const std::string& text);
double parse_time_s(const std::string& text);
double parse_density_si(const std::string& text, int dimension);
double parse_c6_si(const std::string& text);

}  // namespace ryd
