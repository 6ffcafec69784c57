#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace steinlab {

/// Flat key-value configuration with one `[section]` per module, INI syntax.
/// Keys are addressed as "section.key". Lists are comma separated.
///
///   [target]
///   type = gmm
///   L = 100
///   [kernel]
///   family = imq
///   beta = -0.5
///
/// Lookups of missing keys without a default, and values that do not
/// convert, throw ParseError naming the key.
class Config {
 public:
  Config();
  ~Config();
  Config(const Config& other);
  Config& operator=(const Config& other);
  Config(Config&&) noexcept;
  Config& operator=(Config&&) noexcept;

  static Config parse_string(const std::string& text);
  static Config parse_file(const std::filesystem::path& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::int64_t> get_ints(const std::string& key) const;
  std::vector<std::int64_t> get_ints(const std::string& key, const std::vector<std::int64_t>& fallback) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, const std::vector<double>& values);
  void set(const std::string& key, const std::vector<std::int64_t>& values);

  /// Serializes back to INI. Sections and keys keep insertion order.
  std::string to_ini() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Shortest-round-trip-safe decimal with 17 significant digits.
std::string format_double(double value);
std::string format_doubles(const std::vector<double>& values);

}  // namespace steinlab
