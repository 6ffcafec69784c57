#include "steinlab/config.hpp"

#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "steinlab/errors.hpp"

namespace steinlab {

namespace pt = boost::property_tree;

struct Config::Impl {
  pt::ptree tree;
};

Config::Config() : impl_(std::make_unique<Impl>()) {}
Config::~Config() = default;
Config::Config(const Config& other) : impl_(std::make_unique<Impl>(*other.impl_)) {}
Config& Config::operator=(const Config& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
Config::Config(Config&&) noexcept = default;
Config& Config::operator=(Config&&) noexcept = default;

Config Config::parse_string(const std::string& text) {
  Config config;
  std::istringstream in(text);
  try {
    pt::read_ini(in, config.impl_->tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("config: " + e.message() + " at line " + std::to_string(e.line()), e.line(), 1);
  }
  return config;
}

Config Config::parse_file(const std::filesystem::path& path) {
  Config config;
  try {
    pt::read_ini(path.string(), config.impl_->tree);
  } catch (const pt::ini_parser_error& e) {
    if (e.line() == 0) throw ParseError(path.string() + ": " + e.message());
    throw ParseError(path.string() + ":" + std::to_string(e.line()) + ":1: " + e.message(), e.line(), 1);
  }
  return config;
}

bool Config::has(const std::string& key) const { return impl_->tree.get_optional<std::string>(key).has_value(); }

std::string Config::get_string(const std::string& key) const {
  auto value = impl_->tree.get_optional<std::string>(key);
  if (!value) throw ParseError("config: missing required key '" + key + "'");
  return boost::algorithm::trim_copy(*value);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

namespace {

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  try {
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError("config: key '" + key + "' expects a number, got '" + text + "'");
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  try {
    const long long value = std::stoll(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError("config: key '" + key + "' expects an integer, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

double Config::get_double(const std::string& key) const { return to_double(key, get_string(key)); }

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(const std::string& key) const { return to_int(key, get_string(key)); }

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string text = get_string(key);
  std::size_t used = 0;
  try {
    const unsigned long long value = std::stoull(text, &used, 0);
    if (used == text.size() && text.front() != '-') return value;
  } catch (const std::exception&) {
  }
  throw ParseError("config: key '" + key + "' expects an unsigned 64-bit seed, got '" + text + "'");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string text = get_string(key);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("config: key '" + key + "' expects true/false, got '" + text + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> values;
  for (const auto& item : split_list(get_string(key))) values.push_back(to_double(key, item));
  return values;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_doubles(key) : fallback;
}

std::vector<std::int64_t> Config::get_ints(const std::string& key) const {
  std::vector<std::int64_t> values;
  for (const auto& item : split_list(get_string(key))) values.push_back(to_int(key, item));
  return values;
}

std::vector<std::int64_t> Config::get_ints(const std::string& key, const std::vector<std::int64_t>& fallback) const {
  return has(key) ? get_ints(key) : fallback;
}

void Config::set(const std::string& key, const std::string& value) { impl_->tree.put(key, value); }

void Config::set(const std::string& key, double value) { set(key, format_double(value)); }

void Config::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }

void Config::set(const std::string& key, const std::vector<double>& values) { set(key, format_doubles(values)); }

void Config::set(const std::string& key, const std::vector<std::int64_t>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) text += (i ? ", " : "") + std::to_string(values[i]);
  set(key, text);
}

std::string Config::to_ini() const {
  std::ostringstream out;
  pt::write_ini(out, impl_->tree);
  return out.str();
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

std::string format_doubles(const std::vector<double>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) text += (i ? ", " : "") + format_double(values[i]);
  return text;
}

}  // namespace steinlab
