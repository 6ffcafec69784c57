#include "steinlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "steinlab/config.hpp"
#include "steinlab/errors.hpp"

namespace steinlab {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto fields = split_fields(stripped);
    if (!have_header) {
      for (const auto& f : fields) table.header.push_back(trim(f));
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError(fmt::format("{}:{}:1: expected {} fields, found {}", source, line_no, table.header.size(),
                                   fields.size()),
                       line_no, 1);
    }
    std::vector<double> row;
    std::size_t column = 1;
    for (const auto& raw : fields) {
      const std::string f = trim(raw);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError(fmt::format("{}:{}:{}: '{}' is not a number", source, line_no, column, f), line_no, column);
      }
      row.push_back(value);
      column += raw.size() + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(source + ": missing header row");
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path.string());
}

SampleBatch read_samples_csv(const std::filesystem::path& path) {
  auto table = read_csv(path);
  if (table.values.rows() < 1) throw ParseError(path.string() + ": no sample rows");
  return table.values;
}

std::string samples_to_csv(const Eigen::Ref<const SampleBatch>& batch, const std::string& comment) {
  std::string out = comment;
  for (Eigen::Index j = 0; j < batch.cols(); ++j) out += fmt::format("{}x{}", j ? "," : "", j + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < batch.rows(); ++i) {
    for (Eigen::Index j = 0; j < batch.cols(); ++j) {
      if (j) out += ',';
      out += format_double(batch(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const DiscrepancyResult& result, int indent) {
  nlohmann::ordered_json j;
  j["value"] = result.value;
  j["w_sq"] = std::vector<double>(result.w_sq.data(), result.w_sq.data() + result.w_sq.size());
  j["n"] = result.n;
  j["m"] = result.m;
  j["L"] = result.num_terms;
  j["term_evals"] = result.term_evals;
  j["seed"] = result.seed ? nlohmann::ordered_json(*result.seed) : nlohmann::ordered_json(nullptr);
  return j.dump(indent);
}

DiscrepancyResult discrepancy_result_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("result json: ") + e.what());
  }
  DiscrepancyResult r;
  try {
    r.value = j.at("value").get<double>();
    const auto w = j.at("w_sq").get<std::vector<double>>();
    r.w_sq = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    r.n = j.at("n").get<Eigen::Index>();
    r.m = j.at("m").get<Eigen::Index>();
    r.num_terms = j.at("L").get<Eigen::Index>();
    r.term_evals = j.at("term_evals").get<std::uint64_t>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("result json: ") + e.what());
  }
  return r;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string comment_block(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

}  // namespace steinlab
