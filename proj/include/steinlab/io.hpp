#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "steinlab/discrepancy.hpp"

namespace steinlab {

/// Numeric CSV: a header row, then one row per record. Lines starting with
/// '#' are comments (run provenance) and are skipped on read.
struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

/// Throws ParseError carrying the 1-based line and column of the bad field.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<string>");

/// Sample format: header x1..xd, one row per point, 17 significant digits.
SampleBatch read_samples_csv(const std::filesystem::path& path);
std::string samples_to_csv(const Eigen::Ref<const SampleBatch>& batch, const std::string& comment = {});

/// {"value", "w_sq", "n", "m", "L", "term_evals", "seed"}; seed is null for the exact KSD.
std::string to_json(const DiscrepancyResult& result, int indent = 2);
DiscrepancyResult discrepancy_result_from_json(const std::string& text);

/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Prefixes every line of `text` with "# ".
std::string comment_block(const std::string& text);

}  // namespace steinlab
