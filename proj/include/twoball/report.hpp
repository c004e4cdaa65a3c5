#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "twoball/certify.hpp"

namespace twoball {

using Field = std::variant<double, std::string>;

/// Rectangular result set written as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Field>> rows;
};

/// printf-style %.<digits>g; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v, int digits);

std::string to_csv(const Table& table, int digits);
nlohmann::json to_json(const Table& table, int digits);

nlohmann::json certificate_to_json(const ZigzagCertificate& cert, const std::string& tool_version);
/// Inverse of certificate_to_json; throws nlohmann::json::exception or
/// std::invalid_argument on malformed input.
ZigzagCertificate certificate_from_json(const nlohmann::json& j);

/// Relative paths are taken against $TWOBALL_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output_path(const std::string& out);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace twoball
