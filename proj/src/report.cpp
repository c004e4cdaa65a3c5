#include "twoball/report.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace twoball {

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}g}", v, digits);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v, 17);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s == "nan") return std::nan("");
  throw std::invalid_argument("certificate: bad number " + s);
}

nlohmann::json directed_json(const DirectedValue& v) { return {{"lo", v.lo}, {"hi", v.hi}}; }

DirectedValue directed_from_json(const nlohmann::json& j) {
  return {j.at("lo").get<double>(), j.at("hi").get<double>()};
}

}  // namespace

std::string to_csv(const Table& table, int digits) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.header[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* v = std::get_if<double>(&row[i])) out += format_number(*v, digits);
      else out += csv_escape(std::get<std::string>(row[i]));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Table& table, int digits) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
      if (const double* v = std::get_if<double>(&row[i])) {
        // Round through the text form so --digits affects JSON too.
        obj[table.header[i]] = std::isfinite(*v) ? nlohmann::json(std::stod(format_number(*v, digits)))
                                                 : nlohmann::json(format_number(*v, digits));
      } else {
        obj[table.header[i]] = std::get<std::string>(row[i]);
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

nlohmann::json certificate_to_json(const ZigzagCertificate& cert, const std::string& tool_version) {
  nlohmann::json j;
  j["dimension"] = cert.params.d;
  const SpectralConstants& c = cert.constants;
  j["constants"] = {{"j1", directed_json(c.j1)},
                    {"j2", directed_json(c.j2)},
                    {"k", directed_json(c.k)},
                    {"aI", directed_json(c.aI)},
                    {"aS", directed_json(c.aS)}};
  j["x_seq"] = cert.x_seq;
  j["y_seq"] = cert.y_seq;
  nlohmann::json margins = nlohmann::json::object();
  for (const auto& [name, value] : cert.margins) margins[name] = number_json(value);
  j["margins"] = margins;
  j["tolerances"] = {{"margin_guard", cert.options.margin_guard},
                     {"threshold_tol", cert.options.threshold_tol},
                     {"max_len", cert.options.max_len}};
  j["verdict"] = {{"pass", cert.pass}, {"failing", cert.failing}};
  j["tool_version"] = tool_version;
  return j;
}

ZigzagCertificate certificate_from_json(const nlohmann::json& j) {
  ZigzagCertificate cert;
  cert.params = DimensionParams::make(j.at("dimension").get<int>());
  const nlohmann::json& c = j.at("constants");
  cert.constants.params = cert.params;
  cert.constants.j1 = directed_from_json(c.at("j1"));
  cert.constants.j2 = directed_from_json(c.at("j2"));
  cert.constants.k = directed_from_json(c.at("k"));
  cert.constants.aI = directed_from_json(c.at("aI"));
  cert.constants.aS = directed_from_json(c.at("aS"));
  cert.x_seq = j.at("x_seq").get<std::vector<double>>();
  cert.y_seq = j.at("y_seq").get<std::vector<double>>();
  for (const auto& [name, value] : j.at("margins").items()) cert.margins[name] = number_from_json(value);
  const nlohmann::json& t = j.at("tolerances");
  cert.options.margin_guard = t.at("margin_guard").get<double>();
  cert.options.threshold_tol = t.at("threshold_tol").get<double>();
  cert.options.max_len = t.at("max_len").get<int>();
  cert.pass = j.at("verdict").at("pass").get<bool>();
  cert.failing = j.at("verdict").at("failing").get<std::vector<std::string>>();
  return cert;
}

std::filesystem::path resolve_output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* base = std::getenv("TWOBALL_OUTPUT_DIR"); base != nullptr && *base != '\0') {
      return std::filesystem::path(base) / p;
    }
  }
  return p;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << contents;
    os.flush();
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace twoball
