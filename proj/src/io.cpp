#include "modeshape/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

using nlohmann::json;

Matrix read_matrix(const json& doc, const char* key, Index rows, Index cols) {
  if (!doc.contains(key)) {
    if (rows == 0 || cols == 0) return Matrix(rows, cols);
    throw ConformanceError(std::string("missing block '") + key + "'");
  }
  const json& node = doc.at(key);
  if (!node.is_array()) throw ParseError(std::string("'") + key + "' must be a nested array");
  if (static_cast<Index>(node.size()) != rows) {
    std::ostringstream os;
    os << "'" << key << "' has " << node.size() << " rows, expected " << rows;
    throw ConformanceError(os.str());
  }
  Matrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = node.at(static_cast<std::size_t>(r));
    if (!row.is_array()) throw ParseError(std::string("'") + key + "' rows must be arrays");
    if (static_cast<Index>(row.size()) != cols) {
      std::ostringstream os;
      os << "'" << key << "' row " << r << " has " << row.size() << " entries, expected " << cols;
      throw ConformanceError(os.str());
    }
    for (Index c = 0; c < cols; ++c) {
      const json& v = row.at(static_cast<std::size_t>(c));
      if (!v.is_number()) throw ParseError(std::string("'") + key + "' entries must be numbers");
      out(r, c) = v.get<double>();
      if (!std::isfinite(out(r, c))) {
        throw ConformanceError(std::string("'") + key + "' has non-finite entries");
      }
    }
  }
  return out;
}

Vector read_vector(const json& doc, const char* key, Index size) {
  if (!doc.contains(key)) return Vector::Zero(size);
  const json& node = doc.at(key);
  if (!node.is_array() || static_cast<Index>(node.size()) != size) {
    throw ConformanceError(std::string("'") + key + "' must be an array of length " +
                           std::to_string(size));
  }
  Vector out(size);
  for (Index k = 0; k < size; ++k) {
    const json& v = node.at(static_cast<std::size_t>(k));
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' entries must be numbers");
    out(k) = v.get<double>();
  }
  if (!out.allFinite()) throw ConformanceError(std::string("'") + key + "' is not finite");
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Index read_dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw ParseError(std::string("'") + key + "' must be an integer");
  }
  return doc.at(key).get<Index>();
}

}  // namespace

JacobianSet parse_linear_model(const json& doc) {
  if (!doc.is_object()) throw ParseError("linear model file must contain a JSON object");
  const Index nu = read_dimension(doc, "nu");
  const Index mu = read_dimension(doc, "mu");
  if (nu < 1 || mu < 0) throw ConformanceError("need nu >= 1 and mu >= 0");

  JacobianSet jac;
  jac.f_x = read_matrix(doc, "f_x", nu, nu);
  jac.f_y = read_matrix(doc, "f_y", nu, mu);
  jac.g_x = read_matrix(doc, "g_x", mu, nu);
  jac.g_y = read_matrix(doc, "g_y", mu, mu);
  jac.x_o = read_vector(doc, "x0", nu);
  jac.y_o = read_vector(doc, "y0", mu);
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("'name' must be a string");
    jac.name = doc.at("name").get<std::string>();
  }
  jac.check();
  jac.g_y_condition = condition_estimate(jac.g_y);
  return jac;
}

JacobianSet load_linear_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open linear model file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError("cannot parse '" + path.string() + "': " + err.what());
  }
  return parse_linear_model(doc);
}

json linear_model_json(const JacobianSet& jac) {
  jac.check();
  json doc;
  doc["nu"] = jac.nu();
  doc["mu"] = jac.mu();
  if (!jac.name.empty()) doc["name"] = jac.name;
  doc["f_x"] = matrix_json(jac.f_x);
  if (jac.mu() > 0) {
    doc["f_y"] = matrix_json(jac.f_y);
    doc["g_x"] = matrix_json(jac.g_x);
    doc["g_y"] = matrix_json(jac.g_y);
  }
  if (jac.x_o.size() == jac.nu()) doc["x0"] = vector_json(jac.x_o);
  if (jac.mu() > 0 && jac.y_o.size() == jac.mu()) doc["y0"] = vector_json(jac.y_o);
  return doc;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into '" + path.string() + "'");
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

}  // namespace modeshape
