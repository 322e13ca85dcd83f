#include "ufg/matrix_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ufg {

namespace {

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Matrix parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("matrix parse error at " + locate(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
    throw ConfigError("matrix file must be an object with \"dim\" and \"entries\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    throw ConfigError("matrix \"dim\" must be a positive integer");
  const Eigen::Index n = doc["dim"].get<Eigen::Index>();
  const auto& entries = doc["entries"];
  if (!entries.is_array())
    throw ConfigError("matrix \"entries\" must be an array of [re, im] pairs");
  if (static_cast<Eigen::Index>(entries.size()) != n * n)
    throw ConfigError("dimension mismatch: expected " + std::to_string(n * n) +
                      " entries for dim " + std::to_string(n) + ", got " +
                      std::to_string(entries.size()));
  Matrix m(n, n);
  Eigen::Index k = 0;
  for (const auto& pair : entries) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ConfigError("entry " + std::to_string(k) + " is not a [re, im] number pair");
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ConfigError("entry " + std::to_string(k) + " is not finite");
    m(k / n, k % n) = Complex{re, im};
    ++k;
  }
  return m;
}

std::string matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw ConfigError("matrix_to_json: matrix must be square");
  nlohmann::ordered_json doc;
  doc["dim"] = m.rows();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  doc["entries"] = std::move(entries);
  return doc.dump();
}

Matrix read_matrix_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

void write_matrix_json(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << matrix_to_json(m) << '\n';
}

}  // namespace ufg
