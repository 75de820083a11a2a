#include "pencilspec/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pencilspec {

using nlohmann::json;
using nlohmann::ordered_json;

RealMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data"))
    fail(ErrorCode::parse_error, "matrix file must be an object with \"n\" and \"data\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    fail(ErrorCode::parse_error, "matrix order \"n\" must be a positive integer");
  int n = j["n"].get<int>();
  const json& data = j["data"];
  if (!data.is_array() || static_cast<int>(data.size()) != n)
    fail(ErrorCode::parse_error, "matrix \"data\" must be an array of n rows");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const json& row : data) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(ErrorCode::parse_error, "matrix rows must each hold n numbers");
    for (const json& v : row) {
      if (!v.is_number()) fail(ErrorCode::parse_error, "matrix entries must be numbers");
      double x = v.get<double>();
      if (!std::isfinite(x)) fail(ErrorCode::parse_error, "matrix entries must be finite");
      flat.push_back(x);
    }
  }
  return RealMatrix(n, std::move(flat));
}

ordered_json matrix_to_json(const RealMatrix& m) {
  ordered_json j;
  j["n"] = m.order();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.order(); ++i) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.order(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  j["data"] = std::move(rows);
  return j;
}

std::vector<Complex> spectrum_values_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
    fail(ErrorCode::parse_error, "spectrum file must be an object with a \"values\" array");
  std::vector<Complex> out;
  out.reserve(j["values"].size());
  for (const json& v : j["values"]) {
    if (!v.is_object() || !v.contains("re") || !v.contains("im") || !v["re"].is_number() ||
        !v["im"].is_number())
      fail(ErrorCode::parse_error, "spectrum values must be objects {\"re\": x, \"im\": y}");
    double re = v["re"].get<double>();
    double im = v["im"].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      fail(ErrorCode::parse_error, "spectrum values must be finite");
    out.emplace_back(re, im);
  }
  return out;
}

ordered_json spectrum_values_to_json(const std::vector<Complex>& values) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const Complex& z : values) arr.push_back(complex_to_json(z));
  j["values"] = std::move(arr);
  return j;
}

ordered_json complex_to_json(Complex z) {
  ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

ordered_json tolerances_to_json(const Tolerances& t) {
  ordered_json j;
  j["sym_tol"] = t.sym_tol;
  j["commute_tol"] = t.commute_tol;
  j["eig_residual_tol"] = t.eig_residual_tol;
  j["distinct_tol"] = t.distinct_tol;
  j["conj_pair_tol"] = t.conj_pair_tol;
  j["root_tol"] = t.root_tol;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    std::ostringstream msg;
    msg << "cannot parse " << path << ": " << e.what();
    fail(ErrorCode::parse_error, msg.str());
  }
  return j;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorCode::io_error, "write failed: " + path);
}

RealMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

void write_matrix_file(const std::string& path, const RealMatrix& m) {
  write_json_file(path, matrix_to_json(m));
}

std::vector<Complex> read_spectrum_file(const std::string& path) {
  return spectrum_values_from_json(read_json_file(path));
}

void write_spectrum_file(const std::string& path, const std::vector<Complex>& values) {
  write_json_file(path, spectrum_values_to_json(values));
}

}  // namespace pencilspec
