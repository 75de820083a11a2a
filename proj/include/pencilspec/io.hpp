#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pencilspec/matrix.hpp"

namespace pencilspec {

// File schemas used by the CLI. Matrices are {"n": 2, "data": [[...], ...]}
// (row-major); spectra are {"values": [{"re": ..., "im": ...}, ...]} holding
// the full conjugate set. Emission uses ordered_json so identical inputs
// produce identical bytes.

RealMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::ordered_json matrix_to_json(const RealMatrix& m);

std::vector<Complex> spectrum_values_from_json(const nlohmann::json& j);
nlohmann::ordered_json spectrum_values_to_json(const std::vector<Complex>& values);

nlohmann::ordered_json complex_to_json(Complex z);
nlohmann::ordered_json tolerances_to_json(const Tolerances& t);

RealMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const RealMatrix& m);

std::vector<Complex> read_spectrum_file(const std::string& path);
void write_spectrum_file(const std::string& path, const std::vector<Complex>& values);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace pencilspec
