#pragma once

// JSON schemas for model operators and symbols.
//
// Operator:
//   {"kind":"spectral","order":m,"index_set":"Z"|"Z_nonzero",
//    "law":[{"c":[re,im],"sgn":0|1,"pow":p},...],
//    "exceptions":[{"n":k,"value":[re,im],"mult":j},...]}
// Symbol:
//   {"kind":"symbol","order":m,"gamma":[re,im]?,
//    "components":[{"deg":h,"plus":{"fourier":[[re,im],...]},"minus":{...}},...]}
// Fourier coefficient lists are ordered k = -B..B.  Complex parts may be JSON
// numbers or decimal strings; both parse exactly into doubles.

#include <string>

#include "oddzeta/spectralmodel.hpp"
#include "oddzeta/symbolcalc.hpp"

namespace oddzeta::io {

model::SpectralOperator parse_operator(const std::string& json_text);
std::string format_operator(const model::SpectralOperator& A);

symb::Symbol parse_symbol(const std::string& json_text);
std::string format_symbol(const symb::Symbol& S);

model::SpectralOperator load_operator(const std::string& path);
symb::Symbol load_symbol(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace oddzeta::io
