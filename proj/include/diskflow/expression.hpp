#pragma once

#include <functional>
#include <string>

#include "diskflow/disk_geometry.hpp"

namespace diskflow {

/// Compiles an arithmetic expression in the variable z over complex numbers.
/// Grammar: + - * /, unary -, parentheses, log, exp, sqrt, the literal i,
/// and decimal number literals. Throws std::invalid_argument on parse errors.
std::function<Complex(Complex)> compile_expression(const std::string& text);

/// Parses "a", "bi", "a+bi", "a-bi" style complex literals.
Complex parse_complex(const std::string& text);

}  // namespace diskflow
