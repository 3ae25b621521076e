#pragma once

#include <string_view>

namespace ptqw::cli {

/// Evaluates an angle expression such as "arcsin(cos(pi/6)/alpha)".
///
/// Constants: pi, p, alpha, beta, gamma (the last three derived from p).
/// Operators: + - * / ^ and unary minus. Functions: sin cos tan arcsin/asin
/// arccos/acos arctan/atan sqrt exp log abs. Throws ConfigError on syntax
/// errors, unknown names, or a non-finite result.
double evaluate_expression(std::string_view text, double loss);

}  // namespace ptqw::cli
