#ifndef EIGENCURVE_EXPR_HPP
#define EIGENCURVE_EXPR_HPP

#include <functional>
#include <string>

namespace eigencurve {

/// Compiles a small arithmetic expression over the variable x into a callable.
///
/// Grammar: literals, x, + - * /, parentheses, unary minus, and the functions
/// min(a,b), max(a,b), sin(a), cos(a), exp(a).
/// Throws ConfigError (with column information in the message) on bad input.
std::function<double(double)> compile_expression(const std::string& text);

/// Parses and evaluates at a single point; convenience for tests.
double eval_expression(const std::string& text, double x);

} // namespace eigencurve

#endif
