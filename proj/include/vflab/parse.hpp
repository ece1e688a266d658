#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vflab/polynomial.hpp"
#include "vflab/weyl.hpp"

namespace vflab {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t column)
        : std::runtime_error("parse error at column " + std::to_string(column) + ": " + what),
          column(column) {}
    std::size_t column;  // 1-based
};

/// Polynomial text: variables [a-z][a-z0-9_]*, integer or p/q coefficients,
/// operators + - * ^ and parentheses; no implicit multiplication.
Polynomial parse_polynomial(const std::string& text, const VarSet& vars);

/// Variant that infers the VarSet from the variables appearing in `text`,
/// in order of first appearance unless `preferred` supplies an order.
Polynomial parse_polynomial_auto(const std::string& text,
                                 const std::vector<std::string>& preferred = {});

/// Collects variable names appearing in polynomial text (appearance order).
std::vector<std::string> scan_variables(const std::string& text);

/// Operator text: same grammar, plus `d<var>` tokens for the partial
/// derivative with respect to a context variable.
WeylOperator parse_weyl_operator(const std::string& text, const WeylContext& ctx);

/// Comma-separated rationals, e.g. "1/2,1/3".
std::vector<Rational> parse_rational_list(const std::string& text);
/// Comma-separated non-negative integers, e.g. "2,3".
std::vector<unsigned> parse_unsigned_list(const std::string& text);

}  // namespace vflab
