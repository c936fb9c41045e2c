#pragma once

#include <string>

#include "ruledsl/ast.hpp"

namespace walign::ruledsl {

// Canonical text form; parse_rule(print_rule(ast)) == ast.
std::string print_rule(const RuleAst& rule);

std::string print_expr(const ExprPtr& expr);

std::string print_string_literal(const std::string& s);

// Number literals print without a trailing ".0" when integral.
std::string print_number(double v);

}  // namespace walign::ruledsl
