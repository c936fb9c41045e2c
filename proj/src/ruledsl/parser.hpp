#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ruledsl/ast.hpp"

namespace walign::ruledsl {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses exactly one rule block.
RuleAst parse_rule(const std::string& text);

// Parses a rule file: any number of rule blocks, '#' starts a line comment.
std::vector<RuleAst> parse_rules(const std::string& text);

// Parses a bare condition expression (task goal predicates use this).
ExprPtr parse_expr_text(const std::string& text);

}  // namespace walign::ruledsl
