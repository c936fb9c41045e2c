#pragma once

#include <string>

#include "ruledsl/ast.hpp"
#include "ruledsl/parser.hpp"
#include "ruledsl/printer.hpp"

namespace walign::ruledsl {

// A learned rule in both of its forms: the natural-language statement and the
// executable DSL text, plus the parsed tree.
struct RuleSource {
  std::string rule_id;
  std::string action_kind;
  Detects detects = Detects::failure;
  std::string nl_text;
  std::string dsl_text;  // canonical form
  RuleAst ast;

  static RuleSource from_dsl(const std::string& dsl_text, std::string nl_text = "") {
    RuleSource src;
    src.ast = parse_rule(dsl_text);
    src.rule_id = src.ast.id;
    src.action_kind = src.ast.action_kind;
    src.detects = src.ast.detects;
    src.nl_text = std::move(nl_text);
    src.dsl_text = print_rule(src.ast);
    return src;
  }
};

}  // namespace walign::ruledsl
