#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "core/types.hpp"
#include "ruledsl/ast.hpp"

namespace walign::ruledsl {

// Answers ask() atoms. Implementations may throw EvalError (or anything
// derived from std::exception); evaluation surfaces it as a rule-evaluation
// error so callers can decide whether to skip the rule.
using AskFn = std::function<bool(const std::string& question)>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Verdict {
  bool applies = false;          // action kind matched
  bool fired = false;            // condition held
  bool predicted_result = true;  // success unless a failure detector fired
  std::string feedback;
  std::string suggestion;
};

// Renders "{path}" slots against the state/action pair. Missing paths render
// as "<missing:PATH>"; "{{" and "}}" escape literal braces.
std::string render_template(const std::string& tmpl, const State& state,
                            const Action& action);

Verdict evaluate_rule(const RuleAst& rule, const State& state, const Action& action,
                      const AskFn& ask);

// Failure detectors are active exactly where they assert failure.
bool is_active(const RuleAst& rule, const State& state, const Action& action,
               const AskFn& ask);

// Evaluates a bare condition (used for task goal predicates, which must not
// contain ask() atoms — pass a null AskFn and any ask throws).
bool evaluate_expr(const ExprPtr& expr, const State& state, const Action& action,
                   const AskFn& ask);

// Convenience oracle backed by a fixed question table; unknown questions throw.
AskFn ask_table(std::map<std::string, bool> answers);

}  // namespace walign::ruledsl
