#include "ruledsl/printer.hpp"

#include <cmath>

namespace walign::ruledsl {

namespace {

// Precedence: or < and < not < atom. A child printed with the same or lower
// precedence than its parent gets parentheses, which keeps the left-assoc
// parse identical on the way back in.
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kNot = 3;
constexpr int kAtom = 4;

int precedence_of(const Expr& e) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OrExpr>) return kOr;
        else if constexpr (std::is_same_v<T, AndExpr>) return kAnd;
        else if constexpr (std::is_same_v<T, NotExpr>) return kNot;
        else return kAtom;
      },
      e);
}

std::string print_scalar(const Document& d) {
  if (d.is_string()) return print_string_literal(d.get<std::string>());
  if (d.is_boolean()) return d.get<bool>() ? "true" : "false";
  if (d.is_null()) return "null";
  return print_number(d.get<double>());
}

std::string print_value(const Value& v) {
  if (v.kind == Value::Kind::path) return v.path.to_string();
  return print_scalar(v.scalar);
}

std::string print_node(const ExprPtr& e, int parent_prec);

std::string print_child(const ExprPtr& child, int parent_prec, bool strict) {
  int child_prec = precedence_of(*child);
  bool parens = strict ? child_prec <= parent_prec : child_prec < parent_prec;
  std::string inner = print_node(child, 0);
  return parens ? "(" + inner + ")" : inner;
}

std::string print_node(const ExprPtr& e, int) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OrExpr>) {
          return print_child(node.lhs, kOr, false) + " or " + print_child(node.rhs, kOr, true);
        } else if constexpr (std::is_same_v<T, AndExpr>) {
          return print_child(node.lhs, kAnd, false) + " and " +
                 print_child(node.rhs, kAnd, true);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return "not " + print_child(node.operand, kNot, true);
        } else if constexpr (std::is_same_v<T, CompareAtom>) {
          return node.lhs.to_string() + " " + to_string(node.op) + " " +
                 print_value(node.rhs);
        } else if constexpr (std::is_same_v<T, CoalesceAtom>) {
          return node.lhs.to_string() + " ?? " + print_scalar(node.fallback) + " " +
                 to_string(node.op) + " " + print_value(node.rhs);
        } else if constexpr (std::is_same_v<T, HasAtom>) {
          return "has(" + node.container.to_string() + ", " + print_value(node.needle) + ")";
        } else if constexpr (std::is_same_v<T, CountAtom>) {
          return "count(" + node.target.to_string() + ") " + to_string(node.op) + " " +
                 print_number(node.number);
        } else {
          return "ask(" + print_string_literal(node.question) + ")";
        }
      },
      *e);
}

}  // namespace

std::string print_string_literal(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string print_number(double v) {
  if (std::floor(v) == v && std::abs(v) < 9.007199254740992e15)
    return std::to_string(static_cast<long long>(v));
  return Document(v).dump();
}

std::string print_expr(const ExprPtr& expr) { return print_node(expr, 0); }

std::string print_rule(const RuleAst& rule) {
  std::string out;
  out += "rule " + rule.id + " on " + rule.action_kind + " detects " +
         to_string(rule.detects) + " {\n";
  out += "  when: " + print_expr(rule.condition) + "\n";
  out += "  feedback: " + print_string_literal(rule.feedback_template) + "\n";
  out += "  suggestion: " + print_string_literal(rule.suggestion_template) + "\n";
  out += "}\n";
  return out;
}

}  // namespace walign::ruledsl
