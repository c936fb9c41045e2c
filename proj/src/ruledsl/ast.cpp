#include "ruledsl/ast.hpp"

namespace walign::ruledsl {

std::string to_string(Cmp op) {
  switch (op) {
    case Cmp::eq: return "==";
    case Cmp::ne: return "!=";
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::gt: return ">";
    case Cmp::ge: return ">=";
  }
  return "==";
}

std::string to_string(Detects d) {
  return d == Detects::failure ? "failure" : "success";
}

Value Value::make_scalar(Document d) {
  Value v;
  v.kind = Kind::scalar;
  v.scalar = std::move(d);
  return v;
}

Value Value::make_path(PathExpr p) {
  Value v;
  v.kind = Kind::path;
  v.path = std::move(p);
  return v;
}

bool Value::operator==(const Value& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::scalar) return doc_eq(scalar, other.scalar);
  return path == other.path;
}

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool AndExpr::operator==(const AndExpr& other) const {
  return expr_eq(lhs, other.lhs) && expr_eq(rhs, other.rhs);
}

bool OrExpr::operator==(const OrExpr& other) const {
  return expr_eq(lhs, other.lhs) && expr_eq(rhs, other.rhs);
}

bool NotExpr::operator==(const NotExpr& other) const {
  return expr_eq(operand, other.operand);
}

bool CompareAtom::operator==(const CompareAtom& other) const {
  return lhs == other.lhs && op == other.op && rhs == other.rhs;
}

bool CoalesceAtom::operator==(const CoalesceAtom& other) const {
  return lhs == other.lhs && doc_eq(fallback, other.fallback) && op == other.op &&
         rhs == other.rhs;
}

bool HasAtom::operator==(const HasAtom& other) const {
  return container == other.container && needle == other.needle;
}

bool CountAtom::operator==(const CountAtom& other) const {
  return target == other.target && op == other.op && number == other.number;
}

bool RuleAst::operator==(const RuleAst& other) const {
  return id == other.id && action_kind == other.action_kind && detects == other.detects &&
         expr_eq(condition, other.condition) &&
         feedback_template == other.feedback_template &&
         suggestion_template == other.suggestion_template;
}

bool expr_uses_ask(const ExprPtr& e) {
  if (!e) return false;
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AskAtom>) return true;
        else if constexpr (std::is_same_v<T, AndExpr> || std::is_same_v<T, OrExpr>)
          return expr_uses_ask(node.lhs) || expr_uses_ask(node.rhs);
        else if constexpr (std::is_same_v<T, NotExpr>)
          return expr_uses_ask(node.operand);
        else
          return false;
      },
      *e);
}

namespace {

void collect_from_path(const PathExpr& p, std::vector<PathExpr>& out) {
  out.push_back(p);
  for (const auto& seg : p.segments)
    if (seg.kind == PathSegment::Kind::dynamic) collect_from_path(*seg.dynamic, out);
}

void collect_from_value(const Value& v, std::vector<PathExpr>& out) {
  if (v.kind == Value::Kind::path) collect_from_path(v.path, out);
}

}  // namespace

void collect_paths(const ExprPtr& e, std::vector<PathExpr>& out) {
  if (!e) return;
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AndExpr> || std::is_same_v<T, OrExpr>) {
          collect_paths(node.lhs, out);
          collect_paths(node.rhs, out);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          collect_paths(node.operand, out);
        } else if constexpr (std::is_same_v<T, CompareAtom>) {
          collect_from_path(node.lhs, out);
          collect_from_value(node.rhs, out);
        } else if constexpr (std::is_same_v<T, CoalesceAtom>) {
          collect_from_path(node.lhs, out);
          collect_from_value(node.rhs, out);
        } else if constexpr (std::is_same_v<T, HasAtom>) {
          collect_from_path(node.container, out);
          collect_from_value(node.needle, out);
        } else if constexpr (std::is_same_v<T, CountAtom>) {
          collect_from_path(node.target, out);
        }
      },
      *e);
}

}  // namespace walign::ruledsl
