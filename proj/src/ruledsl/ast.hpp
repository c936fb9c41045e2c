#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "core/document.hpp"

namespace walign::ruledsl {

enum class Cmp { eq, ne, lt, le, gt, ge };

std::string to_string(Cmp op);

// Right-hand side of a comparison or second argument of has(): a scalar
// literal or a path. Numeric literals are canonicalized to double at parse
// time so printing and reparsing yields an identical tree.
struct Value {
  enum class Kind { scalar, path };

  Kind kind = Kind::scalar;
  Document scalar;
  PathExpr path;

  static Value make_scalar(Document d);
  static Value make_path(PathExpr p);

  bool operator==(const Value& other) const;
};

struct AndExpr;
struct OrExpr;
struct NotExpr;
struct CompareAtom;
struct CoalesceAtom;
struct HasAtom;
struct CountAtom;
struct AskAtom;

using Expr = std::variant<AndExpr, OrExpr, NotExpr, CompareAtom, CoalesceAtom,
                          HasAtom, CountAtom, AskAtom>;
using ExprPtr = std::shared_ptr<const Expr>;

struct AndExpr {
  ExprPtr lhs, rhs;
  bool operator==(const AndExpr& other) const;
};

struct OrExpr {
  ExprPtr lhs, rhs;
  bool operator==(const OrExpr& other) const;
};

struct NotExpr {
  ExprPtr operand;
  bool operator==(const NotExpr& other) const;
};

// path CMP value
struct CompareAtom {
  PathExpr lhs;
  Cmp op = Cmp::eq;
  Value rhs;
  bool operator==(const CompareAtom& other) const;
};

// path ?? fallback CMP value — fallback substitutes for a missing or null path.
struct CoalesceAtom {
  PathExpr lhs;
  Document fallback;
  Cmp op = Cmp::eq;
  Value rhs;
  bool operator==(const CoalesceAtom& other) const;
};

// has(container, needle) — key membership for maps, element membership for lists.
struct HasAtom {
  PathExpr container;
  Value needle;  // path or string literal
  bool operator==(const HasAtom& other) const;
};

// count(path) CMP number
struct CountAtom {
  PathExpr target;
  Cmp op = Cmp::eq;
  double number = 0.0;
  bool operator==(const CountAtom& other) const;
};

// ask("question with {path} slots") — knowledge query answered by the backend.
struct AskAtom {
  std::string question;
  bool operator==(const AskAtom& other) const { return question == other.question; }
};

enum class Detects { failure, success };

std::string to_string(Detects d);

struct RuleAst {
  std::string id;
  std::string action_kind;
  Detects detects = Detects::failure;
  ExprPtr condition;
  std::string feedback_template;
  std::string suggestion_template;

  bool operator==(const RuleAst& other) const;
};

bool expr_eq(const ExprPtr& a, const ExprPtr& b);

// True when the expression contains an ask() atom anywhere.
bool expr_uses_ask(const ExprPtr& e);

// Collects every path mentioned by the expression (including dynamic keys).
void collect_paths(const ExprPtr& e, std::vector<PathExpr>& out);

}  // namespace walign::ruledsl
