#include "ruledsl/eval.hpp"

#include <cmath>

namespace walign::ruledsl {

namespace {

bool is_missing(const Document* d) { return d == nullptr || d->is_null(); }

bool compare_docs(const Document& a, Cmp op, const Document& b) {
  switch (op) {
    case Cmp::eq: return doc_eq(a, b);
    case Cmp::ne: return !doc_eq(a, b);
    default: break;
  }
  // Ordered comparisons are defined on numbers only; anything else does not fire.
  if (!a.is_number() || !b.is_number()) return false;
  double x = a.get<double>();
  double y = b.get<double>();
  switch (op) {
    case Cmp::lt: return x < y;
    case Cmp::le: return x <= y;
    case Cmp::gt: return x > y;
    case Cmp::ge: return x >= y;
    default: return false;
  }
}

struct Evaluator {
  const State& state;
  const Action& action;
  const AskFn& ask;

  const Document* resolve(const PathExpr& p) const {
    return resolve_path(p, &state.payload, &action.args);
  }

  // rhs == null / rhs != null compare presence; any other comparison with a
  // missing or null operand evaluates false so rules never fire on absent data.
  bool compare_with_null_rules(const Document* lhs, Cmp op, const Value& rhs) const {
    if (rhs.kind == Value::Kind::scalar && rhs.scalar.is_null()) {
      if (op == Cmp::eq) return is_missing(lhs);
      if (op == Cmp::ne) return !is_missing(lhs);
      return false;
    }
    if (is_missing(lhs)) return false;
    if (rhs.kind == Value::Kind::scalar) return compare_docs(*lhs, op, rhs.scalar);
    const Document* r = resolve(rhs.path);
    if (is_missing(r)) return false;
    return compare_docs(*lhs, op, *r);
  }

  bool eval(const ExprPtr& e) const {
    return std::visit(
        [this](const auto& node) -> bool {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, AndExpr>) {
            return eval(node.lhs) && eval(node.rhs);
          } else if constexpr (std::is_same_v<T, OrExpr>) {
            return eval(node.lhs) || eval(node.rhs);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return !eval(node.operand);
          } else if constexpr (std::is_same_v<T, CompareAtom>) {
            return compare_with_null_rules(resolve(node.lhs), node.op, node.rhs);
          } else if constexpr (std::is_same_v<T, CoalesceAtom>) {
            const Document* lhs = resolve(node.lhs);
            const Document* effective = is_missing(lhs) ? &node.fallback : lhs;
            return compare_with_null_rules(effective, node.op, node.rhs);
          } else if constexpr (std::is_same_v<T, HasAtom>) {
            return eval_has(node);
          } else if constexpr (std::is_same_v<T, CountAtom>) {
            const Document* t = resolve(node.target);
            if (t == nullptr || (!t->is_array() && !t->is_object())) return false;
            return compare_docs(Document(static_cast<double>(t->size())), node.op,
                                Document(node.number));
          } else {
            std::string question = render_template(node.question, state, action);
            if (!ask) throw EvalError("ask() used without an oracle: " + question);
            return ask(question);
          }
        },
        *e);
  }

  bool eval_has(const HasAtom& node) const {
    const Document* container = resolve(node.container);
    if (is_missing(container)) return false;
    Document needle;
    if (node.needle.kind == Value::Kind::scalar) {
      needle = node.needle.scalar;
    } else {
      const Document* n = resolve(node.needle.path);
      if (is_missing(n)) return false;
      needle = *n;
    }
    if (container->is_object()) {
      if (!needle.is_string()) return false;
      return container->contains(needle.get<std::string>());
    }
    if (container->is_array()) {
      for (const auto& elem : *container)
        if (doc_eq(elem, needle)) return true;
      return false;
    }
    return false;
  }
};

}  // namespace

std::string render_template(const std::string& tmpl, const State& state,
                            const Action& action) {
  std::string out;
  out.reserve(tmpl.size());
  for (size_t i = 0; i < tmpl.size();) {
    char c = tmpl[i];
    if (c == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out += '{';
      i += 2;
    } else if (c == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
      out += '}';
      i += 2;
    } else if (c == '{') {
      size_t close = tmpl.find('}', i + 1);
      if (close == std::string::npos) {
        out += tmpl.substr(i);
        break;
      }
      std::string path_text = tmpl.substr(i + 1, close - i - 1);
      try {
        PathExpr path = parse_path(path_text);
        const Document* found = resolve_path(path, &state.payload, &action.args);
        if (found == nullptr)
          out += "<missing:" + path.to_string() + ">";
        else
          out += doc_render(*found);
      } catch (const std::invalid_argument&) {
        out += "<missing:" + path_text + ">";
      }
      i = close + 1;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

Verdict evaluate_rule(const RuleAst& rule, const State& state, const Action& action,
                      const AskFn& ask) {
  Verdict v;
  v.applies = action.name == rule.action_kind;
  if (!v.applies) {
    // Non-matching action kinds count as success.
    v.fired = false;
    v.predicted_result = true;
    return v;
  }
  Evaluator ev{state, action, ask};
  v.fired = ev.eval(rule.condition);
  if (rule.detects == Detects::failure) {
    v.predicted_result = !v.fired;
  } else {
    v.predicted_result = v.fired ? true : false;
  }
  if (v.fired && rule.detects == Detects::failure) {
    v.feedback = render_template(rule.feedback_template, state, action);
    v.suggestion = render_template(rule.suggestion_template, state, action);
  }
  return v;
}

bool is_active(const RuleAst& rule, const State& state, const Action& action,
               const AskFn& ask) {
  Verdict v = evaluate_rule(rule, state, action, ask);
  if (!v.applies) return false;
  if (rule.detects == Detects::failure) return v.fired && !v.predicted_result;
  return v.fired && v.predicted_result;
}

bool evaluate_expr(const ExprPtr& expr, const State& state, const Action& action,
                   const AskFn& ask) {
  Evaluator ev{state, action, ask};
  return ev.eval(expr);
}

AskFn ask_table(std::map<std::string, bool> answers) {
  return [table = std::move(answers)](const std::string& question) -> bool {
    auto it = table.find(question);
    if (it == table.end()) throw EvalError("no answer on record for: " + question);
    return it->second;
  };
}

}  // namespace walign::ruledsl
