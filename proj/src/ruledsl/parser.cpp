#include "ruledsl/parser.hpp"

#include <cctype>
#include <cmath>

namespace walign::ruledsl {

namespace {

enum class Tok {
  ident,
  string,
  number,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  dot,
  comma,
  colon,
  coalesce,  // ??
  cmp_eq,
  cmp_ne,
  cmp_lt,
  cmp_le,
  cmp_gt,
  cmp_ge,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;   // ident/string payload
  double number = 0;  // number payload
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& current() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(current_.line, current_.column, msg);
  }

 private:
  void advance() {
    skip_ws_and_comments();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::end;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ident += consume();
      current_.kind = Tok::ident;
      current_.text = std::move(ident);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::string num;
      if (c == '-') num += consume();
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '.' || text_[pos_] == 'e' ||
                                     text_[pos_] == 'E' ||
                                     ((text_[pos_] == '+' || text_[pos_] == '-') &&
                                      (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
        num += consume();
      try {
        size_t used = 0;
        current_.number = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
      } catch (const std::exception&) {
        throw ParseError(line_, column_, "malformed number '" + num + "'");
      }
      current_.kind = Tok::number;
      current_.text = num;
      return;
    }
    if (c == '"') {
      consume();
      std::string out;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char ch = consume();
        if (ch == '\\') {
          if (pos_ >= text_.size()) throw ParseError(line_, column_, "unterminated escape");
          char e = consume();
          switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default:
              throw ParseError(line_, column_, std::string("unknown escape \\") + e);
          }
        } else {
          out += ch;
        }
      }
      if (pos_ >= text_.size()) throw ParseError(current_.line, current_.column, "unterminated string");
      consume();  // closing quote
      current_.kind = Tok::string;
      current_.text = std::move(out);
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (two('=', '=')) { consume(); consume(); current_.kind = Tok::cmp_eq; return; }
    if (two('!', '=')) { consume(); consume(); current_.kind = Tok::cmp_ne; return; }
    if (two('<', '=')) { consume(); consume(); current_.kind = Tok::cmp_le; return; }
    if (two('>', '=')) { consume(); consume(); current_.kind = Tok::cmp_ge; return; }
    if (two('?', '?')) { consume(); consume(); current_.kind = Tok::coalesce; return; }
    consume();
    switch (c) {
      case '{': current_.kind = Tok::lbrace; return;
      case '}': current_.kind = Tok::rbrace; return;
      case '(': current_.kind = Tok::lparen; return;
      case ')': current_.kind = Tok::rparen; return;
      case '[': current_.kind = Tok::lbracket; return;
      case ']': current_.kind = Tok::rbracket; return;
      case '.': current_.kind = Tok::dot; return;
      case ',': current_.kind = Tok::comma; return;
      case ':': current_.kind = Tok::colon; return;
      case '<': current_.kind = Tok::cmp_lt; return;
      case '>': current_.kind = Tok::cmp_gt; return;
      default:
        throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
    }
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') consume();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        consume();
      } else {
        break;
      }
    }
  }

  char consume() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  bool at_end() const { return lex_.current().kind == Tok::end; }

  void expect_end(const std::string& what) {
    if (!at_end()) lex_.fail("trailing content after " + what);
  }

  RuleAst parse_rule_block() {
    expect_keyword("rule");
    RuleAst rule;
    rule.id = expect_ident("rule id");
    expect_keyword("on");
    rule.action_kind = expect_ident("action kind");
    expect_keyword("detects");
    std::string detects = expect_ident("'failure' or 'success'");
    if (detects == "failure")
      rule.detects = Detects::failure;
    else if (detects == "success")
      rule.detects = Detects::success;
    else
      lex_.fail("expected 'failure' or 'success', got '" + detects + "'");
    expect(Tok::lbrace, "'{'");
    expect_keyword("when");
    expect(Tok::colon, "':'");
    rule.condition = parse_expr();
    expect_keyword("feedback");
    expect(Tok::colon, "':'");
    rule.feedback_template = expect_string("feedback text");
    expect_keyword("suggestion");
    expect(Tok::colon, "':'");
    rule.suggestion_template = expect_string("suggestion text");
    expect(Tok::rbrace, "'}'");
    return rule;
  }

  ExprPtr parse_expr() { return parse_or(); }

 private:
  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (is_keyword("or")) {
      lex_.take();
      ExprPtr rhs = parse_and();
      lhs = std::make_shared<const Expr>(OrExpr{std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    while (is_keyword("and")) {
      lex_.take();
      ExprPtr rhs = parse_unary();
      lhs = std::make_shared<const Expr>(AndExpr{std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (is_keyword("not")) {
      lex_.take();
      return std::make_shared<const Expr>(NotExpr{parse_unary()});
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = lex_.current();
    if (t.kind == Tok::lparen) {
      lex_.take();
      ExprPtr inner = parse_expr();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (t.kind == Tok::ident && t.text == "has") return parse_has();
    if (t.kind == Tok::ident && t.text == "count") return parse_count();
    if (t.kind == Tok::ident && t.text == "ask") return parse_ask();
    if (t.kind == Tok::ident && (t.text == "state" || t.text == "action"))
      return parse_path_atom();
    if (t.kind == Tok::rbrace || (t.kind == Tok::ident && t.text == "feedback"))
      lex_.fail("empty condition");
    lex_.fail("expected an atom ('has', 'count', 'ask', or a state/action path)");
  }

  ExprPtr parse_has() {
    lex_.take();  // has
    expect(Tok::lparen, "'('");
    PathExpr container = parse_path_tokens();
    expect(Tok::comma, "','");
    Value needle;
    const Token& t = lex_.current();
    if (t.kind == Tok::string) {
      needle = Value::make_scalar(Document(lex_.take().text));
    } else if (t.kind == Tok::ident && (t.text == "state" || t.text == "action")) {
      needle = Value::make_path(parse_path_tokens());
    } else {
      lex_.fail("has() needle must be a path or a string literal");
    }
    expect(Tok::rparen, "')'");
    return std::make_shared<const Expr>(HasAtom{std::move(container), std::move(needle)});
  }

  ExprPtr parse_count() {
    lex_.take();  // count
    expect(Tok::lparen, "'('");
    PathExpr target = parse_path_tokens();
    expect(Tok::rparen, "')'");
    Cmp op = expect_cmp();
    const Token& t = lex_.current();
    if (t.kind != Tok::number) lex_.fail("count() compares against a number literal");
    double n = lex_.take().number;
    return std::make_shared<const Expr>(CountAtom{std::move(target), op, n});
  }

  ExprPtr parse_ask() {
    lex_.take();  // ask
    expect(Tok::lparen, "'('");
    std::string question = expect_string("question text");
    expect(Tok::rparen, "')'");
    return std::make_shared<const Expr>(AskAtom{std::move(question)});
  }

  ExprPtr parse_path_atom() {
    PathExpr lhs = parse_path_tokens();
    if (lex_.current().kind == Tok::coalesce) {
      lex_.take();
      Document fallback = expect_scalar("coalesce fallback");
      Cmp op = expect_cmp();
      Value rhs = parse_value();
      return std::make_shared<const Expr>(
          CoalesceAtom{std::move(lhs), std::move(fallback), op, std::move(rhs)});
    }
    Cmp op = expect_cmp();
    Value rhs = parse_value();
    return std::make_shared<const Expr>(CompareAtom{std::move(lhs), op, std::move(rhs)});
  }

  Value parse_value() {
    const Token& t = lex_.current();
    if (t.kind == Tok::ident && (t.text == "state" || t.text == "action"))
      return Value::make_path(parse_path_tokens());
    return Value::make_scalar(expect_scalar("comparison value"));
  }

  // Paths are re-assembled from the token stream; segment keys keep quoted
  // strings verbatim, identifiers stay as-is.
  PathExpr parse_path_tokens() {
    PathExpr path;
    Token root = lex_.take();
    if (root.kind != Tok::ident || (root.text != "state" && root.text != "action"))
      throw ParseError(root.line, root.column, "path must start with 'state' or 'action'");
    path.root = root.text == "state" ? PathExpr::Root::state : PathExpr::Root::action;
    for (;;) {
      const Token& t = lex_.current();
      if (t.kind == Tok::dot) {
        lex_.take();
        std::string key = expect_ident("key after '.'");
        path.segments.push_back(PathSegment::make_key(std::move(key)));
      } else if (t.kind == Tok::lbracket) {
        lex_.take();
        const Token& inner = lex_.current();
        if (inner.kind == Tok::string) {
          path.segments.push_back(PathSegment::make_key(lex_.take().text));
        } else if (inner.kind == Tok::number) {
          Token num = lex_.take();
          if (num.number != std::floor(num.number))
            throw ParseError(num.line, num.column, "list index must be an integer");
          path.segments.push_back(
              PathSegment::make_index(static_cast<std::int64_t>(num.number)));
        } else if (inner.kind == Tok::ident &&
                   (inner.text == "state" || inner.text == "action")) {
          path.segments.push_back(PathSegment::make_dynamic(parse_path_tokens()));
        } else {
          lex_.fail("expected string, integer or path inside '[ ]'");
        }
        expect(Tok::rbracket, "']'");
      } else {
        break;
      }
    }
    if (path.segments.empty()) lex_.fail("path needs at least one segment");
    return path;
  }

  Document expect_scalar(const std::string& what) {
    const Token& t = lex_.current();
    switch (t.kind) {
      case Tok::string: return Document(lex_.take().text);
      case Tok::number: return Document(lex_.take().number);
      case Tok::ident:
        if (t.text == "true") { lex_.take(); return Document(true); }
        if (t.text == "false") { lex_.take(); return Document(false); }
        if (t.text == "null") { lex_.take(); return Document(nullptr); }
        break;
      default: break;
    }
    lex_.fail("expected " + what + " (string, number, true, false or null)");
  }

  Cmp expect_cmp() {
    switch (lex_.current().kind) {
      case Tok::cmp_eq: lex_.take(); return Cmp::eq;
      case Tok::cmp_ne: lex_.take(); return Cmp::ne;
      case Tok::cmp_lt: lex_.take(); return Cmp::lt;
      case Tok::cmp_le: lex_.take(); return Cmp::le;
      case Tok::cmp_gt: lex_.take(); return Cmp::gt;
      case Tok::cmp_ge: lex_.take(); return Cmp::ge;
      default: lex_.fail("expected a comparison operator");
    }
  }

  void expect(Tok kind, const std::string& what) {
    if (lex_.current().kind != kind) lex_.fail("expected " + what);
    lex_.take();
  }

  void expect_keyword(const std::string& kw) {
    const Token& t = lex_.current();
    if (t.kind != Tok::ident || t.text != kw) lex_.fail("expected '" + kw + "'");
    lex_.take();
  }

  std::string expect_ident(const std::string& what) {
    const Token& t = lex_.current();
    if (t.kind != Tok::ident) lex_.fail("expected " + what);
    return lex_.take().text;
  }

  std::string expect_string(const std::string& what) {
    const Token& t = lex_.current();
    if (t.kind != Tok::string) lex_.fail("expected " + what);
    return lex_.take().text;
  }

  bool is_keyword(const std::string& kw) const {
    return lex_.current().kind == Tok::ident && lex_.current().text == kw;
  }

  Lexer lex_;
};

}  // namespace

RuleAst parse_rule(const std::string& text) {
  Parser p(text);
  RuleAst rule = p.parse_rule_block();
  p.expect_end("rule block");
  return rule;
}

std::vector<RuleAst> parse_rules(const std::string& text) {
  Parser p(text);
  std::vector<RuleAst> rules;
  while (!p.at_end()) rules.push_back(p.parse_rule_block());
  return rules;
}

ExprPtr parse_expr_text(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.parse_expr();
  p.expect_end("expression");
  return e;
}

}  // namespace walign::ruledsl
