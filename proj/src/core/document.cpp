#include "core/document.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace walign {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_plain_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

void quote_into(std::string& out, const std::string& s) {
  out += '"';
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
}

// Minimal cursor over path text; shared by parse_path and the DSL lexer's
// bracketed-path handling is separate (the DSL re-tokenizes).
struct PathCursor {
  const std::string& text;
  size_t pos = 0;

  explicit PathCursor(const std::string& t) : text(t) {}
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("path error at offset " + std::to_string(pos) + ": " + msg +
                                " in \"" + text + "\"");
  }
};

PathExpr parse_path_at(PathCursor& cur);

std::string parse_quoted(PathCursor& cur) {
  // cur.peek() == '"'
  ++cur.pos;
  std::string out;
  while (!cur.done() && cur.peek() != '"') {
    char c = cur.text[cur.pos++];
    if (c == '\\') {
      if (cur.done()) cur.fail("unterminated escape");
      char e = cur.text[cur.pos++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: cur.fail(std::string("unknown escape \\") + e);
      }
    } else {
      out += c;
    }
  }
  if (cur.done()) cur.fail("unterminated string");
  ++cur.pos;  // closing quote
  return out;
}

PathExpr parse_path_at(PathCursor& cur) {
  cur.skip_ws();
  std::string root;
  while (!cur.done() && is_ident_char(cur.peek())) root += cur.text[cur.pos++];
  PathExpr path;
  if (root == "state")
    path.root = PathExpr::Root::state;
  else if (root == "action")
    path.root = PathExpr::Root::action;
  else
    cur.fail("path must start with 'state' or 'action', got '" + root + "'");

  while (!cur.done()) {
    if (cur.peek() == '.') {
      ++cur.pos;
      if (cur.done() || !is_ident_start(cur.peek())) cur.fail("expected key after '.'");
      std::string key;
      while (!cur.done() && is_ident_char(cur.peek())) key += cur.text[cur.pos++];
      path.segments.push_back(PathSegment::make_key(std::move(key)));
    } else if (cur.peek() == '[') {
      ++cur.pos;
      cur.skip_ws();
      if (cur.done()) cur.fail("unterminated '['");
      if (cur.peek() == '"') {
        path.segments.push_back(PathSegment::make_key(parse_quoted(cur)));
      } else if (cur.peek() == '-' || std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        std::string num;
        if (cur.peek() == '-') num += cur.text[cur.pos++];
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
          num += cur.text[cur.pos++];
        if (num.empty() || num == "-") cur.fail("expected index");
        path.segments.push_back(PathSegment::make_index(std::stoll(num)));
      } else if (is_ident_start(cur.peek())) {
        path.segments.push_back(PathSegment::make_dynamic(parse_path_at(cur)));
      } else {
        cur.fail("expected string, integer or path inside '[ ]'");
      }
      cur.skip_ws();
      if (cur.done() || cur.peek() != ']') cur.fail("expected ']'");
      ++cur.pos;
    } else {
      break;
    }
  }
  if (path.segments.empty()) cur.fail("path needs at least one segment");
  return path;
}

}  // namespace

PathSegment PathSegment::make_key(std::string k) {
  PathSegment s;
  s.kind = Kind::key;
  s.key = std::move(k);
  return s;
}

PathSegment PathSegment::make_index(std::int64_t i) {
  PathSegment s;
  s.kind = Kind::index;
  s.index = i;
  return s;
}

PathSegment PathSegment::make_dynamic(PathExpr p) {
  PathSegment s;
  s.kind = Kind::dynamic;
  s.dynamic = std::make_shared<const PathExpr>(std::move(p));
  return s;
}

bool PathSegment::operator==(const PathSegment& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::key: return key == other.key;
    case Kind::index: return index == other.index;
    case Kind::dynamic: return *dynamic == *other.dynamic;
  }
  return false;
}

bool PathExpr::operator==(const PathExpr& other) const {
  return root == other.root && segments == other.segments;
}

std::string PathExpr::to_string() const {
  std::string out = root == Root::state ? "state" : "action";
  for (const auto& seg : segments) {
    switch (seg.kind) {
      case PathSegment::Kind::key:
        if (is_plain_identifier(seg.key)) {
          out += '.';
          out += seg.key;
        } else {
          out += '[';
          quote_into(out, seg.key);
          out += ']';
        }
        break;
      case PathSegment::Kind::index:
        out += '[' + std::to_string(seg.index) + ']';
        break;
      case PathSegment::Kind::dynamic:
        out += '[' + seg.dynamic->to_string() + ']';
        break;
    }
  }
  return out;
}

PathExpr parse_path(const std::string& text) {
  PathCursor cur(text);
  PathExpr p = parse_path_at(cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail("trailing characters after path");
  return p;
}

const Document* resolve_path(const PathExpr& path, const Document* state,
                             const Document* action) {
  const Document* node = path.root == PathExpr::Root::state ? state : action;
  if (node == nullptr) return nullptr;
  for (const auto& seg : path.segments) {
    switch (seg.kind) {
      case PathSegment::Kind::key: {
        if (!node->is_object()) return nullptr;
        auto it = node->find(seg.key);
        if (it == node->end()) return nullptr;
        node = &*it;
        break;
      }
      case PathSegment::Kind::index: {
        if (!node->is_array()) return nullptr;
        if (seg.index < 0 || static_cast<size_t>(seg.index) >= node->size()) return nullptr;
        node = &(*node)[static_cast<size_t>(seg.index)];
        break;
      }
      case PathSegment::Kind::dynamic: {
        const Document* key_doc = resolve_path(*seg.dynamic, state, action);
        if (key_doc == nullptr || key_doc->is_null()) return nullptr;
        if (node->is_object()) {
          if (!key_doc->is_string()) return nullptr;
          auto it = node->find(key_doc->get<std::string>());
          if (it == node->end()) return nullptr;
          node = &*it;
        } else if (node->is_array()) {
          if (!key_doc->is_number_integer() && !key_doc->is_number_unsigned() &&
              !key_doc->is_number_float())
            return nullptr;
          double idx = key_doc->get<double>();
          if (idx < 0 || idx != std::floor(idx) ||
              static_cast<size_t>(idx) >= node->size())
            return nullptr;
          node = &(*node)[static_cast<size_t>(idx)];
        } else {
          return nullptr;
        }
        break;
      }
    }
  }
  return node;
}

Document doc_get(const Document& doc, const PathExpr& path) {
  const Document* found = resolve_path(path, &doc, &doc);
  return found ? *found : Document(nullptr);
}

Document doc_get(const Document& doc, const std::string& path) {
  return doc_get(doc, parse_path(path));
}

bool doc_eq(const Document& a, const Document& b) {
  if (a.is_number() && b.is_number()) return a.get<double>() == b.get<double>();
  if (a.type() != b.type()) {
    // Distinct nlohmann number kinds were handled above; anything else differs.
    return false;
  }
  switch (a.type()) {
    case nlohmann::json::value_t::array: {
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!doc_eq(a[i], b[i])) return false;
      return true;
    }
    case nlohmann::json::value_t::object: {
      if (a.size() != b.size()) return false;
      for (auto it = a.begin(); it != a.end(); ++it) {
        auto jt = b.find(it.key());
        if (jt == b.end() || !doc_eq(it.value(), *jt)) return false;
      }
      return true;
    }
    default:
      return a == b;
  }
}

bool doc_is_valid(const Document& d) {
  switch (d.type()) {
    case nlohmann::json::value_t::null:
    case nlohmann::json::value_t::boolean:
    case nlohmann::json::value_t::string:
    case nlohmann::json::value_t::number_integer:
    case nlohmann::json::value_t::number_unsigned:
      return true;
    case nlohmann::json::value_t::number_float:
      return std::isfinite(d.get<double>());
    case nlohmann::json::value_t::array:
      for (const auto& e : d)
        if (!doc_is_valid(e)) return false;
      return true;
    case nlohmann::json::value_t::object:
      for (const auto& [k, v] : d.items())
        if (!doc_is_valid(v)) return false;
      return true;
    default:
      return false;
  }
}

void ensure_valid_document(const Document& d, const std::string& context) {
  if (!doc_is_valid(d))
    throw std::invalid_argument(context + ": document contains a non-finite number or unsupported node");
}

Document doc_from_json(const std::string& text, const std::string& context) {
  Document d = Document::parse(text, nullptr, true);
  ensure_valid_document(d, context);
  return d;
}

std::string doc_render(const Document& d) {
  if (d.is_string()) return d.get<std::string>();
  if (d.is_null()) return "null";
  if (d.is_boolean()) return d.get<bool>() ? "true" : "false";
  if (d.is_number()) {
    double v = d.get<double>();
    if (std::floor(v) == v && std::abs(v) < 9.007199254740992e15) {
      return std::to_string(static_cast<std::int64_t>(v));
    }
    return Document(v).dump();
  }
  return d.dump();
}

}  // namespace walign
