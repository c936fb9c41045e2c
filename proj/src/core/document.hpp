#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace walign {

// Structured value shared by states, actions and rule-addressable fields.
// Scalars are text, finite numbers, booleans and null; containers are ordered
// lists and insertion-ordered maps. Backed by nlohmann's ordered JSON type so
// serialization round-trips bit-exactly for the admitted value set.
using Document = nlohmann::ordered_json;

struct PathExpr;

// One step through a Document: a map key, a list index, or a nested path whose
// resolved scalar names the key ("state.inventory[action.args.tool]").
struct PathSegment {
  enum class Kind { key, index, dynamic };

  Kind kind = Kind::key;
  std::string key;
  std::int64_t index = 0;
  std::shared_ptr<const PathExpr> dynamic;

  static PathSegment make_key(std::string k);
  static PathSegment make_index(std::int64_t i);
  static PathSegment make_dynamic(PathExpr p);

  bool operator==(const PathSegment& other) const;
};

struct PathExpr {
  enum class Root { state, action };

  Root root = Root::state;
  std::vector<PathSegment> segments;

  // Canonical text form: "state.inventory.log", "state.a.b[1]",
  // "state.inventory[\"iron ore\"]".
  std::string to_string() const;

  bool operator==(const PathExpr& other) const;
};

// Parses the path sub-grammar. Throws std::invalid_argument on malformed text.
PathExpr parse_path(const std::string& text);

// Resolves a path against the two roots the expression language knows about.
// Either root may be null. Returns nullptr when any segment is missing.
const Document* resolve_path(const PathExpr& path, const Document* state,
                             const Document* action);

// Addressed sub-document or JSON null when any segment is missing; the path's
// root keyword only anchors the walk, `doc` serves as both roots.
Document doc_get(const Document& doc, const PathExpr& path);
Document doc_get(const Document& doc, const std::string& path);

// Structural equality; numbers compare exactly after canonicalization to
// double, so 1 and 1.0 are equal.
bool doc_eq(const Document& a, const Document& b);

// True when the value stays within the admitted set (finite numbers, no
// binary/discarded nodes).
bool doc_is_valid(const Document& d);

// Throws std::invalid_argument when doc_is_valid fails.
void ensure_valid_document(const Document& d, const std::string& context);

// Parses JSON text and validates the result.
Document doc_from_json(const std::string& text, const std::string& context);

// Rendering used by rule templates and prompt bindings: strings bare, integral
// numbers without a trailing ".0", containers as compact JSON.
std::string doc_render(const Document& d);

}  // namespace walign
