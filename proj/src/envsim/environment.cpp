#include "envsim/environment.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ruledsl/eval.hpp"
#include "ruledsl/parser.hpp"

namespace walign::envsim {

namespace {

bool field_matches(const ActionFieldSpec& field, const Document& value) {
  if (value.is_null()) return field.nullable;
  if (field.type == "string") return value.is_string();
  if (field.type == "number") return value.is_number();
  if (field.type == "integer")
    return value.is_number() && value.get<double>() == static_cast<double>(
                                    static_cast<std::int64_t>(value.get<double>()));
  if (field.type == "map") return value.is_object();
  return false;
}

// Schema check; returns an explanation or empty when well-formed.
std::string validate_action(const ActionKindSpec& kind, const Action& action) {
  if (!action.args.is_object()) return "args must be a map";
  for (const auto& field : kind.fields) {
    auto it = action.args.find(field.name);
    if (it == action.args.end()) {
      if (field.required) return "missing field '" + field.name + "'";
      continue;
    }
    if (!field_matches(field, *it))
      return "field '" + field.name + "' has the wrong type";
  }
  for (const auto& [key, value] : action.args.items()) {
    bool known = false;
    for (const auto& field : kind.fields)
      if (field.name == key) { known = true; break; }
    if (!known) return "unknown field '" + key + "'";
  }
  return "";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Environment Environment::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open environment file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_doc(doc_from_json(buf.str(), path), path);
}

Environment Environment::from_doc(const Document& doc, const std::string& origin) {
  Environment env;
  EnvironmentSpec& spec = env.spec_;
  try {
    spec.name = doc.at("name").get<std::string>();
    spec.kind = doc.at("kind").get<std::string>();
    spec.schema_version = doc.at("schema_version").get<int>();
    spec.recipe_data = doc.at("dynamics");
    spec.initial_state_template = doc.at("initial_state");
    for (const auto& kind_doc : doc.at("action_kinds")) {
      ActionKindSpec kind;
      kind.name = kind_doc.at("name").get<std::string>();
      for (const auto& field_doc : kind_doc.at("fields")) {
        ActionFieldSpec field;
        field.name = field_doc.at("name").get<std::string>();
        field.type = field_doc.at("type").get<std::string>();
        field.required = field_doc.value("required", true);
        field.nullable = field_doc.value("nullable", false);
        kind.fields.push_back(std::move(field));
      }
      spec.action_kinds.push_back(std::move(kind));
    }
  } catch (const Document::exception& e) {
    throw std::runtime_error(origin + ": bad environment fixture: " + e.what());
  }

  if (spec.kind != "craftworld" && spec.kind != "houseworld")
    throw std::runtime_error(origin + ": unknown dynamics kind '" + spec.kind + "'");

  // Every action kind the dynamics tables rely on must be declared.
  static const std::vector<std::string> craft_kinds = {
      "craft", "mine", "gather", "fight", "equip", "apply", "change_time"};
  static const std::vector<std::string> house_kinds = {
      "go_to", "open", "close", "take", "put", "clean", "heat", "cool", "use"};
  const auto& needed = spec.kind == "craftworld" ? craft_kinds : house_kinds;
  for (const auto& name : needed)
    if (env.find_action_kind(name) == nullptr)
      throw std::runtime_error(origin + ": dynamics reference undeclared action kind '" +
                               name + "'");

  if (doc.contains("tasks")) {
    for (const auto& task_doc : doc.at("tasks")) {
      TaskSpec task;
      task.task_id = task_doc.at("task_id").get<std::string>();
      task.goal_text = task_doc.at("goal").get<std::string>();
      task.difficulty_tier = task_doc.value("tier", "");
      try {
        task.goal = ruledsl::parse_expr_text(task.goal_text);
      } catch (const ruledsl::ParseError& e) {
        throw std::runtime_error(origin + ": task '" + task.task_id + "' goal: " + e.what());
      }
      if (ruledsl::expr_uses_ask(task.goal))
        throw std::runtime_error(origin + ": task '" + task.task_id +
                                 "' goal must not contain ask()");
      std::vector<PathExpr> paths;
      ruledsl::collect_paths(task.goal, paths);
      for (const auto& p : paths) {
        if (p.root != PathExpr::Root::state)
          throw std::runtime_error(origin + ": task '" + task.task_id +
                                   "' goal may only reference state paths");
        if (!p.segments.empty() && p.segments.front().kind == PathSegment::Kind::key &&
            !spec.initial_state_template.contains(p.segments.front().key))
          throw std::runtime_error(origin + ": task '" + task.task_id +
                                   "' goal references unknown state feature '" +
                                   p.segments.front().key + "'");
      }
      env.tasks_.push_back(std::move(task));
    }
  }
  return env;
}

const TaskSpec& Environment::task(const std::string& task_id) const {
  for (const auto& t : tasks_)
    if (t.task_id == task_id) return t;
  throw std::out_of_range("unknown task id: " + task_id);
}

bool Environment::has_task(const std::string& task_id) const {
  for (const auto& t : tasks_)
    if (t.task_id == task_id) return true;
  return false;
}

const ActionKindSpec* Environment::find_action_kind(const std::string& name) const {
  for (const auto& k : spec_.action_kinds)
    if (k.name == name) return &k;
  return nullptr;
}

State Environment::initial_state(const TaskSpec&, std::uint64_t seed) const {
  State state;
  state.payload = spec_.initial_state_template;
  state.step_index = 0;
  if (spec_.kind == "craftworld") {
    // Seed shapes cosmetic location stats only; dynamics stay identical.
    const Document& dyn = spec_.recipe_data;
    if (dyn.contains("biomes") && state.payload.contains("location_stats")) {
      const auto& biomes = dyn.at("biomes");
      if (!biomes.empty()) {
        auto& loc = state.payload["location_stats"];
        loc["biome"] = biomes[static_cast<size_t>(seed % biomes.size())];
        loc["rainfall"] = static_cast<double>(splitmix64(seed) % 10) / 10.0;
        loc["temperature"] = static_cast<double>(splitmix64(seed ^ 0xabcdULL) % 10) / 10.0;
      }
    }
  } else {
    // Seeded placement of the free item pool over the placeable locations.
    const Document& dyn = spec_.recipe_data;
    if (dyn.contains("seeded_items") && dyn.contains("placeable_locations")) {
      const auto& items = dyn.at("seeded_items");
      const auto& locations = dyn.at("placeable_locations");
      if (!locations.empty()) {
        std::mt19937_64 rng(seed);
        auto& placed = state.payload["items_in_locations"];
        for (const auto& item : items) {
          std::string loc = locations[static_cast<size_t>(rng() % locations.size())];
          if (!placed.contains(loc)) placed[loc] = Document::array();
          placed[loc].push_back(item);
        }
      }
    }
  }
  return state;
}

StepEffect Environment::apply(const State& state, const Action& action) const {
  StepEffect fail;
  fail.ok = false;
  fail.next_payload = state.payload;

  const ActionKindSpec* kind = find_action_kind(action.name);
  if (kind == nullptr) {
    fail.feedback = "malformed action: unknown action '" + action.name + "'";
    return fail;
  }
  std::string problem = validate_action(*kind, action);
  if (!problem.empty()) {
    fail.feedback = "malformed action: " + problem;
    return fail;
  }
  StepEffect effect = spec_.kind == "craftworld"
                          ? craftworld_apply(spec_.recipe_data, state.payload, action)
                          : houseworld_apply(spec_.recipe_data, state.payload, action);
  if (!effect.ok) effect.next_payload = state.payload;
  return effect;
}

bool Environment::ground_truth_check(const State& state, const Action& action) const {
  return apply(state, action).ok;
}

bool Environment::goal_satisfied(const TaskSpec& task, const State& state) const {
  Action no_action;
  return ruledsl::evaluate_expr(task.goal, state, no_action, nullptr);
}

std::string Environment::action_catalog() const {
  std::string out;
  for (const auto& kind : spec_.action_kinds) {
    out += kind.name + "(";
    bool first = true;
    for (const auto& field : kind.fields) {
      if (!first) out += ", ";
      first = false;
      out += field.name + ": " + field.type;
      if (field.nullable) out += "|null";
    }
    out += ")\n";
  }
  return out;
}

EpisodeHandle::EpisodeHandle(const Environment& env, const TaskSpec& task, std::uint64_t seed)
    : env_(&env), task_(&task), state_(env.initial_state(task, seed)), seed_(seed) {}

StepResult EpisodeHandle::step(const Action& action) {
  if (terminal_) throw std::logic_error("step() on a terminal episode");
  StepEffect effect = env_->apply(state_, action);
  StepResult result;
  result.next.payload = effect.next_payload;
  result.next.step_index = state_.step_index + 1;
  if (effect.ok)
    result.outcome = PredictedOutcome::success(effect.next_payload,
                                               OutcomeSource::environment, effect.feedback);
  else
    result.outcome = PredictedOutcome::failure(effect.next_payload, OutcomeSource::environment,
                                               effect.feedback, effect.suggestion);
  state_ = result.next;
  if (env_->goal_satisfied(*task_, state_)) {
    terminal_ = true;
    reason_ = TerminalReason::task_success;
  }
  result.terminal = terminal_;
  return result;
}

EpisodeHandle reset(const Environment& env, const std::string& task_id, std::uint64_t seed) {
  return EpisodeHandle(env, env.task(task_id), seed);
}

}  // namespace walign::envsim
