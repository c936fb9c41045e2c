#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "ruledsl/ast.hpp"

namespace walign::envsim {

struct ActionFieldSpec {
  std::string name;
  std::string type;  // "string" | "number" | "integer" | "map"
  bool required = true;
  bool nullable = false;
};

struct ActionKindSpec {
  std::string name;
  std::vector<ActionFieldSpec> fields;
};

struct TaskSpec {
  std::string task_id;
  std::string goal_text;
  ruledsl::ExprPtr goal;
  std::string difficulty_tier;
};

struct EnvironmentSpec {
  std::string name;
  std::string kind;  // dynamics family: "craftworld" | "houseworld"
  int schema_version = 1;
  std::vector<ActionKindSpec> action_kinds;
  Document recipe_data;             // dynamics tables from the fixture file
  Document initial_state_template;  // payload template
};

// Outcome of applying an action to a payload without committing it.
struct StepEffect {
  bool ok = false;
  std::string feedback;
  std::string suggestion;
  Document next_payload;  // equals the prior payload when ok == false
};

class Environment {
 public:
  static Environment load_file(const std::string& path);
  static Environment from_doc(const Document& doc, const std::string& origin);

  const EnvironmentSpec& spec() const { return spec_; }
  const std::vector<TaskSpec>& tasks() const { return tasks_; }
  const TaskSpec& task(const std::string& task_id) const;  // throws on unknown id
  bool has_task(const std::string& task_id) const;

  const ActionKindSpec* find_action_kind(const std::string& name) const;

  State initial_state(const TaskSpec& task, std::uint64_t seed) const;

  // Pure dynamics: validates the action shape, then consults the fixture
  // tables. Malformed actions fail with "malformed action..." feedback.
  StepEffect apply(const State& state, const Action& action) const;

  // Equals apply(...).ok without mutating anything; test oracle.
  bool ground_truth_check(const State& state, const Action& action) const;

  bool goal_satisfied(const TaskSpec& task, const State& state) const;

  // Human-readable action documentation for agent prompts.
  std::string action_catalog() const;

 private:
  EnvironmentSpec spec_;
  std::vector<TaskSpec> tasks_;
};

struct StepResult {
  PredictedOutcome outcome;  // source == environment
  State next;
  bool terminal = false;
};

// One in-flight episode; single owner, step() rejected after terminal.
class EpisodeHandle {
 public:
  EpisodeHandle(const Environment& env, const TaskSpec& task, std::uint64_t seed);

  const State& current() const { return state_; }
  std::uint64_t seed() const { return seed_; }
  bool terminal() const { return terminal_; }
  std::optional<TerminalReason> terminal_reason() const { return reason_; }
  const TaskSpec& task() const { return *task_; }

  StepResult step(const Action& action);  // throws std::logic_error when terminal

 private:
  const Environment* env_;
  const TaskSpec* task_;
  State state_;
  std::uint64_t seed_;
  bool terminal_ = false;
  std::optional<TerminalReason> reason_;
};

EpisodeHandle reset(const Environment& env, const std::string& task_id, std::uint64_t seed);

// Dynamics families (fixture-table driven); environment.cpp dispatches on kind.
StepEffect craftworld_apply(const Document& tables, const Document& payload,
                            const Action& action);
StepEffect houseworld_apply(const Document& tables, const Document& payload,
                            const Action& action);

}  // namespace walign::envsim
