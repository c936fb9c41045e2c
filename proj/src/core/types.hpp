#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/document.hpp"

namespace walign {

enum class OutcomeSource { llm, rule_override, environment };

std::string to_string(OutcomeSource s);
OutcomeSource outcome_source_from_string(const std::string& s);

// Two-stage world-model output: the binary action_result plus state details
// and the failure-explanation texts used by the planner.
struct PredictedOutcome {
  bool action_result = false;
  Document state_info = Document::object();
  std::string feedback;
  std::string suggestion;
  OutcomeSource source = OutcomeSource::environment;

  static PredictedOutcome success(Document state_info, OutcomeSource source,
                                  std::string feedback = "");
  static PredictedOutcome failure(Document state_info, OutcomeSource source,
                                  std::string feedback, std::string suggestion);
};

struct State {
  Document payload = Document::object();
  std::int64_t step_index = 0;
};

struct Action {
  std::string name;
  Document args = Document::object();
};

struct Transition {
  State state_before;
  Action action;
  PredictedOutcome real_outcome;                  // source == environment
  std::optional<PredictedOutcome> predicted_outcome;
  std::vector<std::string> firing_rule_ids;
  // Knowledge-query answers resolved while predicting this transition; kept in
  // the log so replays never need a backend.
  std::map<std::string, bool> asks;
};

enum class TerminalReason { task_success, agent_death, step_budget, replanning_budget, time_budget };

std::string to_string(TerminalReason r);
TerminalReason terminal_reason_from_string(const std::string& s);

struct Trajectory {
  std::string task_id;
  std::vector<Transition> transitions;
  TerminalReason terminal_reason = TerminalReason::step_budget;
};

// JSON round-trip for trajectory logs (line-delimited, one Transition per line).
Document to_doc(const PredictedOutcome& o);
Document to_doc(const State& s);
Document to_doc(const Action& a);
Document to_doc(const Transition& t);

PredictedOutcome predicted_outcome_from_doc(const Document& d);
State state_from_doc(const Document& d);
Action action_from_doc(const Document& d);
Transition transition_from_doc(const Document& d);

}  // namespace walign
