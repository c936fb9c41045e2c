#include "core/types.hpp"

#include <stdexcept>

namespace walign {

std::string to_string(OutcomeSource s) {
  switch (s) {
    case OutcomeSource::llm: return "llm";
    case OutcomeSource::rule_override: return "rule-override";
    case OutcomeSource::environment: return "environment";
  }
  return "environment";
}

OutcomeSource outcome_source_from_string(const std::string& s) {
  if (s == "llm") return OutcomeSource::llm;
  if (s == "rule-override") return OutcomeSource::rule_override;
  if (s == "environment") return OutcomeSource::environment;
  throw std::invalid_argument("unknown outcome source: " + s);
}

std::string to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::task_success: return "task-success";
    case TerminalReason::agent_death: return "agent-death";
    case TerminalReason::step_budget: return "step-budget";
    case TerminalReason::replanning_budget: return "replanning-budget";
    case TerminalReason::time_budget: return "time-budget";
  }
  return "step-budget";
}

TerminalReason terminal_reason_from_string(const std::string& s) {
  if (s == "task-success") return TerminalReason::task_success;
  if (s == "agent-death") return TerminalReason::agent_death;
  if (s == "step-budget") return TerminalReason::step_budget;
  if (s == "replanning-budget") return TerminalReason::replanning_budget;
  if (s == "time-budget") return TerminalReason::time_budget;
  throw std::invalid_argument("unknown terminal reason: " + s);
}

PredictedOutcome PredictedOutcome::success(Document state_info, OutcomeSource source,
                                           std::string feedback) {
  PredictedOutcome o;
  o.action_result = true;
  o.state_info = std::move(state_info);
  o.feedback = std::move(feedback);
  o.suggestion.clear();  // success implies an empty suggestion
  o.source = source;
  return o;
}

PredictedOutcome PredictedOutcome::failure(Document state_info, OutcomeSource source,
                                           std::string feedback, std::string suggestion) {
  PredictedOutcome o;
  o.action_result = false;
  o.state_info = std::move(state_info);
  o.feedback = std::move(feedback);
  o.suggestion = std::move(suggestion);
  o.source = source;
  return o;
}

Document to_doc(const PredictedOutcome& o) {
  Document d = Document::object();
  d["action_result"] = o.action_result;
  d["state_info"] = o.state_info;
  d["feedback"] = o.feedback;
  d["suggestion"] = o.suggestion;
  d["source"] = to_string(o.source);
  return d;
}

Document to_doc(const State& s) {
  Document d = Document::object();
  d["payload"] = s.payload;
  d["step_index"] = s.step_index;
  return d;
}

Document to_doc(const Action& a) {
  Document d = Document::object();
  d["name"] = a.name;
  d["args"] = a.args;
  return d;
}

Document to_doc(const Transition& t) {
  Document d = Document::object();
  d["state_before"] = to_doc(t.state_before);
  d["action"] = to_doc(t.action);
  d["real_outcome"] = to_doc(t.real_outcome);
  if (t.predicted_outcome)
    d["predicted_outcome"] = to_doc(*t.predicted_outcome);
  else
    d["predicted_outcome"] = nullptr;
  d["firing_rule_ids"] = t.firing_rule_ids;
  Document asks = Document::object();
  for (const auto& [q, a] : t.asks) asks[q] = a;
  d["asks"] = asks;
  return d;
}

PredictedOutcome predicted_outcome_from_doc(const Document& d) {
  PredictedOutcome o;
  o.action_result = d.at("action_result").get<bool>();
  o.state_info = d.at("state_info");
  o.feedback = d.at("feedback").get<std::string>();
  o.suggestion = d.at("suggestion").get<std::string>();
  o.source = outcome_source_from_string(d.at("source").get<std::string>());
  return o;
}

State state_from_doc(const Document& d) {
  State s;
  s.payload = d.at("payload");
  s.step_index = d.at("step_index").get<std::int64_t>();
  return s;
}

Action action_from_doc(const Document& d) {
  Action a;
  a.name = d.at("name").get<std::string>();
  a.args = d.at("args");
  return a;
}

Transition transition_from_doc(const Document& d) {
  Transition t;
  t.state_before = state_from_doc(d.at("state_before"));
  t.action = action_from_doc(d.at("action"));
  t.real_outcome = predicted_outcome_from_doc(d.at("real_outcome"));
  if (!d.at("predicted_outcome").is_null())
    t.predicted_outcome = predicted_outcome_from_doc(d.at("predicted_outcome"));
  t.firing_rule_ids = d.at("firing_rule_ids").get<std::vector<std::string>>();
  for (const auto& [q, a] : d.at("asks").items()) t.asks[q] = a.get<bool>();
  return t;
}

}  // namespace walign
