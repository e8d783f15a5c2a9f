#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/error.hpp"
#include "quilts/path_engine.hpp"
#include "quilts/schedule.hpp"

namespace quilts {

// Final outcome of a trial. Abandoned trials were given up by the client.
enum class TrialOutcome { Completed, TimedOut, Abandoned };

constexpr std::string_view to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::Completed: return "Completed";
    case TrialOutcome::TimedOut: return "TimedOut";
    case TrialOutcome::Abandoned: return "Abandoned";
  }
  return "?";
}

inline TrialOutcome parse_trial_outcome(std::string_view s) {
  if (s == "Completed") return TrialOutcome::Completed;
  if (s == "TimedOut") return TrialOutcome::TimedOut;
  if (s == "Abandoned") return TrialOutcome::Abandoned;
  throw Error(Errc::BadInput, "unknown trial outcome '" + std::string(s) + "'");
}

// One logged click; `at` is server time relative to trial start.
struct ClickRecord {
  std::uint64_t sequence = 0;
  std::string element;
  std::int64_t atMs = 0;
  std::optional<double> clientTime;  // diagnostics only
  std::string result;                // ClickOutcome, plus ":Cause" when rejected
  friend bool operator==(const ClickRecord&, const ClickRecord&) = default;
};

struct TrialRecord {
  std::size_t participant = 0;
  std::size_t trialIndex = 0;
  int session = 0;
  Condition condition;
  TreatmentSpec spec;
  std::size_t treatment = 0;
  std::uint64_t seed = 0;
  bool practice = false;
  NodeId source = 0;
  NodeId destination = 0;
  TrialOutcome outcome = TrialOutcome::Abandoned;
  std::int64_t elapsedMs = 0;
  std::vector<ClickRecord> clicks;

  std::string id() const { return trial_id(participant, trialIndex); }
  int accuracy() const { return outcome == TrialOutcome::Completed ? 1 : 0; }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline std::string click_result_string(const ClickResult& r) {
  std::string s(to_string(r.outcome));
  if (r.cause != RejectCause::None) s += ":" + std::string(to_string(r.cause));
  return s;
}

inline std::vector<ClickLogEntry> click_log(const TrialRecord& r) {
  std::vector<ClickLogEntry> out;
  for (const auto& c : r.clicks) out.push_back({r.id(), c.sequence, c.element, Timestamp{c.atMs}, c.result});
  return out;
}

}  // namespace quilts
