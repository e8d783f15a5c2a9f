#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "quilts/depict.hpp"
#include "quilts/error.hpp"
#include "quilts/generator.hpp"
#include "quilts/json_io.hpp"
#include "quilts/path_engine.hpp"
#include "quilts/record.hpp"
#include "quilts/schedule.hpp"

namespace quilts {

using Clock = std::function<Timestamp()>;

inline Clock steady_clock_ms() {
  return [] {
    return std::chrono::duration_cast<Timestamp>(std::chrono::steady_clock::now().time_since_epoch());
  };
}

struct ServiceConfig {
  std::optional<std::filesystem::path> logPath;  // JSONL, appended
  DepictOptions depict;
  std::size_t maxAttempts = kDefaultMaxAttempts;
  Clock clock;  // defaults to the steady clock
};

struct TrialView {
  std::string trialId;
  std::size_t participant = 0;
  ScheduleCell cell;
  NodeId source = 0;
  NodeId destination = 0;
  std::size_t remaining = 0;  // trials after this one
  std::shared_ptr<const LayoutBundle> bundle;
};

struct ClickResponse {
  std::string trialId;
  ClickResult result;
  std::vector<std::string> highlight;
  std::int64_t elapsedMs = 0;
  TrialStatus status = TrialStatus::Active;
};

// Stimulus for one (spec, seed): the accepted graph and its endpoints.
struct Stimulus {
  std::shared_ptr<const LayeredGraph> graph;
  NodeId source = 0;
  NodeId destination = 0;
};

inline Stimulus make_stimulus(const TreatmentSpec& spec, std::uint64_t seed,
                              std::size_t maxAttempts = kDefaultMaxAttempts) {
  auto gg = generate_until_valid(spec, seed, maxAttempts);
  return {std::make_shared<const LayeredGraph>(std::move(gg.graph)), gg.source, gg.destination};
}

// Replays a logged trial against its regenerated stimulus and reports the
// outcome the engine reaches: clicks are folded in order, then the clock
// is advanced to the recorded end.
inline TrialOutcome replay_outcome(const TrialRecord& r, std::shared_ptr<const LayeredGraph> graph) {
  const auto c = regime_constraints(r.spec.experiment, graph->layer_count(), r.source, r.destination);
  const auto log = click_log(r);
  auto state = replay(std::move(graph), c, Timestamp{0}, log);
  state.tick(Timestamp{r.elapsedMs});
  switch (state.status()) {
    case TrialStatus::Completed: return TrialOutcome::Completed;
    case TrialStatus::TimedOut: return TrialOutcome::TimedOut;
    case TrialStatus::Active: return TrialOutcome::Abandoned;
  }
  return TrialOutcome::Abandoned;
}

// Server side of the trial loop. Timing is server-authoritative: every
// click is stamped with the injected clock; client times are only logged.
//
// Thread safety: the participant/trial tables are guarded by one mutex,
// each trial's clicks by its own, and log appends by a third.
class TrialService {
 public:
  TrialService(Schedule schedule, ServiceConfig config = {})
      : schedule_(std::move(schedule)), config_(std::move(config)) {
    if (!config_.clock) config_.clock = steady_clock_ms();
    cursor_.assign(schedule_.participants.size(), 0);
    current_.assign(schedule_.participants.size(), nullptr);
  }

  const Schedule& schedule() const { return schedule_; }

  // The participant's current trial, or the following one once the
  // current trial has ended. Re-requesting an active trial returns it again.
  TrialView next(std::size_t participant) {
    std::lock_guard lock(mutex_);
    if (participant >= schedule_.participants.size())
      throw Error(Errc::UnknownParticipant, "participant " + std::to_string(participant) + " is not scheduled");
    const auto now = config_.clock();
    if (auto* t = current_[participant]) {
      std::lock_guard tl(t->mutex);
      if (!t->ended) {
        t->state->tick(now);
        if (t->state->status() == TrialStatus::Active) return view(*t);
        finish(*t, TrialOutcome::TimedOut, now);
      }
      ++cursor_[participant];
      current_[participant] = nullptr;
    }
    const auto& cells = schedule_.participants[participant].cells;
    if (cursor_[participant] >= cells.size())
      throw Error(Errc::NoMoreTrials, "participant " + std::to_string(participant) + " has finished");

    const auto& cell = cells[cursor_[participant]];
    auto trial = std::make_unique<Trial>();
    trial->participant = participant;
    trial->cell = cell;
    trial->id = trial_id(participant, cell.index);
    trial->stimulus = stimulus(cell.spec, cell.seed);
    trial->bundle = std::make_shared<const LayoutBundle>(
        depict(*trial->stimulus.graph, cell.condition, trial->stimulus.source, trial->stimulus.destination,
               config_.depict));
    const auto c = regime_constraints(cell.spec.experiment, trial->stimulus.graph->layer_count(),
                                      trial->stimulus.source, trial->stimulus.destination);
    trial->state.emplace(trial->stimulus.graph, c, now);
    auto* raw = trial.get();
    trials_[raw->id] = std::move(trial);
    current_[participant] = raw;
    return view(*raw);
  }

  ClickResponse click(const std::string& trialId, const std::string& element,
                      std::optional<double> clientTime = std::nullopt) {
    auto& t = find(trialId);
    std::lock_guard tl(t.mutex);
    if (t.ended) throw Error(Errc::ClickAfterEnd, "trial " + trialId + " is " + std::string(to_string(*t.outcome)));
    const auto now = config_.clock();
    if (t.state->tick(now).status() == TrialStatus::TimedOut) {
      finish(t, TrialOutcome::TimedOut, now);
      throw Error(Errc::ClickAfterEnd, "trial " + trialId + " is TimedOut");
    }
    const auto result = t.state->click(std::string_view(element), now);
    const auto at = (now - t.state->start()).count();
    t.clicks.push_back({t.clicks.size(), element, at, clientTime, click_result_string(result)});
    if (result.outcome == ClickOutcome::Completed) finish(t, TrialOutcome::Completed, now);

    ClickResponse r{trialId, result, {}, at, t.state->status()};
    for (const auto& id : t.state->highlight()) r.highlight.push_back(id.str());
    return r;
  }

  TrialRecord abandon(const std::string& trialId) {
    auto& t = find(trialId);
    std::lock_guard tl(t.mutex);
    if (t.ended) throw Error(Errc::ClickAfterEnd, "trial " + trialId + " is " + std::string(to_string(*t.outcome)));
    const auto now = config_.clock();
    const bool timedOut = t.state->tick(now).status() == TrialStatus::TimedOut;
    return finish(t, timedOut ? TrialOutcome::TimedOut : TrialOutcome::Abandoned, now);
  }

  // Outcome of an ended trial; nullopt while active.
  std::optional<TrialOutcome> outcome(const std::string& trialId) {
    auto& t = find(trialId);
    std::lock_guard tl(t.mutex);
    return t.outcome;
  }

  std::vector<TrialRecord> records() const {
    std::lock_guard lock(logMutex_);
    return records_;
  }

 private:
  struct Trial {
    std::mutex mutex;
    std::string id;
    std::size_t participant = 0;
    ScheduleCell cell;
    Stimulus stimulus;
    std::shared_ptr<const LayoutBundle> bundle;
    std::optional<PathState> state;
    std::vector<ClickRecord> clicks;
    bool ended = false;
    std::optional<TrialOutcome> outcome;
  };

  Trial& find(const std::string& trialId) {
    std::lock_guard lock(mutex_);
    const auto it = trials_.find(trialId);
    if (it == trials_.end()) throw Error(Errc::UnknownTrial, "no trial '" + trialId + "' has been served");
    return *it->second;
  }

  TrialView view(const Trial& t) const {
    const auto& cells = schedule_.participants[t.participant].cells;
    return {t.id, t.participant, t.cell, t.stimulus.source, t.stimulus.destination, cells.size() - t.cell.index - 1,
            t.bundle};
  }

  Stimulus stimulus(const TreatmentSpec& spec, std::uint64_t seed) {
    const auto key = describe(spec) + "#" + std::to_string(seed);
    auto it = stimuli_.find(key);
    if (it == stimuli_.end()) it = stimuli_.emplace(key, make_stimulus(spec, seed, config_.maxAttempts)).first;
    return it->second;
  }

  // Caller holds t.mutex.
  TrialRecord finish(Trial& t, TrialOutcome outcome, Timestamp now) {
    t.ended = true;
    t.outcome = outcome;
    TrialRecord r;
    r.participant = t.participant;
    r.trialIndex = t.cell.index;
    r.session = t.cell.session;
    r.condition = t.cell.condition;
    r.spec = t.cell.spec;
    r.treatment = t.cell.treatment;
    r.seed = t.cell.seed;
    r.practice = t.cell.practice;
    r.source = t.stimulus.source;
    r.destination = t.stimulus.destination;
    r.outcome = outcome;
    r.elapsedMs = outcome == TrialOutcome::TimedOut ? kTrialTimeout.count() : (now - t.state->start()).count();
    r.clicks = t.clicks;
    append(r);
    return r;
  }

  void append(const TrialRecord& r) {
    std::lock_guard lock(logMutex_);
    records_.push_back(r);
    if (config_.logPath) {
      std::ofstream out(*config_.logPath, std::ios::app | std::ios::binary);
      if (!out) throw Error(Errc::BadInput, "cannot append to " + config_.logPath->string());
      const auto line = to_jsonl(r);
      out.write(line.data(), static_cast<std::streamsize>(line.size()));
      out.flush();
    }
  }

  Schedule schedule_;
  ServiceConfig config_;
  std::mutex mutex_;
  std::vector<std::size_t> cursor_;
  std::vector<Trial*> current_;
  std::map<std::string, std::unique_ptr<Trial>> trials_;
  std::map<std::string, Stimulus> stimuli_;
  mutable std::mutex logMutex_;
  std::vector<TrialRecord> records_;
};

}  // namespace quilts
