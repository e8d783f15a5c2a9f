#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quilts {

enum class Errc {
  InvalidLink,
  InvalidGraph,
  InvalidSpec,
  InfeasibleCounts,
  NoProperLinksPossible,
  ExhaustedAttempts,
  DegenerateGraph,
  TooManyLayers,
  NotAPath,
  ClickAfterEnd,
  ShapeOutOfBounds,
  UnknownTrial,
  UnknownParticipant,
  NoMoreTrials,
  EmptyLog,
  BadInput,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidLink: return "InvalidLink";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InfeasibleCounts: return "InfeasibleCounts";
    case Errc::NoProperLinksPossible: return "NoProperLinksPossible";
    case Errc::ExhaustedAttempts: return "ExhaustedAttempts";
    case Errc::DegenerateGraph: return "DegenerateGraph";
    case Errc::TooManyLayers: return "TooManyLayers";
    case Errc::NotAPath: return "NotAPath";
    case Errc::ClickAfterEnd: return "ClickAfterEnd";
    case Errc::ShapeOutOfBounds: return "ShapeOutOfBounds";
    case Errc::UnknownTrial: return "UnknownTrial";
    case Errc::UnknownParticipant: return "UnknownParticipant";
    case Errc::NoMoreTrials: return "NoMoreTrials";
    case Errc::EmptyLog: return "EmptyLog";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (the CLI, the HTTP layer) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace quilts
