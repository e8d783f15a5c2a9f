#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/error.hpp"
#include "quilts/random.hpp"
#include "quilts/treatment.hpp"

namespace quilts {

// A depiction as shown to participants: Exp1 compares the three Quilt
// skip-link styles, Exp2 compares node-link, matrix and (mixed) Quilt.
struct Condition {
  Depiction depiction = Depiction::Quilt;
  std::optional<SkipDepiction> style;

  std::string name() const {
    if (depiction == Depiction::Quilt && style) return "quilt-" + std::string(to_string(*style));
    return std::string(to_string(depiction));
  }
  friend auto operator<=>(const Condition&, const Condition&) = default;
};

inline Condition parse_condition(std::string_view s) {
  if (s.starts_with("quilt-")) return {Depiction::Quilt, parse_skip_depiction(s.substr(6))};
  return {parse_depiction(s), std::nullopt};
}

inline std::array<Condition, 3> experiment_conditions(Experiment e) {
  if (e == Experiment::Exp1)
    return {{{Depiction::Quilt, SkipDepiction::ColorOnly},
             {Depiction::Quilt, SkipDepiction::Mixed},
             {Depiction::Quilt, SkipDepiction::TextOnly}}};
  return {{{Depiction::NodeLink, std::nullopt},
           {Depiction::CenteredMatrix, std::nullopt},
           {Depiction::Quilt, SkipDepiction::Mixed}}};
}

inline int session_count(Experiment e) { return e == Experiment::Exp1 ? 2 : 1; }

// The 6 orders of {0,1,2} in lexicographic order.
inline const std::array<std::array<int, 3>, 6>& depiction_permutations() {
  static const std::array<std::array<int, 3>, 6> p{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return p;
}

// Cyclic Latin square: row r, column c holds (r + c) mod n.
inline std::vector<std::vector<std::size_t>> latin_square(std::size_t n) {
  std::vector<std::vector<std::size_t>> sq(n, std::vector<std::size_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sq[r][c] = (r + c) % n;
  return sq;
}

struct ScheduleCell {
  std::size_t index = 0;  // position in the participant's list
  int session = 0;
  Condition condition;
  TreatmentSpec spec;
  std::size_t treatment = 0;  // index into treatment_grid()
  std::uint64_t seed = 0;
  bool practice = false;
  friend bool operator==(const ScheduleCell&, const ScheduleCell&) = default;
};

struct ParticipantSchedule {
  std::size_t participant = 0;
  std::size_t permutation = 0;  // index into depiction_permutations()
  std::vector<ScheduleCell> cells;
};

struct Schedule {
  Experiment experiment = Experiment::Exp1;
  std::uint64_t seed = 0;
  std::size_t practicePerBlock = 0;
  std::vector<ParticipantSchedule> participants;
};

// Stimulus seed for one (session, condition, treatment) cell. Participants
// share stimuli; only their order differs.
inline std::uint64_t cell_seed(std::uint64_t scheduleSeed, int session, int condition, std::size_t treatment,
                               bool practice = false) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(practice) << 40) |
                               (static_cast<std::uint64_t>(session) << 32) |
                               (static_cast<std::uint64_t>(condition) << 24) | treatment;
  return derive_seed(scheduleSeed, stream);
}

// Participant p uses depiction order p mod 6 in every session. Inside a
// block, treatments follow Latin-square row (6p + 3*session + d) mod n, so
// rows rotate across participants, sessions and blocks. Optional practice
// trials precede each block and are flagged.
inline Schedule build_schedule(Experiment e, std::size_t participants, std::uint64_t seed,
                               std::size_t practicePerBlock = 0) {
  if (participants < 1) throw Error(Errc::BadInput, "need at least one participant");
  Schedule s{e, seed, practicePerBlock, {}};
  const auto grid = treatment_grid(e);
  const auto n = grid.size();
  const auto square = latin_square(n);
  const auto conditions = experiment_conditions(e);

  for (std::size_t p = 0; p < participants; ++p) {
    ParticipantSchedule ps{p, p % 6, {}};
    const auto& perm = depiction_permutations()[ps.permutation];
    for (int session = 0; session < session_count(e); ++session) {
      for (int d = 0; d < 3; ++d) {
        const int c = perm[static_cast<std::size_t>(d)];
        for (std::size_t k = 0; k < practicePerBlock; ++k) {
          const auto t = (k * 7 + static_cast<std::size_t>(c)) % n;
          ps.cells.push_back({ps.cells.size(), session, conditions[static_cast<std::size_t>(c)], grid[t], t,
                              cell_seed(seed, session, c, k, true), true});
        }
        const auto& row = square[(p * 6 + static_cast<std::size_t>(session) * 3 + static_cast<std::size_t>(d)) % n];
        for (auto t : row)
          ps.cells.push_back({ps.cells.size(), session, conditions[static_cast<std::size_t>(c)], grid[t], t,
                              cell_seed(seed, session, c, t), false});
      }
    }
    s.participants.push_back(std::move(ps));
  }
  return s;
}

inline std::string trial_id(std::size_t participant, std::size_t index) {
  return "p" + std::to_string(participant) + "-t" + std::to_string(index);
}

}  // namespace quilts
