#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/error.hpp"
#include "quilts/graph.hpp"

namespace quilts {

enum class Experiment { Exp1, Exp2 };

constexpr std::string_view to_string(Experiment e) { return e == Experiment::Exp1 ? "exp1" : "exp2"; }

inline Experiment parse_experiment(std::string_view s) {
  if (s == "exp1" || s == "Exp1" || s == "1") return Experiment::Exp1;
  if (s == "exp2" || s == "Exp2" || s == "2") return Experiment::Exp2;
  throw Error(Errc::BadInput, "unknown experiment '" + std::string(s) + "'");
}

// One cell of the factor grid.
struct TreatmentSpec {
  std::size_t nodes = 0;
  int layers = 0;
  double linkDensity = 0;  // fraction of possible proper links
  double skipDensity = 0;  // fraction of the proper-link count
  Experiment experiment = Experiment::Exp1;

  friend bool operator==(const TreatmentSpec&, const TreatmentSpec&) = default;
};

inline std::string describe(const TreatmentSpec& s) {
  auto pct = [](double d) { return std::to_string(static_cast<int>(d * 100 + 0.5)) + "%"; };
  return std::string(to_string(s.experiment)) + " N=" + std::to_string(s.nodes) + " L=" + std::to_string(s.layers) +
         " links=" + pct(s.linkDensity) + " skips=" + pct(s.skipDensity);
}

// Structural checks only; generate() reports L < 2 separately.
inline void check_spec(const TreatmentSpec& s) {
  if (s.layers < 1 || s.nodes < static_cast<std::size_t>(s.layers))
    throw Error(Errc::InvalidSpec, "need nodes >= layers >= 1: " + describe(s));
  if (!(s.linkDensity >= 0 && s.linkDensity <= 1)) throw Error(Errc::InvalidSpec, "link density outside [0,1]");
  if (!(s.skipDensity >= 0)) throw Error(Errc::InvalidSpec, "negative skip density");
}

struct PathConstraints {
  std::size_t minLinks = 1;
  std::size_t maxLinks = 1;
  bool requireSkip = false;
  NodeId source = 0;
  NodeId destination = 0;

  friend bool operator==(const PathConstraints&, const PathConstraints&) = default;
};

// Exp1: 3 <= links <= L-2 with at least one skip. Exp2: 3 <= links <= floor(1.5 L).
inline PathConstraints regime_constraints(Experiment e, int layers, NodeId source, NodeId destination) {
  PathConstraints c;
  c.minLinks = 3;
  c.source = source;
  c.destination = destination;
  if (e == Experiment::Exp1) {
    c.maxLinks = layers >= 2 ? static_cast<std::size_t>(layers - 2) : 0;
    c.requireSkip = true;
  } else {
    c.maxLinks = static_cast<std::size_t>(layers) * 3 / 2;
    c.requireSkip = false;
  }
  return c;
}

inline const std::vector<std::size_t>& node_levels() {
  static const std::vector<std::size_t> v{50, 100, 200};
  return v;
}

// Grid order: nodes, links, skips, layers (layers varies fastest).
inline std::vector<TreatmentSpec> treatment_grid(Experiment e) {
  const std::vector<double> links{0.25, 0.50};
  const std::vector<double> skips = e == Experiment::Exp1 ? std::vector<double>{0.25, 0.50} : std::vector<double>{0.0, 0.25};
  const std::vector<int> layers = e == Experiment::Exp1 ? std::vector<int>{5, 10, 15} : std::vector<int>{5, 15};
  std::vector<TreatmentSpec> grid;
  for (auto n : node_levels())
    for (auto d : links)
      for (auto s : skips)
        for (auto l : layers) grid.push_back({n, l, d, s, e});
  return grid;
}

}  // namespace quilts
