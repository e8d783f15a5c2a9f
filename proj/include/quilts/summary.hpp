#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quilts/error.hpp"
#include "quilts/record.hpp"

namespace quilts {

struct SummaryRow {
  std::string factor;  // "depiction" or "depiction x nodes"
  std::string level;   // "quilt-mixed" or "quilt-mixed|50"
  std::size_t n = 0;   // participants contributing
  double meanTimeS = 0;
  double seTimeS = 0;
  double meanAccuracy = 0;
  double seAccuracy = 0;
};

// Time charged to a trial: elapsed for finished trials, the full four
// minutes for a timeout.
inline double trial_time_seconds(const TrialRecord& r) {
  const auto ms = r.outcome == TrialOutcome::TimedOut ? kTrialTimeout.count() : r.elapsedMs;
  return static_cast<double>(ms) / 1000.0;
}

struct MeanSe {
  double mean = 0;
  double se = 0;
};

// Mean and standard error (sample stddev / sqrt n); SE is 0 for n = 1.
inline MeanSe mean_se(std::span<const double> xs) {
  if (xs.empty()) return {};
  const double n = static_cast<double>(xs.size());
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1)) / std::sqrt(n)};
}

namespace summary_detail {

inline std::string pct(double d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d", static_cast<int>(std::lround(d * 100)));
  return buf;
}

using Factor = std::pair<std::string, std::function<std::string(const TrialRecord&)>>;

inline const std::vector<Factor>& factors() {
  static const std::vector<Factor> f{
      {"depiction", [](const TrialRecord& r) { return r.condition.name(); }},
      {"nodes", [](const TrialRecord& r) { return std::to_string(r.spec.nodes); }},
      {"layers", [](const TrialRecord& r) { return std::to_string(r.spec.layers); }},
      {"links", [](const TrialRecord& r) { return pct(r.spec.linkDensity); }},
      {"skips", [](const TrialRecord& r) { return pct(r.spec.skipDensity); }},
  };
  return f;
}

}  // namespace summary_detail

// Per-factor and per-factor-pair summaries over non-practice records. Each
// participant's trials in a cell are averaged first; the row then reports
// mean and SE over those participant means.
inline std::vector<SummaryRow> summarize(std::span<const TrialRecord> log) {
  std::vector<const TrialRecord*> trials;
  for (const auto& r : log)
    if (!r.practice) trials.push_back(&r);
  if (trials.empty()) throw Error(Errc::EmptyLog, "no non-practice trial records");

  const auto& fs = summary_detail::factors();
  std::vector<std::pair<std::string, std::function<std::string(const TrialRecord&)>>> groupings;
  for (const auto& f : fs) groupings.push_back(f);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      auto a = fs[i].second, b = fs[j].second;
      groupings.push_back({fs[i].first + " x " + fs[j].first,
                           [a, b](const TrialRecord& r) { return a(r) + "|" + b(r); }});
    }

  std::vector<SummaryRow> rows;
  for (const auto& [name, key] : groupings) {
    // level -> participant -> (sum time, sum accuracy, count)
    struct Acc {
      double time = 0, accuracy = 0;
      std::size_t count = 0;
    };
    std::map<std::string, std::map<std::size_t, Acc>> cells;
    for (const auto* r : trials) {
      auto& a = cells[key(*r)][r->participant];
      a.time += trial_time_seconds(*r);
      a.accuracy += r->accuracy();
      ++a.count;
    }
    for (const auto& [level, byParticipant] : cells) {
      std::vector<double> times, accs;
      for (const auto& [p, a] : byParticipant) {
        times.push_back(a.time / static_cast<double>(a.count));
        accs.push_back(a.accuracy / static_cast<double>(a.count));
      }
      const auto t = mean_se(times), acc = mean_se(accs);
      rows.push_back({name, level, times.size(), t.mean, t.se, acc.mean, acc.se});
    }
  }
  return rows;
}

inline std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "factor,level,n,mean_time_s,se_time_s,mean_accuracy,se_accuracy\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%zu,%.6f,%.6f,%.6f,%.6f\n", r.n, r.meanTimeS, r.seTimeS, r.meanAccuracy,
                  r.seAccuracy);
    out += r.factor + "," + r.level + buf;
  }
  return out;
}

}  // namespace quilts
