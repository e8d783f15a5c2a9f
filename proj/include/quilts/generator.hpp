#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/error.hpp"
#include "quilts/graph.hpp"
#include "quilts/quilt_layout.hpp"
#include "quilts/random.hpp"
#include "quilts/treatment.hpp"

namespace quilts {

struct RequiredCounts {
  std::size_t proper = 0;
  std::size_t skip = 0;
  friend bool operator==(const RequiredCounts&, const RequiredCounts&) = default;
};

// Both counts round half away from zero.
inline RequiredCounts required_link_counts(const TreatmentSpec& spec, std::size_t possible) {
  RequiredCounts c;
  c.proper = static_cast<std::size_t>(std::llround(spec.linkDensity * static_cast<double>(possible)));
  c.skip = static_cast<std::size_t>(std::llround(spec.skipDensity * static_cast<double>(c.proper)));
  return c;
}

// Generate stage: uniform layer per node (re-rolled while any layer is
// empty), then exactly the required number of proper and skip links, each
// drawn uniformly without replacement from its candidate pairs.
inline LayeredGraph generate(const TreatmentSpec& spec, std::uint64_t seed) {
  if (spec.layers < 2) throw Error(Errc::NoProperLinksPossible, "a graph needs at least two layers: " + describe(spec));
  check_spec(spec);
  Rng rng(derive_seed(seed, 0x6c61796572ULL));
  const auto N = spec.nodes;
  const int L = spec.layers;

  std::vector<int> layerOf(N);
  std::vector<std::size_t> sizes;
  for (;;) {
    sizes.assign(static_cast<std::size_t>(L), 0);
    for (auto& l : layerOf) {
      l = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(L)));
      ++sizes[static_cast<std::size_t>(l - 1)];
    }
    if (std::find(sizes.begin(), sizes.end(), 0) == sizes.end()) break;
  }

  const auto counts = required_link_counts(spec, possible_proper_links(sizes));

  std::vector<Link> properPool, skipPool;
  for (NodeId u = 0; u < N; ++u) {
    for (NodeId v = 0; v < N; ++v) {
      if (u == v) continue;
      (layerOf[v] == layerOf[u] + 1 ? properPool : skipPool).push_back({u, v});
    }
  }
  if (counts.skip > skipPool.size())
    throw Error(Errc::InfeasibleCounts, std::to_string(counts.skip) + " skip links requested but only " +
                                            std::to_string(skipPool.size()) + " non-proper pairs exist");

  auto links = rng.sample(properPool, counts.proper);
  const auto skips = rng.sample(skipPool, counts.skip);
  links.insert(links.end(), skips.begin(), skips.end());
  return LayeredGraph::checked(L, std::move(layerOf), std::move(links));
}

struct Path {
  std::vector<NodeId> nodes;

  std::size_t link_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::vector<Link> links() const {
    std::vector<Link> out;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) out.push_back({nodes[i], nodes[i + 1]});
    return out;
  }
  friend bool operator==(const Path&, const Path&) = default;
};

namespace detail {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max() / 4;

// Lower bounds on the number of links still needed to reach `target`:
// `any[v]` ignoring the skip rule, `withSkip[v]` when a skip is still owed.
struct DistanceBounds {
  std::vector<std::size_t> any;
  std::vector<std::size_t> withSkip;
};

inline DistanceBounds distance_bounds(const LayeredGraph& g, NodeId target) {
  const auto n = g.node_count();
  DistanceBounds d{std::vector<std::size_t>(n, kUnreachable), std::vector<std::size_t>(n, kUnreachable)};
  // Reverse BFS over (node, skip still owed) states.
  std::vector<std::pair<NodeId, bool>> frontier{{target, false}};
  d.any[target] = 0;
  auto dist = [&](NodeId v, bool owed) -> std::size_t& { return owed ? d.withSkip[v] : d.any[v]; };
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const auto [w, owedAtW] = frontier[head];
    const auto next = dist(w, owedAtW) + 1;
    for (auto u : g.in_neighbors(w)) {
      const bool skip = !is_proper(g, {u, w});
      // State (u, owed) reaches (w, owed && !skip).
      for (bool owed : {false, true}) {
        if ((owed && !skip) != owedAtW) continue;
        auto& du = dist(u, owed);
        if (du == kUnreachable) {
          du = next;
          frontier.emplace_back(u, owed);
        }
      }
    }
  }
  return d;
}

struct PathSearch {
  const LayeredGraph& g;
  const PathConstraints& c;
  std::size_t limit;
  DistanceBounds bounds;
  std::vector<char> onPath;
  std::vector<NodeId> stack;
  std::vector<Path> found;

  void run() {
    if (limit == 0 || c.source == c.destination || !g.contains(c.source) || !g.contains(c.destination)) return;
    onPath.assign(g.node_count(), 0);
    stack = {c.source};
    onPath[c.source] = 1;
    visit(c.source, false);
  }

  // Returns false once the limit is reached.
  bool visit(NodeId node, bool usedSkip) {
    const auto depth = stack.size() - 1;
    if (node == c.destination) {
      if (depth >= c.minLinks && (usedSkip || !c.requireSkip)) {
        found.push_back({stack});
        return found.size() < limit;
      }
      return true;
    }
    for (auto w : g.out_neighbors(node)) {
      if (onPath[w]) continue;
      const bool skip = usedSkip || !is_proper(g, {node, w});
      const auto bound = (c.requireSkip && !skip) ? bounds.withSkip[w] : bounds.any[w];
      if (depth + 1 + bound > c.maxLinks) continue;
      onPath[w] = 1;
      stack.push_back(w);
      const bool more = visit(w, skip);
      stack.pop_back();
      onPath[w] = 0;
      if (!more) return false;
    }
    return true;
  }
};

}  // namespace detail

// Simple directed source->destination paths whose link count lies in
// [minLinks, maxLinks] (with a skip link when required), in DFS order over
// ascending neighbor ids. Exhaustive up to `limit`; branches are cut only
// when a shortest-distance lower bound proves they cannot finish in range.
inline std::vector<Path> good_paths(const LayeredGraph& g, const PathConstraints& c,
                                    std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  detail::PathSearch search{g, c, limit, {}, {}, {}, {}};
  if (g.contains(c.destination)) search.bounds = detail::distance_bounds(g, c.destination);
  search.run();
  return std::move(search.found);
}

inline bool has_good_path(const LayeredGraph& g, const PathConstraints& c) { return !good_paths(g, c, 1).empty(); }

enum class RejectReason { NoPath, PathTooShort, PathTooLong, NoSkipInPath, DoesNotFit };

constexpr std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NoPath: return "NoPath";
    case RejectReason::PathTooShort: return "PathTooShort";
    case RejectReason::PathTooLong: return "PathTooLong";
    case RejectReason::NoSkipInPath: return "NoSkipInPath";
    case RejectReason::DoesNotFit: return "DoesNotFit";
  }
  return "?";
}

// Display used for the Quilt fit constraint.
struct DisplayFit {
  double width = 1920;
  double height = 1200;
  double cellSize = 8;
};

inline DisplayFit default_display_fit(Experiment e) {
  return e == Experiment::Exp1 ? DisplayFit{1920, 1200, 8} : DisplayFit{2560, 1600, 8};
}

struct ConstraintVerdict {
  bool accepted = false;
  NodeId source = 0;
  NodeId destination = 0;
  RejectReason reason = RejectReason::NoPath;
};

// Why no good path exists for `c`. Only meaningful when has_good_path() is false.
inline RejectReason explain_rejection(const LayeredGraph& g, const PathConstraints& c) {
  const auto bounds = detail::distance_bounds(g, c.destination);
  if (bounds.any[c.source] >= detail::kUnreachable) return RejectReason::NoPath;
  if (c.requireSkip) {
    auto relaxed = c;
    relaxed.requireSkip = false;
    if (has_good_path(g, relaxed)) return RejectReason::NoSkipInPath;
  }
  const auto shortest = c.requireSkip ? bounds.withSkip[c.source] : bounds.any[c.source];
  if (shortest > c.maxLinks) return RejectReason::PathTooLong;
  return RejectReason::PathTooShort;
}

// Test stage: draw a source in layer 1 and a destination in layer L, then
// require a good path under the experiment's regime and a Quilt that fits.
inline ConstraintVerdict test_constraints(const LayeredGraph& g, const TreatmentSpec& spec, std::uint64_t seed,
                                          const DisplayFit& fit) {
  Rng rng(derive_seed(seed, 0x656e6473ULL));
  ConstraintVerdict v;
  v.source = rng.pick(g.nodes_in_layer(1));
  v.destination = rng.pick(g.nodes_in_layer(g.layer_count()));
  const auto c = regime_constraints(spec.experiment, g.layer_count(), v.source, v.destination);
  if (!has_good_path(g, c)) {
    v.reason = explain_rejection(g, c);
    return v;
  }
  const auto quilt = layout_quilt(g, SkipDepiction::Mixed, fit.cellSize);
  if (!fits_display(quilt, {fit.width, fit.height})) {
    v.reason = RejectReason::DoesNotFit;
    return v;
  }
  v.accepted = true;
  return v;
}

struct GeneratedGraph {
  LayeredGraph graph;
  NodeId source = 0;
  NodeId destination = 0;
  std::size_t attempts = 0;
  std::map<RejectReason, std::size_t> rejections;
  std::uint64_t attemptSeed = 0;  // sub-seed that produced `graph`
};

inline constexpr std::size_t kDefaultMaxAttempts = 100000;

// Generate-and-test loop. Attempt i uses sub-seeds derived from (seed, i),
// so the result depends only on (spec, seed, fit).
inline GeneratedGraph generate_until_valid(const TreatmentSpec& spec, std::uint64_t seed,
                                           std::size_t maxAttempts = kDefaultMaxAttempts,
                                           const std::optional<DisplayFit>& fit = std::nullopt) {
  if (maxAttempts < 1) throw Error(Errc::BadInput, "maxAttempts must be at least 1");
  const auto display = fit.value_or(default_display_fit(spec.experiment));
  GeneratedGraph out;
  for (std::size_t attempt = 0; attempt < maxAttempts; ++attempt) {
    const auto sub = derive_seed(seed, attempt);
    auto g = generate(spec, sub);
    const auto verdict = test_constraints(g, spec, sub, display);
    out.attempts = attempt + 1;
    if (verdict.accepted) {
      out.graph = std::move(g);
      out.source = verdict.source;
      out.destination = verdict.destination;
      out.attemptSeed = sub;
      return out;
    }
    ++out.rejections[verdict.reason];
  }
  throw Error(Errc::ExhaustedAttempts,
              "no acceptable graph after " + std::to_string(maxAttempts) + " attempts for " + describe(spec));
}

}  // namespace quilts
