#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/error.hpp"
#include "quilts/graph.hpp"
#include "quilts/treatment.hpp"

namespace quilts {

// Milliseconds since an arbitrary epoch chosen by the caller.
using Timestamp = std::chrono::milliseconds;

inline constexpr Timestamp kTrialTimeout{240'000};

// true iff `path` is a simple source->destination path whose link count is
// in range and which contains a skip link when one is required. Throws
// NotAPath when the links do not chain from source to destination or name
// links absent from the graph.
inline bool is_good_path(const LayeredGraph& g, std::span<const Link> path, const PathConstraints& c) {
  if (path.empty()) throw Error(Errc::NotAPath, "empty link sequence");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.has_link(path[i]))
      throw Error(Errc::NotAPath, "link " + ElementId::link(path[i]).str() + " is not in the graph");
    if (i > 0 && path[i - 1].dst != path[i].src) throw Error(Errc::NotAPath, "links do not chain at position " + std::to_string(i));
  }
  if (path.front().src != c.source || path.back().dst != c.destination)
    throw Error(Errc::NotAPath, "sequence does not run from source to destination");

  std::vector<NodeId> nodes{path.front().src};
  for (const auto& l : path) nodes.push_back(l.dst);
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) return false;

  if (path.size() < c.minLinks || path.size() > c.maxLinks) return false;
  if (c.requireSkip && std::none_of(path.begin(), path.end(), [&](const Link& l) { return !is_proper(g, l); }))
    return false;
  return true;
}

enum class TrialStatus { Active, Completed, TimedOut };
enum class ClickOutcome { Extended, Backtracked, Rejected, Completed };
enum class RejectCause { None, UnknownElement, NotAdjacent, Ambiguous, NotSimple, Joined };

constexpr std::string_view to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Active: return "Active";
    case TrialStatus::Completed: return "Completed";
    case TrialStatus::TimedOut: return "TimedOut";
  }
  return "?";
}

constexpr std::string_view to_string(ClickOutcome o) {
  switch (o) {
    case ClickOutcome::Extended: return "Extended";
    case ClickOutcome::Backtracked: return "Backtracked";
    case ClickOutcome::Rejected: return "Rejected";
    case ClickOutcome::Completed: return "Completed";
  }
  return "?";
}

constexpr std::string_view to_string(RejectCause r) {
  switch (r) {
    case RejectCause::None: return "";
    case RejectCause::UnknownElement: return "UnknownElement";
    case RejectCause::NotAdjacent: return "NotAdjacent";
    case RejectCause::Ambiguous: return "Ambiguous";
    case RejectCause::NotSimple: return "NotSimple";
    case RejectCause::Joined: return "Joined";
  }
  return "?";
}

struct ClickResult {
  ClickOutcome outcome = ClickOutcome::Rejected;
  RejectCause cause = RejectCause::None;
  friend bool operator==(const ClickResult&, const ClickResult&) = default;
};

// Live state of one path-tracing trial.
//
// The forward fringe is a directed path starting at the source, the backward
// fringe a directed path ending at the destination (stored in path order).
// A fringe that holds only its anchor contributes nothing to the highlight
// set; otherwise all of its nodes and links are highlighted. Once the
// forward tip equals the backward head the fringes are joined; a joined
// configuration either completes the trial or must be backtracked.
class PathState {
 public:
  PathState(std::shared_ptr<const LayeredGraph> graph, PathConstraints constraints, Timestamp start)
      : graph_(std::move(graph)), constraints_(constraints), start_(start) {
    if (!graph_ || !graph_->contains(constraints_.source) || !graph_->contains(constraints_.destination))
      throw Error(Errc::BadInput, "path state needs a graph containing source and destination");
    forward_ = {constraints_.source};
    backward_ = {constraints_.destination};
  }

  const LayeredGraph& graph() const { return *graph_; }
  const PathConstraints& constraints() const { return constraints_; }
  const std::vector<NodeId>& forward() const { return forward_; }
  const std::vector<NodeId>& backward() const { return backward_; }
  const std::set<ElementId>& highlight() const { return highlight_; }
  TrialStatus status() const { return status_; }
  Timestamp start() const { return start_; }
  std::optional<Timestamp> elapsed() const { return elapsed_; }
  bool joined() const { return forward_.back() == backward_.front(); }

  // The joined source->destination path, when the fringes meet.
  std::optional<std::vector<Link>> joined_path() const {
    if (!joined()) return std::nullopt;
    std::vector<Link> links;
    for (std::size_t i = 0; i + 1 < forward_.size(); ++i) links.push_back({forward_[i], forward_[i + 1]});
    for (std::size_t i = 0; i + 1 < backward_.size(); ++i) links.push_back({backward_[i], backward_[i + 1]});
    return links;
  }

  // Times out an active trial once `now - start` reaches four minutes.
  PathState& tick(Timestamp now) {
    if (status_ == TrialStatus::Active && now - start_ >= kTrialTimeout) {
      status_ = TrialStatus::TimedOut;
      elapsed_ = now - start_;
    }
    return *this;
  }

  ClickResult click(std::string_view element, Timestamp at) {
    const auto id = ElementId::parse(element);
    if (!id) {
      ensure_active(at);
      return {ClickOutcome::Rejected, RejectCause::UnknownElement};
    }
    return click(*id, at);
  }

  ClickResult click(const ElementId& element, Timestamp at) {
    ensure_active(at);
    const auto& g = *graph_;
    if (element.is_node() ? !g.contains(element.node_id()) : !g.has_link(element.as_link()))
      return {ClickOutcome::Rejected, RejectCause::UnknownElement};

    if (highlight_.contains(element)) {
      backtrack(element);
      return {ClickOutcome::Backtracked, RejectCause::None};
    }
    if (joined()) return {ClickOutcome::Rejected, RejectCause::Joined};

    const auto cause = element.is_link() ? extend_by_link(element.as_link()) : extend_by_node(element.node_id());
    if (cause != RejectCause::None) return {ClickOutcome::Rejected, cause};

    rebuild_highlight();
    if (const auto path = joined_path(); path && is_good_path(g, *path, constraints_)) {
      status_ = TrialStatus::Completed;
      elapsed_ = at - start_;
      return {ClickOutcome::Completed, RejectCause::None};
    }
    return {ClickOutcome::Extended, RejectCause::None};
  }

  friend bool operator==(const PathState& a, const PathState& b) {
    return a.graph_ == b.graph_ && a.constraints_ == b.constraints_ && a.start_ == b.start_ &&
           a.forward_ == b.forward_ && a.backward_ == b.backward_ && a.highlight_ == b.highlight_ &&
           a.status_ == b.status_ && a.elapsed_ == b.elapsed_;
  }

  // Nodes and links of every non-trivial fringe.
  static std::set<ElementId> highlight_of(const std::vector<NodeId>& forward, const std::vector<NodeId>& backward) {
    std::set<ElementId> out;
    for (const auto* fringe : {&forward, &backward}) {
      if (fringe->size() < 2) continue;
      for (std::size_t i = 0; i < fringe->size(); ++i) {
        out.insert(ElementId::node((*fringe)[i]));
        if (i + 1 < fringe->size()) out.insert(ElementId::link({(*fringe)[i], (*fringe)[i + 1]}));
      }
    }
    return out;
  }

 private:
  void ensure_active(Timestamp at) {
    tick(at);
    if (status_ != TrialStatus::Active)
      throw Error(Errc::ClickAfterEnd, "trial is " + std::string(to_string(status_)));
  }

  static bool on_fringe(const std::vector<NodeId>& fringe, const ElementId& e) {
    if (fringe.size() < 2) return false;
    if (e.is_node()) return std::find(fringe.begin(), fringe.end(), e.node_id()) != fringe.end();
    for (std::size_t i = 0; i + 1 < fringe.size(); ++i)
      if (fringe[i] == e.a && fringe[i + 1] == e.b) return true;
    return false;
  }

  // Drops the element and everything beyond it on its fringe.
  void backtrack(const ElementId& e) {
    if (on_fringe(forward_, e)) {
      // Node at index i or link (i-1, i): keep [0, i).
      const NodeId cut = e.is_node() ? e.node_id() : e.b;
      const auto i = static_cast<std::size_t>(std::find(forward_.begin(), forward_.end(), cut) - forward_.begin());
      forward_.resize(std::max<std::size_t>(i, 1));
    } else {
      // Node at index j or link (j, j+1): keep (j, end).
      const NodeId cut = e.is_node() ? e.node_id() : e.a;
      const auto j = std::find(backward_.begin(), backward_.end(), cut);
      backward_.erase(backward_.begin(), std::min(j + 1, backward_.end() - 1));
    }
    rebuild_highlight();
  }

  bool in(const std::vector<NodeId>& v, NodeId n) const { return std::find(v.begin(), v.end(), n) != v.end(); }

  RejectCause extend_by_link(Link l) {
    const NodeId tip = forward_.back(), head = backward_.front();
    if (l.src == tip) {
      if (in(forward_, l.dst) || (in(backward_, l.dst) && l.dst != head)) return RejectCause::NotSimple;
      forward_.push_back(l.dst);
      return RejectCause::None;
    }
    if (l.dst == head) {
      if (in(backward_, l.src) || (in(forward_, l.src) && l.src != tip)) return RejectCause::NotSimple;
      backward_.insert(backward_.begin(), l.src);
      return RejectCause::None;
    }
    return RejectCause::NotAdjacent;
  }

  RejectCause extend_by_node(NodeId v) {
    const auto& g = *graph_;
    const NodeId tip = forward_.back(), head = backward_.front();
    const bool viaForward = g.has_link({tip, v}) && !in(forward_, v) && (!in(backward_, v) || v == head);
    const bool viaBackward = g.has_link({v, head}) && !in(backward_, v) && (!in(forward_, v) || v == tip);
    if (viaForward && viaBackward) return RejectCause::Ambiguous;
    if (viaForward) {
      forward_.push_back(v);
      return RejectCause::None;
    }
    if (viaBackward) {
      backward_.insert(backward_.begin(), v);
      return RejectCause::None;
    }
    return RejectCause::NotAdjacent;
  }

  void rebuild_highlight() { highlight_ = highlight_of(forward_, backward_); }

  std::shared_ptr<const LayeredGraph> graph_;
  PathConstraints constraints_;
  Timestamp start_;
  std::vector<NodeId> forward_;
  std::vector<NodeId> backward_;
  std::set<ElementId> highlight_;
  TrialStatus status_ = TrialStatus::Active;
  std::optional<Timestamp> elapsed_;
};

// One logged click. The element is kept verbatim so malformed ids replay
// to the same Rejected result.
struct ClickLogEntry {
  std::string trialId;
  std::uint64_t sequence = 0;
  std::string element;
  Timestamp at{0};
  std::string result;
  friend bool operator==(const ClickLogEntry&, const ClickLogEntry&) = default;
};

// Folds a click log over a fresh state. Clicks after the trial ended are
// ignored, matching the live service which refuses them.
inline PathState replay(std::shared_ptr<const LayeredGraph> graph, const PathConstraints& c, Timestamp start,
                        std::span<const ClickLogEntry> log) {
  PathState state(std::move(graph), c, start);
  for (const auto& entry : log) {
    if (state.tick(entry.at).status() != TrialStatus::Active) break;
    state.click(std::string_view(entry.element), entry.at);
  }
  return state;
}

}  // namespace quilts
