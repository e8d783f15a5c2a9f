#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quilts/error.hpp"

namespace quilts {

using NodeId = std::uint32_t;

struct Link {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

enum class LinkKind { Proper, Skip };
enum class SkipDirection { None, Forward, SameLayer, Backward };

struct LinkClass {
  LinkKind kind = LinkKind::Proper;
  SkipDirection direction = SkipDirection::None;

  bool proper() const { return kind == LinkKind::Proper; }
  bool skip() const { return kind == LinkKind::Skip; }
  friend bool operator==(const LinkClass&, const LinkClass&) = default;
};

inline std::string to_string(const LinkClass& c) {
  switch (c.direction) {
    case SkipDirection::None: return "Proper";
    case SkipDirection::Forward: return "Skip/Forward";
    case SkipDirection::SameLayer: return "Skip/SameLayer";
    case SkipDirection::Backward: return "Skip/Backward";
  }
  return "?";
}

// A directed graph whose nodes carry a fixed layer index in 1..layerCount.
//
// The constructor stores its input verbatim so malformed data can be
// inspected with validate(); use LayeredGraph::checked() to obtain a graph
// that is guaranteed to satisfy every invariant. Links are kept in the
// order given; checked() sorts them.
class LayeredGraph {
 public:
  LayeredGraph() = default;

  LayeredGraph(int layerCount, std::vector<int> layerOf, std::vector<Link> links)
      : layer_count_(layerCount), layer_of_(std::move(layerOf)), links_(std::move(links)) {
    const auto n = layer_of_.size();
    out_.assign(n, {});
    in_.assign(n, {});
    for (const auto& l : links_) {
      if (l.src < n && l.dst < n) {
        out_[l.src].push_back(l.dst);
        in_[l.dst].push_back(l.src);
      }
    }
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());

    std::vector<std::size_t> seen;
    index_in_layer_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto l = static_cast<std::size_t>(std::max(layer_of_[i], 0));
      if (seen.size() <= l) seen.resize(l + 1, 0);
      index_in_layer_[i] = seen[l]++;
    }
  }

  static LayeredGraph checked(int layerCount, std::vector<int> layerOf, std::vector<Link> links);

  std::size_t node_count() const { return layer_of_.size(); }
  int layer_count() const { return layer_count_; }
  int layer_of(NodeId n) const { return layer_of_.at(n); }
  std::span<const int> layer_assignment() const { return layer_of_; }
  std::span<const Link> links() const { return links_; }
  std::size_t link_count() const { return links_.size(); }

  bool contains(NodeId n) const { return n < layer_of_.size(); }

  std::span<const NodeId> out_neighbors(NodeId n) const { return out_.at(n); }
  std::span<const NodeId> in_neighbors(NodeId n) const { return in_.at(n); }

  bool has_link(Link l) const {
    if (!contains(l.src) || !contains(l.dst)) return false;
    return std::binary_search(out_[l.src].begin(), out_[l.src].end(), l.dst);
  }

  // Position of a link in links(), if present.
  std::optional<std::size_t> link_index(Link l) const {
    const auto it = std::find(links_.begin(), links_.end(), l);
    if (it == links_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - links_.begin());
  }

  // Nodes of one layer in node-id order.
  std::vector<NodeId> nodes_in_layer(int layer) const {
    std::vector<NodeId> out;
    for (NodeId n = 0; n < layer_of_.size(); ++n)
      if (layer_of_[n] == layer) out.push_back(n);
    return out;
  }

  // Sizes of layers 1..L, stored at index layer-1.
  std::vector<std::size_t> layer_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(layer_count_, 0)), 0);
    for (int l : layer_of_)
      if (l >= 1 && l <= layer_count_) ++sizes[static_cast<std::size_t>(l - 1)];
    return sizes;
  }

  // Zero-based index of a node within its layer (node-id order).
  std::size_t index_in_layer(NodeId n) const { return index_in_layer_.at(n); }

  friend bool operator==(const LayeredGraph& a, const LayeredGraph& b) {
    return a.layer_count_ == b.layer_count_ && a.layer_of_ == b.layer_of_ && a.links_ == b.links_;
  }

 private:
  int layer_count_ = 0;
  std::vector<int> layer_of_;
  std::vector<Link> links_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<std::size_t> index_in_layer_;
};

inline LinkClass classify_link(const LayeredGraph& g, Link link) {
  if (!g.contains(link.src) || !g.contains(link.dst))
    throw Error(Errc::InvalidLink, "link " + std::to_string(link.src) + "->" +
                                       std::to_string(link.dst) + " names an unknown node");
  const int a = g.layer_of(link.src);
  const int b = g.layer_of(link.dst);
  if (b == a + 1) return {LinkKind::Proper, SkipDirection::None};
  if (b > a + 1) return {LinkKind::Skip, SkipDirection::Forward};
  if (b == a) return {LinkKind::Skip, SkipDirection::SameLayer};
  return {LinkKind::Skip, SkipDirection::Backward};
}

inline bool is_proper(const LayeredGraph& g, Link link) { return classify_link(g, link).proper(); }

// Number of (u, v) positions with v exactly one layer below u.
inline std::size_t possible_proper_links(std::span<const std::size_t> layerSizes) {
  std::size_t total = 0;
  for (std::size_t k = 0; k + 1 < layerSizes.size(); ++k) total += layerSizes[k] * layerSizes[k + 1];
  return total;
}

inline std::size_t possible_proper_links(const LayeredGraph& g) {
  const auto sizes = g.layer_sizes();
  return possible_proper_links(sizes);
}

struct LinkCounts {
  std::size_t proper = 0;
  std::size_t skip = 0;
  friend bool operator==(const LinkCounts&, const LinkCounts&) = default;
};

inline LinkCounts count_links(const LayeredGraph& g) {
  LinkCounts c;
  for (const auto& l : g.links()) (classify_link(g, l).proper() ? c.proper : c.skip)++;
  return c;
}

enum class ViolationKind { NoNodes, NoLayers, LayerOutOfRange, EmptyLayer, UnknownNode, SelfLoop, DuplicateLink };

struct Violation {
  ViolationKind kind;
  // Layer for EmptyLayer, node for LayerOutOfRange; link-based kinds use `link`.
  std::int64_t subject = -1;
  Link link{};
  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(const Violation& v) {
  const auto pair = std::to_string(v.link.src) + "->" + std::to_string(v.link.dst);
  switch (v.kind) {
    case ViolationKind::NoNodes: return "NoNodes";
    case ViolationKind::NoLayers: return "NoLayers";
    case ViolationKind::LayerOutOfRange: return "LayerOutOfRange(node " + std::to_string(v.subject) + ")";
    case ViolationKind::EmptyLayer: return "EmptyLayer(" + std::to_string(v.subject) + ")";
    case ViolationKind::UnknownNode: return "UnknownNode(" + pair + ")";
    case ViolationKind::SelfLoop: return "SelfLoop(" + pair + ")";
    case ViolationKind::DuplicateLink: return "DuplicateLink(" + pair + ")";
  }
  return "?";
}

// Empty result means the graph is well formed.
inline std::vector<Violation> validate(const LayeredGraph& g) {
  std::vector<Violation> out;
  if (g.node_count() == 0) out.push_back({ViolationKind::NoNodes});
  if (g.layer_count() < 1) out.push_back({ViolationKind::NoLayers});

  const auto layers = g.layer_assignment();
  for (std::size_t n = 0; n < layers.size(); ++n)
    if (layers[n] < 1 || layers[n] > g.layer_count())
      out.push_back({ViolationKind::LayerOutOfRange, static_cast<std::int64_t>(n)});

  const auto sizes = g.layer_sizes();
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (sizes[k] == 0) out.push_back({ViolationKind::EmptyLayer, static_cast<std::int64_t>(k + 1)});

  std::vector<Link> seen;
  seen.reserve(g.link_count());
  for (const auto& l : g.links()) {
    if (!g.contains(l.src) || !g.contains(l.dst)) {
      out.push_back({ViolationKind::UnknownNode, -1, l});
      continue;
    }
    if (l.src == l.dst) out.push_back({ViolationKind::SelfLoop, -1, l});
    seen.push_back(l);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i] == seen[i - 1] && (i < 2 || seen[i - 2] != seen[i]))
      out.push_back({ViolationKind::DuplicateLink, -1, seen[i]});
  return out;
}

inline LayeredGraph LayeredGraph::checked(int layerCount, std::vector<int> layerOf, std::vector<Link> links) {
  std::sort(links.begin(), links.end());
  LayeredGraph g(layerCount, std::move(layerOf), std::move(links));
  const auto problems = validate(g);
  if (!problems.empty()) {
    std::string msg;
    for (const auto& v : problems) msg += (msg.empty() ? "" : ", ") + to_string(v);
    throw Error(Errc::InvalidGraph, msg);
  }
  return g;
}

inline bool well_formed(const LayeredGraph& g) { return validate(g).empty(); }

}  // namespace quilts
