#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/color.hpp"
#include "quilts/error.hpp"
#include "quilts/graph.hpp"
#include "quilts/quilt_layout.hpp"

namespace quilts {

inline constexpr std::size_t kNoLink = std::numeric_limits<std::size_t>::max();

struct Vertex {
  int layer = 0;
  std::optional<NodeId> node;   // empty for dummies
  std::size_t link = kNoLink;   // parent link index, dummies only

  bool dummy() const { return !node.has_value(); }
};

// Unit-span piece of a link between layer k (upper) and k + 1 (lower).
struct Segment {
  std::size_t upper = 0;
  std::size_t lower = 0;
  std::size_t link = kNoLink;
};

// A layered graph with every multi-layer link subdivided by dummy vertices.
// Vertices 0..N-1 are the original nodes; dummies follow.
struct ExpandedGraph {
  int layerCount = 0;
  std::vector<Vertex> vertices;
  std::vector<Segment> segments;
  std::vector<std::vector<std::size_t>> order;   // [layer-1] -> vertices left to right
  std::vector<std::vector<std::size_t>> chains;  // [link index] -> src, dummies..., dst

  std::size_t dummy_count() const {
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.dummy(); }));
  }

  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(vertices.size(), 0);
    for (const auto& layer : order)
      for (std::size_t i = 0; i < layer.size(); ++i) pos[layer[i]] = i;
    return pos;
  }
};

// Forward link a->b gets dummies on a+1..b-1 and backward link a->b (b < a)
// on a-1..b+1, each listed in traversal order. Same-layer links get none.
inline ExpandedGraph insert_dummy_nodes(const LayeredGraph& g) {
  ExpandedGraph e;
  e.layerCount = g.layer_count();
  e.order.assign(static_cast<std::size_t>(std::max(e.layerCount, 0)), {});
  for (NodeId n = 0; n < g.node_count(); ++n) {
    e.vertices.push_back({g.layer_of(n), n, kNoLink});
    e.order[static_cast<std::size_t>(g.layer_of(n) - 1)].push_back(n);
  }

  const auto links = g.links();
  e.chains.resize(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    const int a = g.layer_of(l.src);
    const int b = g.layer_of(l.dst);
    auto& chain = e.chains[i];
    chain.push_back(l.src);
    if (a != b) {
      const int step = b > a ? 1 : -1;
      for (int k = a + step; k != b; k += step) {
        const auto id = e.vertices.size();
        e.vertices.push_back({k, std::nullopt, i});
        e.order[static_cast<std::size_t>(k - 1)].push_back(id);
        chain.push_back(id);
      }
    }
    chain.push_back(l.dst);
    if (a == b) continue;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const auto p = chain[j], q = chain[j + 1];
      const bool pUpper = e.vertices[p].layer < e.vertices[q].layer;
      e.segments.push_back({pUpper ? p : q, pUpper ? q : p, i});
    }
  }
  return e;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> segments_by_gap(const ExpandedGraph& e) {
  std::vector<std::vector<std::size_t>> byGap(static_cast<std::size_t>(std::max(e.layerCount - 1, 0)));
  for (std::size_t s = 0; s < e.segments.size(); ++s) {
    const int k = e.vertices[e.segments[s].upper].layer;
    byGap[static_cast<std::size_t>(k - 1)].push_back(s);
  }
  return byGap;
}

inline std::size_t count_crossings(const ExpandedGraph& e, const std::vector<std::vector<std::size_t>>& byGap) {
  const auto pos = e.positions();
  std::size_t total = 0;
  for (const auto& gap : byGap) {
    for (std::size_t i = 0; i < gap.size(); ++i) {
      const auto& s = e.segments[gap[i]];
      const auto a1 = static_cast<std::int64_t>(pos[s.upper]);
      const auto b1 = static_cast<std::int64_t>(pos[s.lower]);
      for (std::size_t j = i + 1; j < gap.size(); ++j) {
        const auto& t = e.segments[gap[j]];
        const auto a2 = static_cast<std::int64_t>(pos[t.upper]);
        const auto b2 = static_cast<std::int64_t>(pos[t.lower]);
        if ((a1 - a2) * (b1 - b2) < 0) ++total;
      }
    }
  }
  return total;
}

}  // namespace detail

// Pairs of segments in the same layer gap whose endpoint orders disagree.
// Segments sharing an endpoint never cross.
inline std::size_t count_crossings(const ExpandedGraph& e) { return detail::count_crossings(e, detail::segments_by_gap(e)); }

// Alternating barycenter passes: each sweep reorders layers 2..L against the
// layer above, then L-1..1 against the layer below. The best ordering seen
// (by total crossings) is returned, so the result is never worse than the
// input. Stops after a sweep without improvement or after maxSweeps.
//
// If `trace` is given it receives the best-seen crossing count after the
// input and after every pass.
inline ExpandedGraph barycentric_sweep(const ExpandedGraph& input, std::size_t maxSweeps,
                                       std::vector<std::size_t>* trace = nullptr) {
  const auto byGap = detail::segments_by_gap(input);
  std::vector<std::vector<std::size_t>> above(input.vertices.size()), below(input.vertices.size());
  for (const auto& s : input.segments) {
    below[s.upper].push_back(s.lower);
    above[s.lower].push_back(s.upper);
  }

  ExpandedGraph best = input;
  std::size_t bestCrossings = detail::count_crossings(input, byGap);
  if (trace) trace->push_back(bestCrossings);
  ExpandedGraph cur = input;

  auto reorder = [&](std::size_t layerIdx, const std::vector<std::vector<std::size_t>>& fixedNeighbors) {
    const auto pos = cur.positions();
    auto& layer = cur.order[layerIdx];
    struct Key {
      double bary;
      std::size_t prev;
      std::size_t vertex;
    };
    std::vector<Key> keys;
    keys.reserve(layer.size());
    for (auto v : layer) {
      const auto& nb = fixedNeighbors[v];
      double bary = static_cast<double>(pos[v]);
      if (!nb.empty()) {
        double sum = 0;
        for (auto u : nb) sum += static_cast<double>(pos[u]);
        bary = sum / static_cast<double>(nb.size());
      }
      keys.push_back({bary, pos[v], v});
    }
    std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
      if (a.bary != b.bary) return a.bary < b.bary;
      if (a.prev != b.prev) return a.prev < b.prev;
      return a.vertex < b.vertex;
    });
    for (std::size_t i = 0; i < keys.size(); ++i) layer[i] = keys[i].vertex;
  };

  const auto L = cur.order.size();
  if (L < 2) return best;
  for (std::size_t sweep = 0; sweep < maxSweeps && bestCrossings > 0; ++sweep) {
    bool improved = false;
    for (int pass = 0; pass < 2 && bestCrossings > 0; ++pass) {
      if (pass == 0) {
        for (std::size_t k = 1; k < L; ++k) reorder(k, above);
      } else {
        for (std::size_t k = L - 1; k-- > 0;) reorder(k, below);
      }
      const auto c = detail::count_crossings(cur, byGap);
      if (c < bestCrossings) {
        bestCrossings = c;
        best = cur;
        improved = true;
      }
      if (trace) trace->push_back(bestCrossings);
    }
    if (!improved) break;
  }
  return best;
}

enum class LinkStyle { Normal, Backward, SameLayer };

constexpr std::string_view to_string(LinkStyle s) {
  switch (s) {
    case LinkStyle::Normal: return "link-normal";
    case LinkStyle::Backward: return "link-backward";
    case LinkStyle::SameLayer: return "link-same-layer";
  }
  return "?";
}

struct NodeLinkParams {
  double width = 2560;
  double height = 1600;
  double margin = 40;
  double nodeRadius = 6;
  // Within-layer slot pitch; dummies use the same pitch as real nodes.
  double pitch = 24;
  std::size_t maxSweeps = 24;
};

struct NodeLinkLayout {
  NodeLinkParams params;
  ExpandedGraph expanded;
  std::vector<Point> vertexPos;
  std::vector<double> rowY;  // [layer-1]
  double layerGap = 0;
  std::vector<std::vector<Point>> polylines;  // [link index]
  std::vector<LinkStyle> styles;              // [link index]
  std::size_t crossings = 0;
  Rect bounds;
};

inline NodeLinkLayout layout_node_link(const LayeredGraph& g, const NodeLinkParams& params = {}) {
  detail::require_layout_ready(g);
  NodeLinkLayout out;
  out.params = params;
  out.expanded = barycentric_sweep(insert_dummy_nodes(g), params.maxSweeps);
  out.crossings = count_crossings(out.expanded);
  const auto& e = out.expanded;
  const int L = g.layer_count();

  std::size_t widest = 0;
  for (const auto& row : e.order) widest = std::max(widest, row.size());
  const double canvasWidth =
      std::max(params.width, static_cast<double>(widest > 0 ? widest - 1 : 0) * params.pitch + 2 * params.margin);
  out.bounds = {0, 0, canvasWidth, params.height};
  out.layerGap = L > 1 ? (params.height - 2 * params.margin) / static_cast<double>(L - 1) : 0;

  out.vertexPos.assign(e.vertices.size(), {});
  for (int k = 1; k <= L; ++k) {
    const auto& row = e.order[static_cast<std::size_t>(k - 1)];
    const double y = L > 1 ? params.margin + static_cast<double>(k - 1) * out.layerGap : params.height / 2;
    out.rowY.push_back(y);
    const double half = static_cast<double>(row.size() > 0 ? row.size() - 1 : 0) / 2.0;
    for (std::size_t i = 0; i < row.size(); ++i)
      out.vertexPos[row[i]] = {canvasWidth / 2 + (static_cast<double>(i) - half) * params.pitch, y};
  }

  const auto links = g.links();
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto cls = classify_link(g, links[i]);
    std::vector<Point> pts;
    if (cls.direction == SkipDirection::SameLayer) {
      const auto p = out.vertexPos[links[i].src], q = out.vertexPos[links[i].dst];
      const int k = g.layer_of(links[i].src);
      const double bulge = std::min(0.45 * out.layerGap, 0.3 * std::fabs(q.x - p.x) + 0.5 * params.pitch);
      // Arcs rise above their row, except on the top row where they dip.
      const double cy = k == 1 ? p.y + bulge : p.y - bulge;
      pts = {p, {(p.x + q.x) / 2, cy}, q};
      out.styles.push_back(LinkStyle::SameLayer);
    } else {
      for (auto v : e.chains[i]) pts.push_back(out.vertexPos[v]);
      out.styles.push_back(cls.direction == SkipDirection::Backward ? LinkStyle::Backward : LinkStyle::Normal);
    }
    out.polylines.push_back(std::move(pts));
  }
  return out;
}

inline LayoutBundle to_bundle(const NodeLinkLayout& nl, const LayeredGraph& g) {
  LayoutBundle b;
  b.depiction = Depiction::NodeLink;
  b.cellSize = nl.params.nodeRadius * 2;
  b.bounds = nl.bounds;
  b.nodeCount = g.node_count();
  b.layerCount = g.layer_count();
  for (NodeId n = 0; n < g.node_count(); ++n) b.nodeLabels.push_back(node_number_label(g, n));

  const auto links = g.links();
  for (std::size_t i = 0; i < links.size(); ++i) {
    Shape s;
    s.kind = ShapeKind::Path;
    s.points = nl.polylines[i];
    s.curved = nl.styles[i] == LinkStyle::SameLayer;
    s.stroke = nl.styles[i] == LinkStyle::Backward ? "#1f4fff" : "#404040";
    s.strokeWidth = 1.2;
    s.role = std::string(to_string(nl.styles[i]));
    s.element = ElementId::link(links[i]);
    b.shapes.push_back(std::move(s));
  }

  const auto colors = assign_colors(g, SkipDepiction::Mixed);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    Shape s;
    s.kind = ShapeKind::Circle;
    s.x = nl.vertexPos[n].x, s.y = nl.vertexPos[n].y, s.w = nl.params.nodeRadius;
    s.fill = colors.node(n).fill;
    s.stroke = "#202020";
    s.strokeWidth = 0.8;
    s.role = "node";
    s.element = ElementId::node(n);
    b.shapes.push_back(std::move(s));
  }
  return b;
}

}  // namespace quilts
