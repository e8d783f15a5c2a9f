#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/color.hpp"
#include "quilts/error.hpp"
#include "quilts/graph.hpp"

namespace quilts {

enum class Orientation { Horizontal, Vertical };

struct StripCell {
  NodeId node = 0;
  Rect cell;
};

struct LayerStrip {
  int layer = 0;
  Orientation orientation = Orientation::Horizontal;
  Rect extent;
  std::vector<StripCell> cells;  // within-layer order
};

struct LinkCell {
  Link link;
  Rect cell;
};

// Proper links from layer `layer` to layer `layer + 1`.
struct Submatrix {
  int layer = 0;
  Rect extent;
  std::vector<LinkCell> glyphs;
};

// Skip links leaving the nodes of one layer. Each source node owns the
// cells of its row or column inside the band; a node's skips take slots
// 0, 1, ... in destination (layer, id) order.
struct SkipBand {
  int layer = 0;
  std::size_t slots = 0;
  Rect extent;
  std::vector<LinkCell> cells;
};

struct QuiltLayout {
  SkipDepiction style = SkipDepiction::Mixed;
  double cellSize = 1;
  std::vector<LayerStrip> strips;  // index layer-1
  std::vector<Submatrix> submatrices;
  std::vector<SkipBand> bands;
  Rect bounds;
  ColorMap colors;
};

namespace detail {

inline void require_layout_ready(const LayeredGraph& g) {
  const auto problems = validate(g);
  if (!problems.empty()) throw Error(Errc::DegenerateGraph, to_string(problems.front()));
}

}  // namespace detail

// Staircase Quilt: layer 1 is a horizontal strip at the top left, M_1 sits
// below it (columns = layer 1, rows = layer 2), layer 2 is a vertical strip
// to the right of M_1, M_2 to the right of that (rows = layer 2, columns =
// layer 3), layer 3 a horizontal strip below M_2, and so on. Odd layers are
// horizontal, even layers vertical.
//
// Skip bands extend a node's row or column beyond the submatrix it heads as
// a source (M_k for a layer-k node); the last layer has no such submatrix and
// its band sits on the outer side of its own strip.
inline QuiltLayout layout_quilt(const LayeredGraph& g, SkipDepiction style, double cellSize) {
  detail::require_layout_ready(g);
  const int L = g.layer_count();
  QuiltLayout q;
  q.style = style;
  q.cellSize = cellSize;
  q.colors = assign_colors(g, style);

  std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(L));
  for (int k = 1; k <= L; ++k) members[static_cast<std::size_t>(k - 1)] = g.nodes_in_layer(k);
  auto size = [&](int k) { return static_cast<double>(members[static_cast<std::size_t>(k - 1)].size()); };
  auto idx = [&](NodeId n) { return static_cast<double>(g.index_in_layer(n)); };
  auto horizontal = [](int k) { return k % 2 == 1; };

  // Strip origins and submatrix extents, in cell units.
  std::vector<Rect> strip(static_cast<std::size_t>(L));
  std::vector<Rect> sub(static_cast<std::size_t>(std::max(L - 1, 0)));
  double x = 0, y = 0;
  for (int k = 1; k <= L; ++k) {
    const auto ku = static_cast<std::size_t>(k - 1);
    strip[ku] = horizontal(k) ? Rect{x, y, size(k), 1} : Rect{x, y, 1, size(k)};
    if (k == L) break;
    if (horizontal(k)) {
      sub[ku] = {x, y + 1, size(k), size(k + 1)};
      x = x + size(k);
      y = y + 1;
    } else {
      sub[ku] = {x + 1, y, size(k + 1), size(k)};
      x = x + 1;
      y = y + size(k);
    }
  }

  auto scaled = [cellSize](Rect r) { return Rect{r.x * cellSize, r.y * cellSize, r.w * cellSize, r.h * cellSize}; };
  auto unit = [&](double cx, double cy) { return scaled({cx, cy, 1, 1}); };

  for (int k = 1; k <= L; ++k) {
    const auto ku = static_cast<std::size_t>(k - 1);
    LayerStrip s;
    s.layer = k;
    s.orientation = horizontal(k) ? Orientation::Horizontal : Orientation::Vertical;
    s.extent = scaled(strip[ku]);
    for (auto n : members[ku]) {
      const double i = idx(n);
      s.cells.push_back({n, horizontal(k) ? unit(strip[ku].x + i, strip[ku].y) : unit(strip[ku].x, strip[ku].y + i)});
    }
    q.strips.push_back(std::move(s));
  }

  for (int k = 1; k < L; ++k) {
    const auto ku = static_cast<std::size_t>(k - 1);
    Submatrix m;
    m.layer = k;
    m.extent = scaled(sub[ku]);
    q.submatrices.push_back(std::move(m));
  }

  std::vector<std::vector<Link>> skipsFrom(g.node_count());
  for (const auto& l : g.links()) {
    const int a = g.layer_of(l.src);
    const int b = g.layer_of(l.dst);
    if (b == a + 1) {
      const auto& r = sub[static_cast<std::size_t>(a - 1)];
      const Rect cell = horizontal(a) ? unit(r.x + idx(l.src), r.y + idx(l.dst)) : unit(r.x + idx(l.dst), r.y + idx(l.src));
      q.submatrices[static_cast<std::size_t>(a - 1)].glyphs.push_back({l, cell});
    } else {
      skipsFrom[l.src].push_back(l);
    }
  }

  for (int k = 1; k <= L; ++k) {
    const auto ku = static_cast<std::size_t>(k - 1);
    std::size_t slots = 0;
    for (auto n : members[ku]) slots = std::max(slots, skipsFrom[n].size());
    if (slots == 0) continue;

    // Band origin in cell units; runs along the node's column (horizontal
    // layer) or row (vertical layer).
    Rect band;
    const double depth = static_cast<double>(slots);
    if (k < L) {
      const auto& r = sub[ku];
      band = horizontal(k) ? Rect{r.x, r.bottom(), r.w, depth} : Rect{r.right(), r.y, depth, r.h};
    } else {
      const auto& r = strip[ku];
      band = horizontal(k) ? Rect{r.x, r.bottom(), r.w, depth} : Rect{r.right(), r.y, depth, r.h};
    }

    SkipBand b;
    b.layer = k;
    b.slots = slots;
    b.extent = scaled(band);
    for (auto n : members[ku]) {
      auto links = skipsFrom[n];
      std::sort(links.begin(), links.end(), [&](const Link& p, const Link& q2) {
        const int lp = g.layer_of(p.dst), lq = g.layer_of(q2.dst);
        return lp != lq ? lp < lq : p.dst < q2.dst;
      });
      for (std::size_t j = 0; j < links.size(); ++j) {
        const double slot = static_cast<double>(j);
        const Rect cell = horizontal(k) ? unit(band.x + idx(n), band.y + slot) : unit(band.x + slot, band.y + idx(n));
        b.cells.push_back({links[j], cell});
      }
    }
    q.bands.push_back(std::move(b));
  }

  Rect bounds = q.strips.front().extent;
  for (const auto& s : q.strips) bounds = bounds.united(s.extent);
  for (const auto& m : q.submatrices) bounds = bounds.united(m.extent);
  for (const auto& b : q.bands) bounds = bounds.united(b.extent);
  q.bounds = bounds;
  return q;
}

struct DisplayBounds {
  double width = 0;
  double height = 0;
};

inline bool fits_display(const QuiltLayout& q, DisplayBounds bounds) {
  return q.bounds.right() <= bounds.width && q.bounds.bottom() <= bounds.height && q.bounds.w <= bounds.width &&
         q.bounds.h <= bounds.height;
}

// Flattens a Quilt into the shared shape list.
inline LayoutBundle to_bundle(const QuiltLayout& q, const LayeredGraph& g) {
  LayoutBundle b;
  b.depiction = Depiction::Quilt;
  b.style = q.style;
  b.cellSize = q.cellSize;
  b.bounds = q.bounds;
  b.nodeCount = g.node_count();
  b.layerCount = g.layer_count();
  for (NodeId n = 0; n < g.node_count(); ++n)
    b.nodeLabels.push_back(q.style == SkipDepiction::TextOnly ? q.colors.node(n).label : node_number_label(g, n));

  const double cs = q.cellSize;
  const double font = cs * 0.55;
  auto rect = [](const Rect& r, std::string fill, std::string role) {
    Shape s;
    s.kind = ShapeKind::Rect;
    s.x = r.x, s.y = r.y, s.w = r.w, s.h = r.h;
    s.fill = std::move(fill);
    s.role = std::move(role);
    return s;
  };

  for (const auto& m : q.submatrices) b.shapes.push_back(rect(m.extent, "#f2f2f2", "submatrix"));
  for (const auto& band : q.bands) b.shapes.push_back(rect(band.extent, "#fafafa", "skip-band"));

  for (const auto& s : q.strips) {
    for (const auto& c : s.cells) {
      const auto& enc = q.colors.node(c.node);
      auto cell = rect(c.cell, enc.fill, "node");
      cell.stroke = "#ffffff";
      cell.strokeWidth = cs * 0.08;
      cell.element = ElementId::node(c.node);
      b.shapes.push_back(cell);
      if (!enc.label.empty()) {
        Shape t;
        t.kind = ShapeKind::Text;
        const auto ctr = c.cell.center();
        t.x = ctr.x, t.y = ctr.y, t.h = font;
        t.text = enc.label;
        t.fill = "#000000";
        t.role = "label";
        t.element = ElementId::node(c.node);
        b.shapes.push_back(t);
      }
    }
  }

  for (const auto& m : q.submatrices) {
    for (const auto& gl : m.glyphs) {
      Shape c;
      c.kind = ShapeKind::Circle;
      const auto ctr = gl.cell.center();
      c.x = ctr.x, c.y = ctr.y, c.w = cs * 0.35;
      c.fill = "#000000";
      c.role = "proper";
      c.element = ElementId::link(gl.link);
      b.shapes.push_back(c);
    }
  }

  for (const auto& band : q.bands) {
    for (const auto& sc : band.cells) {
      const auto& dst = q.colors.node(sc.link.dst);
      const auto ctr = sc.cell.center();
      Shape c;
      c.kind = ShapeKind::Circle;
      c.x = ctr.x, c.y = ctr.y, c.w = cs * 0.45;
      c.fill = q.style == SkipDepiction::TextOnly ? "#ffffff" : dst.fill;
      c.stroke = "#808080";
      c.strokeWidth = cs * 0.05;
      c.role = "skip";
      c.element = ElementId::link(sc.link);
      b.shapes.push_back(c);
      if (!dst.label.empty()) {
        Shape t;
        t.kind = ShapeKind::Text;
        t.x = ctr.x, t.y = ctr.y, t.h = q.style == SkipDepiction::TextOnly ? font * 0.8 : font;
        t.text = dst.label;
        t.fill = "#000000";
        t.role = "label";
        t.element = ElementId::link(sc.link);
        b.shapes.push_back(t);
      }
    }
  }
  return b;
}

}  // namespace quilts
