#pragma once

#include <cstddef>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/color.hpp"
#include "quilts/error.hpp"
#include "quilts/graph.hpp"
#include "quilts/quilt_layout.hpp"

namespace quilts {

struct MatrixLinkCell {
  Link link;
  std::size_t row = 0;
  std::size_t col = 0;
  Rect cell;
};

struct LayerBlock {
  int layer = 0;
  std::size_t first = 0;
  std::size_t count = 0;
  Rect extent;
};

// Nodes sit on the diagonal sorted by (layer, id); link u->v is the cell at
// row p(u), column p(v). Forward links land above the diagonal.
struct CenteredMatrixLayout {
  double cellSize = 1;
  std::vector<std::size_t> position;  // node id -> diagonal index
  std::vector<Rect> nodeCells;        // node id -> diagonal cell
  std::vector<MatrixLinkCell> linkCells;
  std::vector<LayerBlock> blocks;
  Rect bounds;
};

// One cell size for a whole session: the largest graph fills the height.
inline double matrix_cell_size(double displayHeight, std::size_t maxNodes) {
  if (maxNodes == 0) throw Error(Errc::BadInput, "maxNodes must be positive");
  return displayHeight / static_cast<double>(maxNodes);
}

inline CenteredMatrixLayout layout_centered_matrix(const LayeredGraph& g, double cellSize) {
  detail::require_layout_ready(g);
  CenteredMatrixLayout m;
  m.cellSize = cellSize;
  const auto n = g.node_count();
  m.position.assign(n, 0);
  m.nodeCells.assign(n, {});

  std::size_t p = 0;
  for (int k = 1; k <= g.layer_count(); ++k) {
    LayerBlock block{k, p, 0, {}};
    for (auto node : g.nodes_in_layer(k)) {
      m.position[node] = p;
      m.nodeCells[node] = {static_cast<double>(p) * cellSize, static_cast<double>(p) * cellSize, cellSize, cellSize};
      ++p;
    }
    block.count = p - block.first;
    const double origin = static_cast<double>(block.first) * cellSize;
    const double extent = static_cast<double>(block.count) * cellSize;
    block.extent = {origin, origin, extent, extent};
    m.blocks.push_back(block);
  }

  for (const auto& l : g.links()) {
    const auto row = m.position[l.src];
    const auto col = m.position[l.dst];
    m.linkCells.push_back(
        {l, row, col, {static_cast<double>(col) * cellSize, static_cast<double>(row) * cellSize, cellSize, cellSize}});
  }
  const double side = static_cast<double>(n) * cellSize;
  m.bounds = {0, 0, side, side};
  return m;
}

inline LayoutBundle to_bundle(const CenteredMatrixLayout& m, const LayeredGraph& g) {
  LayoutBundle b;
  b.depiction = Depiction::CenteredMatrix;
  b.cellSize = m.cellSize;
  b.bounds = m.bounds;
  b.nodeCount = g.node_count();
  b.layerCount = g.layer_count();
  for (NodeId n = 0; n < g.node_count(); ++n) b.nodeLabels.push_back(node_number_label(g, n));

  const auto colors = assign_colors(g, SkipDepiction::Mixed);
  const double cs = m.cellSize;

  Shape frame;
  frame.kind = ShapeKind::Rect;
  frame.w = m.bounds.w, frame.h = m.bounds.h;
  frame.fill = "#ffffff";
  frame.stroke = "#c0c0c0";
  frame.strokeWidth = cs * 0.05;
  frame.role = "frame";
  b.shapes.push_back(frame);

  for (const auto& blk : m.blocks) {
    Shape s;
    s.kind = ShapeKind::Rect;
    s.x = blk.extent.x, s.y = blk.extent.y, s.w = blk.extent.w, s.h = blk.extent.h;
    s.fill = hsb_hex({colors.layer(blk.layer).hue, colors.layer(blk.layer).saturation * 0.25}, 1.0);
    s.role = "block";
    b.shapes.push_back(s);
  }

  for (NodeId n = 0; n < g.node_count(); ++n) {
    Shape s;
    s.kind = ShapeKind::Rect;
    const auto& r = m.nodeCells[n];
    s.x = r.x, s.y = r.y, s.w = r.w, s.h = r.h;
    s.fill = colors.node(n).fill;
    s.stroke = "#ffffff";
    s.strokeWidth = cs * 0.08;
    s.role = "node";
    s.element = ElementId::node(n);
    b.shapes.push_back(s);
  }

  for (const auto& c : m.linkCells) {
    Shape s;
    s.kind = ShapeKind::Rect;
    const double inset = cs * 0.15;
    s.x = c.cell.x + inset, s.y = c.cell.y + inset, s.w = c.cell.w - 2 * inset, s.h = c.cell.h - 2 * inset;
    s.fill = "#000000";
    s.role = classify_link(g, c.link).proper() ? "proper" : "skip";
    s.element = ElementId::link(c.link);
    b.shapes.push_back(s);
  }
  return b;
}

}  // namespace quilts
