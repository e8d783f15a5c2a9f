#include <gtest/gtest.h>

#include <map>
#include <random>

#include "quilts/color.hpp"
#include "quilts/matrix_layout.hpp"
#include "quilts/quilt_layout.hpp"
#include "support/oracles.hpp"

using namespace quilts;

namespace {

std::vector<Rect> all_node_cells(const QuiltLayout& q) {
  std::vector<Rect> out;
  for (const auto& s : q.strips)
    for (const auto& c : s.cells) out.push_back(c.cell);
  return out;
}

void expect_pairwise_disjoint(const std::vector<Rect>& rs, const char* what) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) EXPECT_FALSE(rs[i].overlaps(rs[j])) << what << " " << i << "," << j;
}

}  // namespace

TEST(QuiltLayout, SmallestStaircase) {
  // Layer 1 = {0,1,2}, layer 2 = {3,4}.
  const auto g = LayeredGraph::checked(2, {1, 1, 1, 2, 2}, {{0, 3}, {1, 4}, {2, 3}});
  const auto q = layout_quilt(g, SkipDepiction::Mixed, 1);
  ASSERT_EQ(q.strips.size(), 2u);
  EXPECT_EQ(q.strips[0].orientation, Orientation::Horizontal);
  EXPECT_EQ(q.strips[0].extent, (Rect{0, 0, 3, 1}));
  ASSERT_EQ(q.submatrices.size(), 1u);
  EXPECT_EQ(q.submatrices[0].extent, (Rect{0, 1, 3, 2}));  // 3 columns, 2 rows
  EXPECT_EQ(q.submatrices[0].glyphs.size(), 3u);
  EXPECT_EQ(q.strips[1].orientation, Orientation::Vertical);
  EXPECT_EQ(q.strips[1].extent, (Rect{3, 1, 1, 2}));  // right of M_1
  EXPECT_TRUE(q.bands.empty());
  EXPECT_EQ(q.bounds, (Rect{0, 0, 4, 3}));
  // Glyph for 1->4 sits in column idx(1)=1, row idx(4)=1.
  std::map<Link, Rect> cells;
  for (const auto& gl : q.submatrices[0].glyphs) cells[gl.link] = gl.cell;
  EXPECT_EQ(cells.at({1, 4}), (Rect{1, 2, 1, 1}));
  EXPECT_EQ(cells.at({2, 3}), (Rect{2, 1, 1, 1}));
}

TEST(QuiltLayout, StaircaseAlternatesAndSubmatricesSitBetweenStrips) {
  const auto g = oracle::balanced_graph(3, 4, 5);
  const auto q = layout_quilt(g, SkipDepiction::Mixed, 1);
  for (const auto& s : q.strips)
    EXPECT_EQ(s.orientation, s.layer % 2 == 1 ? Orientation::Horizontal : Orientation::Vertical);
  for (const auto& m : q.submatrices) {
    const auto& a = q.strips[static_cast<std::size_t>(m.layer - 1)].extent;
    const auto& b = q.strips[static_cast<std::size_t>(m.layer)].extent;
    // Columns (or rows) line up with layer k's strip, the other axis with layer k+1's.
    if (m.layer % 2 == 1) {
      EXPECT_EQ(m.extent.x, a.x);
      EXPECT_EQ(m.extent.w, a.w);
      EXPECT_EQ(m.extent.y, b.y);
      EXPECT_EQ(m.extent.h, b.h);
    } else {
      EXPECT_EQ(m.extent.y, a.y);
      EXPECT_EQ(m.extent.h, a.h);
      EXPECT_EQ(m.extent.x, b.x);
      EXPECT_EQ(m.extent.w, b.w);
    }
  }
}

TEST(QuiltLayout, NoOverlapsAndLinkBijectionOnRandomGraphs) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const auto g = oracle::random_graph(rng, 40, 8, 0.15);
    for (auto style : {SkipDepiction::ColorOnly, SkipDepiction::Mixed, SkipDepiction::TextOnly}) {
      const auto q = layout_quilt(g, style, 8);
      expect_pairwise_disjoint(all_node_cells(q), "node cells");
      std::vector<Rect> regions;
      for (const auto& m : q.submatrices) regions.push_back(m.extent);
      for (const auto& b : q.bands) regions.push_back(b.extent);
      for (const auto& s : q.strips) regions.push_back(s.extent);
      expect_pairwise_disjoint(regions, "regions");

      std::map<Link, int> hits;
      std::vector<Rect> glyphCells;
      for (const auto& m : q.submatrices)
        for (const auto& gl : m.glyphs) {
          ++hits[gl.link];
          glyphCells.push_back(gl.cell);
          EXPECT_TRUE(m.extent.contains(gl.cell));
          EXPECT_TRUE(is_proper(g, gl.link));
        }
      for (const auto& b : q.bands)
        for (const auto& c : b.cells) {
          ++hits[c.link];
          glyphCells.push_back(c.cell);
          EXPECT_TRUE(b.extent.contains(c.cell));
          EXPECT_EQ(g.layer_of(c.link.src), b.layer);
          // In the source node's column (horizontal layer) or row (vertical).
          const auto& strip = q.strips[static_cast<std::size_t>(b.layer - 1)];
          const auto it = std::find_if(strip.cells.begin(), strip.cells.end(),
                                       [&](const StripCell& sc) { return sc.node == c.link.src; });
          ASSERT_NE(it, strip.cells.end());
          if (strip.orientation == Orientation::Horizontal) EXPECT_DOUBLE_EQ(c.cell.x, it->cell.x);
          else EXPECT_DOUBLE_EQ(c.cell.y, it->cell.y);
        }
      EXPECT_EQ(hits.size(), g.link_count());
      for (const auto& l : g.links()) EXPECT_EQ(hits[l], 1);
      expect_pairwise_disjoint(glyphCells, "glyph cells");
      for (const auto& r : regions) EXPECT_TRUE(q.bounds.contains(r));
    }
  }
}

TEST(QuiltLayout, NoSkipsNoBands) {
  const auto g = oracle::balanced_graph(1, 5, 5, 0.5, 0.0);
  EXPECT_TRUE(layout_quilt(g, SkipDepiction::ColorOnly, 8).bands.empty());
}

TEST(QuiltLayout, SkipSlotsOrderedByDestination) {
  // Layer 1 = {0}, 2 = {1}, 3 = {2,3}; 0->2 and 0->3 skip layer 2.
  const auto g = LayeredGraph::checked(3, {1, 2, 3, 3}, {{0, 1}, {0, 3}, {0, 2}, {1, 2}});
  const auto q = layout_quilt(g, SkipDepiction::Mixed, 1);
  ASSERT_EQ(q.bands.size(), 1u);
  EXPECT_EQ(q.bands[0].slots, 2u);
  ASSERT_EQ(q.bands[0].cells.size(), 2u);
  EXPECT_EQ(q.bands[0].cells[0].link, (Link{0, 2}));
  EXPECT_EQ(q.bands[0].cells[1].link, (Link{0, 3}));
  EXPECT_LT(q.bands[0].cells[0].cell.y, q.bands[0].cells[1].cell.y);
}

TEST(QuiltLayout, DegenerateGraphRejected) {
  const LayeredGraph g(3, {1, 3}, {});
  try {
    layout_quilt(g, SkipDepiction::Mixed, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateGraph);
  }
}

TEST(FitsDisplay, Examples) {
  const auto g = LayeredGraph::checked(2, {1, 2}, {{0, 1}});
  const auto q = layout_quilt(g, SkipDepiction::Mixed, 8);
  EXPECT_TRUE(fits_display(q, {1e6, 1e6}));
  EXPECT_FALSE(fits_display(q, {0, 0}));
}

TEST(AssignColors, ColorOnlyBrightnessRamp) {
  const auto g = LayeredGraph::checked(2, {1, 1, 1, 1, 2}, {});
  const auto m = assign_colors(g, SkipDepiction::ColorOnly);
  for (NodeId n = 1; n < 4; ++n) EXPECT_LT(m.node(n).brightness, m.node(n - 1).brightness);
  EXPECT_DOUBLE_EQ(m.node(0).brightness, 1.0);
  EXPECT_GE(m.node(3).brightness, 0.35);
  for (NodeId n = 0; n < 4; ++n) EXPECT_TRUE(m.node(n).label.empty());
}

TEST(AssignColors, TextOnlyLabels) {
  const auto g = LayeredGraph::checked(2, {1, 2, 2, 2}, {});
  const auto m = assign_colors(g, SkipDepiction::TextOnly);
  EXPECT_EQ(m.node(3).label, "B3");
  EXPECT_EQ(m.node(0).label, "A1");
  EXPECT_EQ(m.node(0).fill, m.node(3).fill);  // neutral
}

TEST(AssignColors, MixedSharesColorPerLayer) {
  const auto g = LayeredGraph::checked(2, {1, 1, 1, 2, 2}, {});
  const auto m = assign_colors(g, SkipDepiction::Mixed);
  EXPECT_EQ(m.node(0).fill, m.node(2).fill);
  EXPECT_NE(m.node(0).fill, m.node(3).fill);
  EXPECT_EQ(m.node(0).label, "1");
  EXPECT_EQ(m.node(2).label, "3");
  EXPECT_EQ(m.node(4).label, "2");
}

TEST(AssignColors, LayerChromaticityInjective) {
  std::vector<int> layers;
  for (int k = 1; k <= 15; ++k) layers.push_back(k);
  const auto g = LayeredGraph::checked(15, layers, {});
  for (auto style : {SkipDepiction::ColorOnly, SkipDepiction::Mixed}) {
    const auto m = assign_colors(g, style);
    std::set<std::pair<double, double>> seen;
    std::set<std::string> fills;
    for (int k = 1; k <= 15; ++k) {
      seen.insert({m.layer(k).hue, m.layer(k).saturation});
      fills.insert(m.node(static_cast<NodeId>(k - 1)).fill);
    }
    EXPECT_EQ(seen.size(), 15u);
    EXPECT_EQ(fills.size(), 15u);
  }
}

TEST(AssignColors, TooManyLayers) {
  std::vector<int> layers;
  for (int k = 1; k <= 16; ++k) layers.push_back(k);
  const auto g = LayeredGraph::checked(16, layers, {});
  try {
    assign_colors(g, SkipDepiction::Mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooManyLayers);
  }
}

TEST(HsbHex, FixedFormula) {
  EXPECT_EQ(hsb_hex({0, 1}, 1), "#ff0000");
  EXPECT_EQ(hsb_hex({120, 1}, 1), "#00ff00");
  EXPECT_EQ(hsb_hex({240, 1}, 0.5), "#000080");
  EXPECT_EQ(hsb_hex({0, 0}, 1), "#ffffff");
}

TEST(CenteredMatrix, ThreeNodeChain) {
  const auto g = LayeredGraph::checked(3, {1, 2, 3}, {{0, 1}, {1, 2}});
  const auto m = layout_centered_matrix(g, 1);
  for (NodeId n = 0; n < 3; ++n) {
    EXPECT_EQ(m.position[n], n);
    EXPECT_EQ(m.nodeCells[n], (Rect{double(n), double(n), 1, 1}));
  }
  ASSERT_EQ(m.linkCells.size(), 2u);
  EXPECT_EQ(m.linkCells[0].row, 0u);
  EXPECT_EQ(m.linkCells[0].col, 1u);
  EXPECT_EQ(m.linkCells[1].row, 1u);
  EXPECT_EQ(m.linkCells[1].col, 2u);
  for (const auto& c : m.linkCells) EXPECT_LT(c.row, c.col);
}

TEST(CenteredMatrix, BackwardLinkBelowDiagonal) {
  const auto g = LayeredGraph::checked(3, {1, 2, 3}, {{2, 0}});
  const auto m = layout_centered_matrix(g, 1);
  EXPECT_GT(m.linkCells[0].row, m.linkCells[0].col);
}

TEST(CenteredMatrix, SharedCellSize) {
  EXPECT_DOUBLE_EQ(matrix_cell_size(1600, 200), 8.0);
  EXPECT_THROW(matrix_cell_size(1600, 0), Error);
  const double cs = matrix_cell_size(1600, 200);
  const auto big = oracle::balanced_graph(1, 20, 10, 0.05, 0.1);
  const auto small = oracle::balanced_graph(1, 5, 10, 0.25, 0.25);
  EXPECT_DOUBLE_EQ(layout_centered_matrix(big, cs).bounds.h, 1600.0);
  EXPECT_DOUBLE_EQ(layout_centered_matrix(small, cs).bounds.h, 400.0);
}

TEST(CenteredMatrix, BijectionOrderingAndBlocks) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const auto g = oracle::random_graph(rng, 40, 8, 0.2);
    const auto m = layout_centered_matrix(g, 2);
    std::set<std::size_t> positions(m.position.begin(), m.position.end());
    EXPECT_EQ(positions.size(), g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v = u + 1; v < g.node_count(); ++v)
        if (g.layer_of(u) == g.layer_of(v)) EXPECT_LT(m.position[u], m.position[v]);
        else EXPECT_EQ(g.layer_of(u) < g.layer_of(v), m.position[u] < m.position[v]);
    std::set<std::pair<std::size_t, std::size_t>> cells;
    ASSERT_EQ(m.linkCells.size(), g.link_count());
    for (const auto& c : m.linkCells) {
      EXPECT_EQ(c.row, m.position[c.link.src]);
      EXPECT_EQ(c.col, m.position[c.link.dst]);
      EXPECT_NE(c.row, c.col);
      EXPECT_TRUE(cells.insert({c.row, c.col}).second);
    }
    std::size_t next = 0;
    for (const auto& b : m.blocks) {
      EXPECT_EQ(b.first, next);
      next += b.count;
    }
    EXPECT_EQ(next, g.node_count());
  }
}
