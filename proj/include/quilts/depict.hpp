#pragma once

#include <algorithm>
#include <optional>

#include "quilts/bundle.hpp"
#include "quilts/matrix_layout.hpp"
#include "quilts/nodelink_layout.hpp"
#include "quilts/quilt_layout.hpp"
#include "quilts/schedule.hpp"
#include "quilts/treatment.hpp"

namespace quilts {

struct DepictOptions {
  double quiltCellSize = 8;
  double matrixHeight = 1600;
  // Largest graph of the session; the matrix cell size is shared by all
  // graphs so 200 nodes fill the height.
  std::size_t matrixMaxNodes = 200;
  NodeLinkParams nodeLink;
};

// Lays out `g` for one condition and returns its bundle.
inline LayoutBundle depict(const LayeredGraph& g, const Condition& c, std::optional<NodeId> source = std::nullopt,
                           std::optional<NodeId> destination = std::nullopt, const DepictOptions& opts = {}) {
  LayoutBundle b;
  switch (c.depiction) {
    case Depiction::Quilt:
      b = to_bundle(layout_quilt(g, c.style.value_or(SkipDepiction::Mixed), opts.quiltCellSize), g);
      break;
    case Depiction::CenteredMatrix: {
      const auto maxNodes = std::max(opts.matrixMaxNodes, g.node_count());
      b = to_bundle(layout_centered_matrix(g, matrix_cell_size(opts.matrixHeight, maxNodes)), g);
      break;
    }
    case Depiction::NodeLink:
      b = to_bundle(layout_node_link(g, opts.nodeLink), g);
      break;
  }
  b.source = source;
  b.destination = destination;
  return b;
}

}  // namespace quilts
