#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/error.hpp"
#include "quilts/graph.hpp"

namespace quilts {

struct Chromaticity {
  double hue = 0;  // degrees
  double saturation = 0;
  friend bool operator==(const Chromaticity&, const Chromaticity&) = default;
};

// Manually ordered so that consecutive layers are far apart in hue; every
// entry has a distinct hue (24 degree grid), saturation alternates.
inline constexpr std::array<Chromaticity, 15> kLayerPalette{{
    {0, 0.85},
    {168, 0.70},
    {336, 0.60},
    {144, 0.85},
    {312, 0.70},
    {120, 0.60},
    {288, 0.85},
    {96, 0.70},
    {264, 0.60},
    {72, 0.85},
    {240, 0.70},
    {48, 0.60},
    {216, 0.85},
    {24, 0.70},
    {192, 0.60},
}};

inline constexpr double kBrightnessFloor = 0.35;
inline constexpr double kMixedBrightness = 1.0;
inline constexpr Chromaticity kNeutral{0, 0};
inline constexpr double kNeutralBrightness = 0.92;

// HSB (a.k.a. HSV) to 8-bit sRGB, channels rounded to nearest.
inline std::string hsb_hex(Chromaticity c, double brightness) {
  const double h = std::fmod(std::fmod(c.hue, 360.0) + 360.0, 360.0) / 60.0;
  const double chroma = brightness * c.saturation;
  const double x = chroma * (1 - std::fabs(std::fmod(h, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = chroma, g = x; break;
    case 1: r = x, g = chroma; break;
    case 2: g = chroma, b = x; break;
    case 3: g = x, b = chroma; break;
    case 4: r = x, b = chroma; break;
    default: r = chroma, b = x; break;
  }
  const double m = brightness - chroma;
  auto channel = [m](double v) { return static_cast<unsigned>(std::lround(std::clamp(v + m, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
  return buf;
}

inline char layer_letter(int layer) { return static_cast<char>('A' + (layer - 1)); }

struct NodeEncoding {
  Chromaticity chroma;
  double brightness = 1;
  // Empty for the color-only scheme.
  std::string label;
  std::string fill;
};

struct ColorMap {
  SkipDepiction style = SkipDepiction::Mixed;
  std::vector<Chromaticity> layers;  // index layer-1
  std::vector<NodeEncoding> nodes;   // index node id

  const Chromaticity& layer(int k) const { return layers.at(static_cast<std::size_t>(k - 1)); }
  const NodeEncoding& node(NodeId n) const { return nodes.at(n); }
};

inline ColorMap assign_colors(const LayeredGraph& g, SkipDepiction style) {
  const int L = g.layer_count();
  if (L > static_cast<int>(kLayerPalette.size()))
    throw Error(Errc::TooManyLayers, std::to_string(L) + " layers exceed the " +
                                         std::to_string(kLayerPalette.size()) + "-entry palette");
  ColorMap map;
  map.style = style;
  for (int k = 1; k <= L; ++k)
    map.layers.push_back(style == SkipDepiction::TextOnly ? kNeutral : kLayerPalette[static_cast<std::size_t>(k - 1)]);

  const auto sizes = g.layer_sizes();
  map.nodes.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const int k = g.layer_of(n);
    const auto i = g.index_in_layer(n);
    const auto count = sizes[static_cast<std::size_t>(k - 1)];
    auto& e = map.nodes[n];
    e.chroma = map.layer(k);
    switch (style) {
      case SkipDepiction::ColorOnly:
        e.brightness = count > 1 ? 1.0 - (1.0 - kBrightnessFloor) * static_cast<double>(i) / static_cast<double>(count - 1)
                                 : 1.0;
        break;
      case SkipDepiction::Mixed:
        e.brightness = kMixedBrightness;
        e.label = std::to_string(i + 1);
        break;
      case SkipDepiction::TextOnly:
        e.brightness = kNeutralBrightness;
        e.label = std::string(1, layer_letter(k)) + std::to_string(i + 1);
        break;
    }
    e.fill = hsb_hex(e.chroma, e.brightness);
  }
  return map;
}

// 1-based within-layer number; the marker label for matrix and node-link views.
inline std::string node_number_label(const LayeredGraph& g, NodeId n) { return std::to_string(g.index_in_layer(n) + 1); }

}  // namespace quilts
