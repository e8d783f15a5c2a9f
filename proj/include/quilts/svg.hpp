#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/bundle.hpp"
#include "quilts/error.hpp"

namespace quilts {

inline constexpr std::string_view kHighlightColor = "#e00000";

struct RenderOptions {
  std::set<ElementId> highlight;
  std::optional<NodeId> source;       // falls back to bundle.source
  std::optional<NodeId> destination;  // falls back to bundle.destination
  // Canvas size; defaults to the bundle bounds.
  std::optional<double> width;
  std::optional<double> height;
};

namespace svg_detail {

// Fixed two decimals, no locale, "-0.00" folded to "0.00".
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string path_data(const Shape& s) {
  std::string d;
  if (s.points.empty()) return d;
  d = "M" + num(s.points[0].x) + " " + num(s.points[0].y);
  if (s.curved && s.points.size() == 3) {
    d += " Q" + num(s.points[1].x) + " " + num(s.points[1].y) + " " + num(s.points[2].x) + " " + num(s.points[2].y);
  } else {
    for (std::size_t i = 1; i < s.points.size(); ++i) d += " L" + num(s.points[i].x) + " " + num(s.points[i].y);
  }
  return d;
}

inline std::string paint(const std::string& fill, const std::string& stroke, double strokeWidth) {
  std::string out = " fill=\"" + escape(fill) + "\"";
  if (stroke != "none") out += " stroke=\"" + escape(stroke) + "\" stroke-width=\"" + num(strokeWidth) + "\"";
  return out;
}

inline std::string element(const Shape& s, std::string_view extra = {}) {
  const std::string ex(extra);
  switch (s.kind) {
    case ShapeKind::Rect:
      return "<rect" + ex + " x=\"" + num(s.x) + "\" y=\"" + num(s.y) + "\" width=\"" + num(s.w) + "\" height=\"" +
             num(s.h) + "\"" + paint(s.fill, s.stroke, s.strokeWidth) + "/>";
    case ShapeKind::Circle:
      return "<circle" + ex + " cx=\"" + num(s.x) + "\" cy=\"" + num(s.y) + "\" r=\"" + num(s.w) + "\"" +
             paint(s.fill, s.stroke, s.strokeWidth) + "/>";
    case ShapeKind::Text:
      return "<text" + ex + " x=\"" + num(s.x) + "\" y=\"" + num(s.y) + "\" font-size=\"" + num(s.h) +
             "\" text-anchor=\"middle\" dominant-baseline=\"central\"" + paint(s.fill, s.stroke, s.strokeWidth) + ">" +
             escape(s.text) + "</text>";
    case ShapeKind::Path:
      return "<path" + ex + " d=\"" + path_data(s) + "\"" + paint(s.fill, s.stroke, s.strokeWidth) + "/>";
  }
  return {};
}

// Red copy of a highlighted shape: areas are filled, curves re-stroked.
inline std::optional<Shape> highlighted(const Shape& s) {
  Shape h = s;
  switch (s.kind) {
    case ShapeKind::Text: return std::nullopt;
    case ShapeKind::Path:
      h.stroke = std::string(kHighlightColor);
      h.strokeWidth = s.strokeWidth * 2;
      return h;
    case ShapeKind::Rect:
    case ShapeKind::Circle:
      h.fill = std::string(kHighlightColor);
      return h;
  }
  return std::nullopt;
}

}  // namespace svg_detail

// Marker constants (not in the source material; chosen for legibility).
inline constexpr double kMarkerDotScale = 0.22;    // dot radius / node cell
inline constexpr double kMarkerFontScale = 0.7;    // label size / node cell
inline constexpr double kMarkerBoxScale = 1.5;     // box side / node extent

// Renders a layout bundle. Output is a pure function of (bundle, opts).
//
// Layout of the document:
//   <g id="base">       every shape in bundle order; shapes with an element
//                        id are grouped under <g id="n3"> / <g id="l3-7">
//   <g id="highlight">  red copies of highlighted elements (omitted if none)
//   <g id="markers">    source / destination markers (omitted if none)
inline std::string render(const LayoutBundle& b, const RenderOptions& opts = {}) {
  using namespace svg_detail;
  const Rect canvas{b.bounds.x, b.bounds.y, opts.width.value_or(b.bounds.w), opts.height.value_or(b.bounds.h)};
  for (std::size_t i = 0; i < b.shapes.size(); ++i) {
    if (!canvas.contains(b.shapes[i].bounds(), 1e-6))
      throw Error(Errc::ShapeOutOfBounds, "shape " + std::to_string(i) + " (" + b.shapes[i].role + ") leaves the canvas");
  }

  // Element -> shape indices, in order of first appearance.
  std::vector<ElementId> order;
  std::map<ElementId, std::vector<std::size_t>> byElement;
  for (std::size_t i = 0; i < b.shapes.size(); ++i) {
    if (!b.shapes[i].element) continue;
    auto& v = byElement[*b.shapes[i].element];
    if (v.empty()) order.push_back(*b.shapes[i].element);
    v.push_back(i);
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(canvas.w) + "\" height=\"" +
         num(canvas.h) + "\" viewBox=\"" + num(canvas.x) + " " + num(canvas.y) + " " + num(canvas.w) + " " +
         num(canvas.h) + "\" data-depiction=\"" + std::string(to_string(b.depiction)) + "\">\n";
  out += "<g id=\"base\">\n";
  std::set<ElementId> emitted;
  for (const auto& s : b.shapes) {
    if (!s.element) {
      out += element(s, " class=\"" + escape(s.role) + "\"") + "\n";
      continue;
    }
    if (!emitted.insert(*s.element).second) continue;
    out += "<g id=\"" + s.element->str() + "\">\n";
    for (auto i : byElement[*s.element])
      out += element(b.shapes[i], " class=\"" + escape(b.shapes[i].role) + "\"") + "\n";
    out += "</g>\n";
  }
  out += "</g>\n";

  if (!opts.highlight.empty()) {
    out += "<g id=\"highlight\">\n";
    for (const auto& id : order) {
      if (!opts.highlight.contains(id)) continue;
      for (auto i : byElement[id]) {
        if (auto h = highlighted(b.shapes[i])) out += element(*h, " data-element=\"" + id.str() + "\"") + "\n";
      }
    }
    out += "</g>\n";
  }

  const auto src = opts.source ? opts.source : b.source;
  const auto dst = opts.destination ? opts.destination : b.destination;
  auto nodeBox = [&](NodeId n) -> std::optional<Rect> {
    auto it = byElement.find(ElementId::node(n));
    if (it == byElement.end()) return std::nullopt;
    for (auto i : it->second)
      if (b.shapes[i].role == "node") return b.shapes[i].bounds();
    return b.shapes[it->second.front()].bounds();
  };
  auto label = [&](NodeId n) { return n < b.nodeLabels.size() ? b.nodeLabels[n] : std::to_string(n); };

  std::string markers;
  for (auto [node, which] : {std::pair{src, "source"}, std::pair{dst, "destination"}}) {
    if (!node) continue;
    const auto box = nodeBox(*node);
    if (!box) throw Error(Errc::BadInput, std::string(which) + " node n" + std::to_string(*node) + " is not in the bundle");
    const auto c = box->center();
    const double side = std::min(box->w, box->h);
    const std::string tag = " data-marker=\"" + std::string(which) + "\"";
    Shape text;
    text.kind = ShapeKind::Text;
    text.x = c.x, text.y = c.y, text.h = side * kMarkerFontScale;
    text.text = label(*node);
    if (b.depiction == Depiction::Quilt) {
      const auto style = b.style.value_or(SkipDepiction::Mixed);
      if (style == SkipDepiction::ColorOnly) {
        Shape dot;
        dot.kind = ShapeKind::Circle;
        dot.x = c.x, dot.y = c.y, dot.w = side * kMarkerDotScale;
        dot.fill = "#ffffff";
        markers += element(dot, tag) + "\n";
      } else {
        text.fill = style == SkipDepiction::Mixed ? "#ffffff" : std::string(kHighlightColor);
        markers += element(text, tag) + "\n";
      }
    } else {
      Shape r;
      r.kind = ShapeKind::Rect;
      const double s = side * kMarkerBoxScale;
      r.x = c.x - s / 2, r.y = c.y - s / 2, r.w = s, r.h = s;
      r.fill = std::string(which) == "source" ? std::string(kHighlightColor) : "#000000";
      text.h = s * kMarkerFontScale;
      text.fill = "#ffffff";
      markers += element(r, tag) + "\n" + element(text, tag) + "\n";
    }
  }
  if (!markers.empty()) out += "<g id=\"markers\">\n" + markers + "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace quilts
