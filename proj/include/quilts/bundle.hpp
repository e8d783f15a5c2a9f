#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quilts/error.hpp"
#include "quilts/graph.hpp"

namespace quilts {

enum class Depiction { Quilt, CenteredMatrix, NodeLink };
enum class SkipDepiction { ColorOnly, Mixed, TextOnly };

constexpr std::string_view to_string(Depiction d) {
  switch (d) {
    case Depiction::Quilt: return "quilt";
    case Depiction::CenteredMatrix: return "matrix";
    case Depiction::NodeLink: return "nodelink";
  }
  return "?";
}

constexpr std::string_view to_string(SkipDepiction s) {
  switch (s) {
    case SkipDepiction::ColorOnly: return "color";
    case SkipDepiction::Mixed: return "mixed";
    case SkipDepiction::TextOnly: return "text";
  }
  return "?";
}

inline Depiction parse_depiction(std::string_view s) {
  if (s == "quilt") return Depiction::Quilt;
  if (s == "matrix") return Depiction::CenteredMatrix;
  if (s == "nodelink") return Depiction::NodeLink;
  throw Error(Errc::BadInput, "unknown depiction '" + std::string(s) + "'");
}

inline SkipDepiction parse_skip_depiction(std::string_view s) {
  if (s == "color") return SkipDepiction::ColorOnly;
  if (s == "mixed") return SkipDepiction::Mixed;
  if (s == "text") return SkipDepiction::TextOnly;
  throw Error(Errc::BadInput, "unknown skip depiction '" + std::string(s) + "'");
}

// Names a clickable graph element: "n<id>" for nodes, "l<src>-<dst>" for links.
struct ElementId {
  enum class Kind { Node, Link };

  Kind kind = Kind::Node;
  NodeId a = 0;
  NodeId b = 0;

  static ElementId node(NodeId n) { return {Kind::Node, n, 0}; }
  static ElementId link(Link l) { return {Kind::Link, l.src, l.dst}; }

  bool is_node() const { return kind == Kind::Node; }
  bool is_link() const { return kind == Kind::Link; }
  NodeId node_id() const { return a; }
  Link as_link() const { return {a, b}; }

  std::string str() const {
    return is_node() ? "n" + std::to_string(a) : "l" + std::to_string(a) + "-" + std::to_string(b);
  }

  static std::optional<ElementId> parse(std::string_view s) {
    auto number = [](std::string_view t, NodeId& out) {
      if (t.empty()) return false;
      const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
      return ec == std::errc{} && p == t.data() + t.size();
    };
    if (s.size() < 2) return std::nullopt;
    ElementId id;
    if (s[0] == 'n') {
      if (!number(s.substr(1), id.a)) return std::nullopt;
      return id;
    }
    if (s[0] == 'l') {
      const auto dash = s.find('-');
      if (dash == std::string_view::npos) return std::nullopt;
      id.kind = Kind::Link;
      if (!number(s.substr(1, dash - 1), id.a) || !number(s.substr(dash + 1), id.b)) return std::nullopt;
      return id;
    }
    return std::nullopt;
  }

  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  Point center() const { return {x + w / 2, y + h / 2}; }

  // Open-interior intersection: rectangles that only share an edge do not overlap.
  bool overlaps(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
  bool contains(const Rect& o, double eps = 1e-9) const {
    return o.x >= x - eps && o.y >= y - eps && o.right() <= right() + eps && o.bottom() <= bottom() + eps;
  }
  Rect united(const Rect& o) const {
    const double nx = std::min(x, o.x), ny = std::min(y, o.y);
    return {nx, ny, std::max(right(), o.right()) - nx, std::max(bottom(), o.bottom()) - ny};
  }
  double area() const { return w * h; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class ShapeKind { Rect, Circle, Text, Path };

constexpr std::string_view to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rect: return "rect";
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Text: return "text";
    case ShapeKind::Path: return "path";
  }
  return "?";
}

// One drawable primitive of a layout bundle.
//
//   Rect    x, y, w, h
//   Circle  centre (x, y), radius w
//   Text    centre (x, y), font size h, content `text`
//   Path    polyline through `points`; when `curved`, a quadratic curve
//           with points[1] as control point
struct Shape {
  ShapeKind kind = ShapeKind::Rect;
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
  std::vector<Point> points;
  bool curved = false;
  std::string fill = "none";
  std::string stroke = "none";
  double strokeWidth = 0;
  std::string text;
  // node | proper | skip | strip | submatrix | skip-band | block | link-normal |
  // link-backward | link-same-layer | label
  std::string role;
  std::optional<ElementId> element;

  Rect bounds() const {
    switch (kind) {
      case ShapeKind::Rect: return {x, y, w, h};
      case ShapeKind::Circle: return {x - w, y - w, 2 * w, 2 * w};
      case ShapeKind::Text: return {x - h / 2, y - h / 2, h, h};
      case ShapeKind::Path: {
        if (points.empty()) return {};
        Rect r{points.front().x, points.front().y, 0, 0};
        for (const auto& p : points) r = r.united({p.x, p.y, 0, 0});
        return r;
      }
    }
    return {};
  }
};

// Flat, depiction-independent description of a laid-out graph, consumed by
// the SVG renderer, the HTTP API and the browser client.
struct LayoutBundle {
  Depiction depiction = Depiction::Quilt;
  std::optional<SkipDepiction> style;
  double cellSize = 0;
  Rect bounds;
  std::size_t nodeCount = 0;
  int layerCount = 0;
  // Within-layer encoding of each node ("3", "B3"); used for markers.
  std::vector<std::string> nodeLabels;
  std::optional<NodeId> source;
  std::optional<NodeId> destination;
  std::vector<Shape> shapes;
};

}  // namespace quilts
