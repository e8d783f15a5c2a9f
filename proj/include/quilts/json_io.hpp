#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quilts/bundle.hpp"
#include "quilts/error.hpp"
#include "quilts/generator.hpp"
#include "quilts/graph.hpp"
#include "quilts/record.hpp"
#include "quilts/schedule.hpp"
#include "quilts/treatment.hpp"

// JSON documents exchanged by the CLI, the service and the browser client.
// Field names are listed in docs/schema.md. Objects keep insertion order so
// output is byte-stable.

namespace quilts {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kGraphSchema = "quilts.graph/1";
inline constexpr std::string_view kBundleSchema = "quilts.bundle/1";
inline constexpr std::string_view kTrialSchema = "quilts.trial/1";
inline constexpr std::string_view kScheduleSchema = "quilts.schedule/1";

namespace json_detail {

template <class F>
auto guarded(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(Errc::BadInput, std::string(what) + ": " + e.what());
  }
}

inline void expect_schema(const Json& j, std::string_view schema) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema").get<std::string>() != schema)
    throw Error(Errc::BadInput, "expected a document with schema " + std::string(schema));
}

}  // namespace json_detail

// --- treatment spec ------------------------------------------------------

inline Json to_json(const TreatmentSpec& s) {
  return Json{{"experiment", to_string(s.experiment)},
              {"nodes", s.nodes},
              {"layers", s.layers},
              {"linkDensity", s.linkDensity},
              {"skipDensity", s.skipDensity}};
}

inline TreatmentSpec spec_from_json(const Json& j) {
  return json_detail::guarded("spec", [&] {
    TreatmentSpec s;
    s.experiment = parse_experiment(j.at("experiment").get<std::string>());
    s.nodes = j.at("nodes").get<std::size_t>();
    s.layers = j.at("layers").get<int>();
    s.linkDensity = j.at("linkDensity").get<double>();
    s.skipDensity = j.at("skipDensity").get<double>();
    return s;
  });
}

// --- graph interchange ----------------------------------------------------

struct GraphProvenance {
  std::uint64_t seed = 0;
  TreatmentSpec spec;
  NodeId source = 0;
  NodeId destination = 0;
  std::size_t attempts = 0;
  std::map<RejectReason, std::size_t> rejections;
  std::uint64_t attemptSeed = 0;
};

struct GraphDocument {
  LayeredGraph graph;
  std::optional<GraphProvenance> provenance;
};

inline Json graph_json(const LayeredGraph& g, const std::optional<GraphProvenance>& prov = std::nullopt) {
  Json j;
  j["schema"] = kGraphSchema;
  j["nodeCount"] = g.node_count();
  j["layerCount"] = g.layer_count();
  j["layerOf"] = g.layer_assignment();
  Json links = Json::array();
  for (const auto& l : g.links()) links.push_back({l.src, l.dst});
  j["links"] = std::move(links);
  if (prov) {
    Json rej = Json::object();
    for (auto r : {RejectReason::NoPath, RejectReason::PathTooShort, RejectReason::PathTooLong,
                   RejectReason::NoSkipInPath, RejectReason::DoesNotFit}) {
      const auto it = prov->rejections.find(r);
      rej[std::string(to_string(r))] = it == prov->rejections.end() ? 0 : it->second;
    }
    j["provenance"] = Json{{"seed", prov->seed},
                           {"spec", to_json(prov->spec)},
                           {"source", prov->source},
                           {"destination", prov->destination},
                           {"attempts", prov->attempts},
                           {"attemptSeed", prov->attemptSeed},
                           {"rejections", std::move(rej)}};
  }
  return j;
}

inline GraphProvenance provenance_of(const GeneratedGraph& gg, const TreatmentSpec& spec, std::uint64_t seed) {
  return {seed, spec, gg.source, gg.destination, gg.attempts, gg.rejections, gg.attemptSeed};
}

inline GraphDocument graph_from_json(const Json& j) {
  json_detail::expect_schema(j, kGraphSchema);
  return json_detail::guarded("graph", [&] {
    const auto n = j.at("nodeCount").get<std::size_t>();
    auto layerOf = j.at("layerOf").get<std::vector<int>>();
    if (layerOf.size() != n) throw Error(Errc::InvalidGraph, "layerOf has " + std::to_string(layerOf.size()) +
                                                                 " entries for " + std::to_string(n) + " nodes");
    std::vector<Link> links;
    for (const auto& l : j.at("links")) {
      if (!l.is_array() || l.size() != 2) throw Error(Errc::BadInput, "link must be a [src, dst] pair");
      links.push_back({l[0].get<NodeId>(), l[1].get<NodeId>()});
    }
    GraphDocument doc{LayeredGraph::checked(j.at("layerCount").get<int>(), std::move(layerOf), std::move(links)), {}};
    if (j.contains("provenance")) {
      const auto& p = j.at("provenance");
      GraphProvenance prov;
      prov.seed = p.at("seed").get<std::uint64_t>();
      prov.spec = spec_from_json(p.at("spec"));
      prov.source = p.at("source").get<NodeId>();
      prov.destination = p.at("destination").get<NodeId>();
      prov.attempts = p.at("attempts").get<std::size_t>();
      prov.attemptSeed = p.value("attemptSeed", std::uint64_t{0});
      if (p.contains("rejections")) {
        for (auto r : {RejectReason::NoPath, RejectReason::PathTooShort, RejectReason::PathTooLong,
                       RejectReason::NoSkipInPath, RejectReason::DoesNotFit}) {
          const auto v = p.at("rejections").value(std::string(to_string(r)), std::size_t{0});
          if (v) prov.rejections[r] = v;
        }
      }
      doc.provenance = prov;
    }
    return doc;
  });
}

// --- layout bundle ---------------------------------------------------------

inline Json to_json(const Rect& r) { return Json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

inline Rect rect_from_json(const Json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(), j.at("h").get<double>()};
}

inline Json to_json(const Shape& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  if (s.kind == ShapeKind::Path) {
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back({p.x, p.y});
    j["points"] = std::move(pts);
    j["curved"] = s.curved;
  } else {
    j["x"] = s.x;
    j["y"] = s.y;
    if (s.kind != ShapeKind::Text) j["w"] = s.w;
    if (s.kind == ShapeKind::Rect || s.kind == ShapeKind::Text) j["h"] = s.h;
  }
  if (s.kind == ShapeKind::Text) j["text"] = s.text;
  j["fill"] = s.fill;
  j["stroke"] = s.stroke;
  j["strokeWidth"] = s.strokeWidth;
  j["role"] = s.role;
  if (s.element) j["element"] = s.element->str();
  return j;
}

inline ShapeKind parse_shape_kind(std::string_view s) {
  for (auto k : {ShapeKind::Rect, ShapeKind::Circle, ShapeKind::Text, ShapeKind::Path})
    if (to_string(k) == s) return k;
  throw Error(Errc::BadInput, "unknown shape kind '" + std::string(s) + "'");
}

inline Shape shape_from_json(const Json& j) {
  Shape s;
  s.kind = parse_shape_kind(j.at("kind").get<std::string>());
  if (s.kind == ShapeKind::Path) {
    for (const auto& p : j.at("points")) s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    s.curved = j.value("curved", false);
  } else {
    s.x = j.at("x").get<double>();
    s.y = j.at("y").get<double>();
    s.w = j.value("w", 0.0);
    s.h = j.value("h", 0.0);
  }
  s.text = j.value("text", std::string{});
  s.fill = j.value("fill", std::string("none"));
  s.stroke = j.value("stroke", std::string("none"));
  s.strokeWidth = j.value("strokeWidth", 0.0);
  s.role = j.value("role", std::string{});
  if (j.contains("element")) {
    const auto e = j.at("element").get<std::string>();
    s.element = ElementId::parse(e);
    if (!s.element) throw Error(Errc::BadInput, "bad element id '" + e + "'");
  }
  return s;
}

inline Json to_json(const LayoutBundle& b) {
  Json j;
  j["schema"] = kBundleSchema;
  j["depiction"] = to_string(b.depiction);
  j["style"] = b.style ? Json(to_string(*b.style)) : Json(nullptr);
  j["cellSize"] = b.cellSize;
  j["bounds"] = to_json(b.bounds);
  j["nodeCount"] = b.nodeCount;
  j["layerCount"] = b.layerCount;
  j["nodeLabels"] = b.nodeLabels;
  j["source"] = b.source ? Json(ElementId::node(*b.source).str()) : Json(nullptr);
  j["destination"] = b.destination ? Json(ElementId::node(*b.destination).str()) : Json(nullptr);
  Json shapes = Json::array();
  for (const auto& s : b.shapes) shapes.push_back(to_json(s));
  j["shapes"] = std::move(shapes);
  return j;
}

inline LayoutBundle bundle_from_json(const Json& j) {
  json_detail::expect_schema(j, kBundleSchema);
  return json_detail::guarded("bundle", [&] {
    LayoutBundle b;
    b.depiction = parse_depiction(j.at("depiction").get<std::string>());
    if (!j.at("style").is_null()) b.style = parse_skip_depiction(j.at("style").get<std::string>());
    b.cellSize = j.at("cellSize").get<double>();
    b.bounds = rect_from_json(j.at("bounds"));
    b.nodeCount = j.at("nodeCount").get<std::size_t>();
    b.layerCount = j.at("layerCount").get<int>();
    b.nodeLabels = j.at("nodeLabels").get<std::vector<std::string>>();
    auto node = [&](const char* key) -> std::optional<NodeId> {
      if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
      const auto id = ElementId::parse(j.at(key).get<std::string>());
      if (!id || !id->is_node()) throw Error(Errc::BadInput, std::string(key) + " must be a node id");
      return id->node_id();
    };
    b.source = node("source");
    b.destination = node("destination");
    for (const auto& s : j.at("shapes")) b.shapes.push_back(shape_from_json(s));
    return b;
  });
}

// --- schedule ----------------------------------------------------------------

inline Json to_json(const ScheduleCell& c) {
  return Json{{"index", c.index},
              {"session", c.session},
              {"condition", c.condition.name()},
              {"treatment", c.treatment},
              {"spec", to_json(c.spec)},
              {"seed", c.seed},
              {"practice", c.practice}};
}

inline ScheduleCell cell_from_json(const Json& j) {
  return json_detail::guarded("schedule cell", [&] {
    ScheduleCell c;
    c.index = j.at("index").get<std::size_t>();
    c.session = j.at("session").get<int>();
    c.condition = parse_condition(j.at("condition").get<std::string>());
    c.treatment = j.at("treatment").get<std::size_t>();
    c.spec = spec_from_json(j.at("spec"));
    c.seed = j.at("seed").get<std::uint64_t>();
    c.practice = j.at("practice").get<bool>();
    return c;
  });
}

inline Json to_json(const Schedule& s) {
  Json j;
  j["schema"] = kScheduleSchema;
  j["experiment"] = to_string(s.experiment);
  j["seed"] = s.seed;
  j["practicePerBlock"] = s.practicePerBlock;
  Json ps = Json::array();
  for (const auto& p : s.participants) {
    Json cells = Json::array();
    for (const auto& c : p.cells) cells.push_back(to_json(c));
    ps.push_back(Json{{"participant", p.participant}, {"permutation", p.permutation}, {"cells", std::move(cells)}});
  }
  j["participants"] = std::move(ps);
  return j;
}

inline Schedule schedule_from_json(const Json& j) {
  json_detail::expect_schema(j, kScheduleSchema);
  return json_detail::guarded("schedule", [&] {
    Schedule s;
    s.experiment = parse_experiment(j.at("experiment").get<std::string>());
    s.seed = j.at("seed").get<std::uint64_t>();
    s.practicePerBlock = j.value("practicePerBlock", std::size_t{0});
    for (const auto& p : j.at("participants")) {
      ParticipantSchedule ps;
      ps.participant = p.at("participant").get<std::size_t>();
      ps.permutation = p.at("permutation").get<std::size_t>();
      for (const auto& c : p.at("cells")) ps.cells.push_back(cell_from_json(c));
      s.participants.push_back(std::move(ps));
    }
    return s;
  });
}

// --- trial records (JSONL) ---------------------------------------------------

inline Json to_json(const TrialRecord& r) {
  Json clicks = Json::array();
  for (const auto& c : r.clicks) {
    Json cj{{"seq", c.sequence}, {"element", c.element}, {"atMs", c.atMs}};
    cj["clientTime"] = c.clientTime ? Json(*c.clientTime) : Json(nullptr);
    cj["result"] = c.result;
    clicks.push_back(std::move(cj));
  }
  return Json{{"schema", kTrialSchema},
              {"trialId", r.id()},
              {"participant", r.participant},
              {"trialIndex", r.trialIndex},
              {"session", r.session},
              {"condition", r.condition.name()},
              {"treatment", r.treatment},
              {"spec", to_json(r.spec)},
              {"seed", r.seed},
              {"practice", r.practice},
              {"source", r.source},
              {"destination", r.destination},
              {"status", to_string(r.outcome)},
              {"elapsedMs", r.elapsedMs},
              {"accuracy", r.accuracy()},
              {"clicks", std::move(clicks)}};
}

inline TrialRecord record_from_json(const Json& j) {
  json_detail::expect_schema(j, kTrialSchema);
  return json_detail::guarded("trial record", [&] {
    TrialRecord r;
    r.participant = j.at("participant").get<std::size_t>();
    r.trialIndex = j.at("trialIndex").get<std::size_t>();
    r.session = j.at("session").get<int>();
    r.condition = parse_condition(j.at("condition").get<std::string>());
    r.treatment = j.at("treatment").get<std::size_t>();
    r.spec = spec_from_json(j.at("spec"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.practice = j.at("practice").get<bool>();
    r.source = j.at("source").get<NodeId>();
    r.destination = j.at("destination").get<NodeId>();
    r.outcome = parse_trial_outcome(j.at("status").get<std::string>());
    r.elapsedMs = j.at("elapsedMs").get<std::int64_t>();
    for (const auto& c : j.at("clicks")) {
      ClickRecord cr;
      cr.sequence = c.at("seq").get<std::uint64_t>();
      cr.element = c.at("element").get<std::string>();
      cr.atMs = c.at("atMs").get<std::int64_t>();
      if (c.contains("clientTime") && !c.at("clientTime").is_null()) cr.clientTime = c.at("clientTime").get<double>();
      cr.result = c.at("result").get<std::string>();
      r.clicks.push_back(std::move(cr));
    }
    return r;
  });
}

inline std::string to_jsonl(const TrialRecord& r) { return to_json(r).dump() + "\n"; }

// Reads a JSONL log; blank lines are skipped.
inline std::vector<TrialRecord> read_trial_log(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw Error(Errc::BadInput, "log line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return out;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace quilts
