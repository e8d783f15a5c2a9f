// quiltctl: command-line front end for the quilts library.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quilts/http_api.hpp"
#include "quilts/quilts.hpp"

namespace fs = std::filesystem;
using namespace quilts;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadInput, "cannot write " + path);
  out << content;
}

std::string spec_file_name(const TreatmentSpec& s, std::uint64_t seed) {
  auto pct = [](double d) { return std::to_string(static_cast<int>(d * 100 + 0.5)); };
  return std::string(to_string(s.experiment)) + "-n" + std::to_string(s.nodes) + "-l" + std::to_string(s.layers) +
         "-d" + pct(s.linkDensity) + "-s" + pct(s.skipDensity) + "-seed" + std::to_string(seed) + ".json";
}

std::string generated_json(const TreatmentSpec& spec, std::uint64_t seed, std::size_t maxAttempts) {
  const auto gg = generate_until_valid(spec, seed, maxAttempts);
  return graph_json(gg.graph, provenance_of(gg, spec, seed)).dump(2) + "\n";
}

std::vector<ElementId> parse_elements(const std::vector<std::string>& items) {
  std::vector<ElementId> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      const auto id = ElementId::parse(tok);
      if (!id) throw Error(Errc::BadInput, "bad element id '" + tok + "'");
      out.push_back(*id);
    }
  }
  return out;
}

std::vector<TrialRecord> read_logs(const std::vector<std::string>& paths) {
  std::vector<TrialRecord> all;
  for (const auto& p : paths) {
    std::istringstream in(read_file(p));
    auto recs = read_trial_log(in);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  return all;
}

httplib::Server* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiltctl: layered-graph generation, layout, rendering and trial harness"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate constrained random layered graphs");
  std::string experiment = "exp1";
  std::size_t nodes = 50;
  int layers = 5;
  double links = 0.25, skips = 0.25;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::size_t maxAttempts = kDefaultMaxAttempts;
  bool grid = false;
  std::string out;
  gen->add_option("-e,--experiment", experiment, "exp1 or exp2")->capture_default_str();
  gen->add_option("-n,--nodes", nodes)->capture_default_str();
  gen->add_option("-l,--layers", layers)->capture_default_str();
  gen->add_option("--links", links, "proper-link density")->capture_default_str();
  gen->add_option("--skips", skips, "skip density (fraction of proper count)")->capture_default_str();
  gen->add_option("-s,--seed", seed)->capture_default_str();
  gen->add_option("--seeds", seeds, "with --grid: seeds seed..seed+N-1 per spec")->capture_default_str();
  gen->add_option("--max-attempts", maxAttempts)->capture_default_str();
  gen->add_flag("--grid", grid, "every treatment of the experiment; --out is a directory");
  gen->add_option("-o,--out", out, "output file (default stdout) or directory with --grid");

  // layout
  auto* lay = app.add_subcommand("layout", "Lay out a graph file as a bundle");
  std::string graphPath, depiction = "quilt", style = "mixed";
  double cellSize = 8;
  lay->add_option("-g,--graph", graphPath, "graph file ('-' for stdin)")->required();
  lay->add_option("-d,--depiction", depiction, "quilt, matrix or nodelink")->capture_default_str();
  lay->add_option("--style", style, "Quilt skip style: color, mixed or text")->capture_default_str();
  lay->add_option("--cell", cellSize, "Quilt cell size")->capture_default_str();
  lay->add_option("-o,--out", out);

  // render
  auto* ren = app.add_subcommand("render", "Render a bundle to SVG");
  std::string bundlePath;
  std::vector<std::string> highlight;
  std::string source, destination;
  ren->add_option("-b,--bundle", bundlePath, "bundle file ('-' for stdin)")->required();
  ren->add_option("--highlight", highlight, "element ids, comma separated (n3,l3-7)");
  ren->add_option("--source", source, "override source node id (n3)");
  ren->add_option("--destination", destination, "override destination node id");
  ren->add_option("-o,--out", out);

  // schedule
  auto* sch = app.add_subcommand("schedule", "Build a counterbalanced trial schedule");
  std::size_t participants = 18, practice = 0;
  sch->add_option("-e,--experiment", experiment)->capture_default_str();
  sch->add_option("-p,--participants", participants)->capture_default_str();
  sch->add_option("-s,--seed", seed)->capture_default_str();
  sch->add_option("--practice", practice, "practice trials before each depiction block")->capture_default_str();
  sch->add_option("-o,--out", out);

  // serve
  auto* srv = app.add_subcommand("serve", "Run the trial service");
  std::string schedulePath, bind = "127.0.0.1:8080", dataDir = "data";
  srv->add_option("--schedule", schedulePath, "schedule file")->required();
  srv->add_option("--bind", bind, "host:port")->envname("QUILTS_BIND")->capture_default_str();
  srv->add_option("--data-dir", dataDir, "directory for trials.jsonl")->envname("QUILTS_DATA_DIR")->capture_default_str();

  // replay
  auto* rep = app.add_subcommand("replay", "Re-run logged click sequences through the path engine");
  std::vector<std::string> logs;
  rep->add_option("logs", logs, "JSONL trial logs")->required();
  rep->add_option("--max-attempts", maxAttempts)->capture_default_str();
  rep->add_option("-o,--out", out);

  // summarize
  auto* sum = app.add_subcommand("summarize", "Per-condition means and standard errors");
  sum->add_option("logs", logs, "JSONL trial logs")->required();
  sum->add_option("-o,--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto e = parse_experiment(experiment);
      if (grid) {
        const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
        for (const auto& spec : treatment_grid(e))
          for (std::uint64_t s = seed; s < seed + seeds; ++s)
            write_file((dir / spec_file_name(spec, s)).string(), generated_json(spec, s, maxAttempts));
      } else {
        write_file(out, generated_json({nodes, layers, links, skips, e}, seed, maxAttempts));
      }
    } else if (lay->parsed()) {
      const auto doc = graph_from_json(parse_json(read_file(graphPath)));
      std::optional<NodeId> s, d;
      if (doc.provenance) s = doc.provenance->source, d = doc.provenance->destination;
      Condition c{parse_depiction(depiction), std::nullopt};
      if (c.depiction == Depiction::Quilt) c.style = parse_skip_depiction(style);
      DepictOptions opts;
      opts.quiltCellSize = cellSize;
      write_file(out, to_json(depict(doc.graph, c, s, d, opts)).dump(2) + "\n");
    } else if (ren->parsed()) {
      const auto bundle = bundle_from_json(parse_json(read_file(bundlePath)));
      RenderOptions opts;
      for (const auto& id : parse_elements(highlight)) opts.highlight.insert(id);
      auto node = [](const std::string& s) -> std::optional<NodeId> {
        if (s.empty()) return std::nullopt;
        const auto id = ElementId::parse(s);
        if (!id || !id->is_node()) throw Error(Errc::BadInput, "expected a node id, got '" + s + "'");
        return id->node_id();
      };
      opts.source = node(source);
      opts.destination = node(destination);
      write_file(out, render(bundle, opts));
    } else if (sch->parsed()) {
      write_file(out, to_json(build_schedule(parse_experiment(experiment), participants, seed, practice)).dump(2) + "\n");
    } else if (srv->parsed()) {
      const auto colon = bind.rfind(':');
      if (colon == std::string::npos) throw Error(Errc::BadInput, "--bind must be host:port");
      const auto host = bind.substr(0, colon);
      const int port = std::stoi(bind.substr(colon + 1));
      fs::create_directories(dataDir);
      ServiceConfig cfg;
      cfg.logPath = fs::path(dataDir) / "trials.jsonl";
      TrialService svc(schedule_from_json(parse_json(read_file(schedulePath))), cfg);
      httplib::Server server;
      install_routes(server, svc);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on " << host << ":" << port << ", log " << cfg.logPath->string() << "\n";
      if (!server.listen(host, port)) throw Error(Errc::BadInput, "cannot bind " + bind);
    } else if (rep->parsed()) {
      std::string report = "trial,recorded,replayed,match\n";
      std::size_t mismatches = 0;
      std::map<std::string, Stimulus> cache;
      for (const auto& r : read_logs(logs)) {
        const auto key = describe(r.spec) + "#" + std::to_string(r.seed);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, make_stimulus(r.spec, r.seed, maxAttempts)).first;
        const auto replayed = replay_outcome(r, it->second.graph);
        const bool match = replayed == r.outcome;
        mismatches += match ? 0 : 1;
        report += r.id() + "," + std::string(to_string(r.outcome)) + "," + std::string(to_string(replayed)) + "," +
                  (match ? "yes" : "no") + "\n";
      }
      write_file(out, report);
      return mismatches == 0 ? 0 : 3;
    } else if (sum->parsed()) {
      const auto recs = read_logs(logs);
      write_file(out, summary_csv(summarize(recs)));
    }
  } catch (const Error& e) {
    std::cerr << "quiltctl: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "quiltctl: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
