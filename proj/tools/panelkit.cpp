// panelkit command-line front end.
//
// Exit codes: 0 success (for verify-star: every evaluated placement is
// blocked), 2 a witness was found, 1 any error.

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "panelkit/counterexample.hpp"
#include "panelkit/error.hpp"
#include "panelkit/io.hpp"
#include "panelkit/linking.hpp"

using namespace panelkit;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kWitness = 2;

struct SceneOptions {
  std::string config_path;
  bool demo = false;
  bool control = false;
  std::optional<unsigned> grid_shells;
  std::optional<unsigned> grid_dirs;
  std::optional<unsigned> n;
  std::optional<std::string> epsilon;
  unsigned threads = 1;

  void attach(CLI::App* cmd, bool with_grid) {
    auto* cfg = cmd->add_option("--config", config_path, "scene config JSON");
    auto* d = cmd->add_flag("--demo", demo, "use the built-in default configuration");
    auto* c = cmd->add_flag("--control", control, "use the built-in short-arc control configuration");
    cfg->excludes(d)->excludes(c);
    d->excludes(c);
    if (with_grid) {
      cmd->add_option("--grid-shells", grid_shells, "override grid.shells");
      cmd->add_option("--grid-dirs", grid_dirs, "override grid.directions");
      cmd->add_option("--n", n, "override n");
      cmd->add_option("--epsilon", epsilon, "override epsilon (p/q)");
      cmd->add_option("--threads", threads, "worker cap")->check(CLI::Range(1u, 256u));
    }
  }

  // Loads the config and applies overrides, recording both in the manifest.
  SceneConfig load(RunManifest& m) const {
    SceneConfig cfg;
    if (demo) {
      cfg = double_spiral_config();
      m.config_path = "<demo>";
    } else if (control) {
      cfg = control_short_arc_config();
      m.config_path = "<control>";
    } else if (!config_path.empty()) {
      cfg = config_from_json(read_json_file(config_path));
      m.config_path = config_path;
    } else {
      throw Error(ErrorKind::InvalidArgument, "one of --config, --demo, --control is required");
    }
    m.config_hash = config_hash(cfg);
    if (grid_shells) {
      cfg.grid.shells = *grid_shells;
      m.overrides.emplace_back("grid.shells", std::to_string(*grid_shells));
    }
    if (grid_dirs) {
      cfg.grid.directions = *grid_dirs;
      m.overrides.emplace_back("grid.directions", std::to_string(*grid_dirs));
    }
    if (n) {
      cfg.n = *n;
      m.overrides.emplace_back("n", std::to_string(*n));
    }
    if (epsilon) {
      try {
        cfg.epsilon = parse_scalar(*epsilon);
      } catch (const Error&) {
        throw Error(ErrorKind::MalformedConfig, "--epsilon: not a rational: '" + *epsilon + "'");
      }
      m.overrides.emplace_back("epsilon", to_string(cfg.epsilon));
    }
    return cfg;
  }
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::string point_text(const Point3& p) {
  const auto d = to_doubles(p);
  return "(" + std::to_string(d[0]) + ", " + std::to_string(d[1]) + ", " + std::to_string(d[2]) + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact PL geometry for spatial-graph panel checks and the vertex-split counterexample"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SceneOptions star_opts;
  bool full_dump = false;
  std::string star_out;
  auto* star = app.add_subcommand("verify-star", "count blocked anchor segments over a placement grid");
  star_opts.attach(star, true);
  star->add_flag("--full-dump", full_dump, "include every placement in the report");
  star->add_option("--out", star_out, "report path (default stdout)");

  SceneOptions eq_opts;
  std::optional<unsigned> samples;
  std::string eq_out;
  auto* equator = app.add_subcommand("equator", "test the upper-hemisphere claim against Delta");
  eq_opts.attach(equator, true);
  equator->add_option("--samples", samples, "upper-hemisphere sample count");
  equator->add_option("--out", eq_out, "report path (default stdout)");

  std::string embedding_path;
  size_t max_cycle_len = 8;
  unsigned lk_threads = 1;
  std::string lk_out;
  auto* lk = app.add_subcommand("lk", "linking numbers of all disjoint cycle pairs");
  lk->add_option("--embedding", embedding_path, "embedding JSON")->required();
  lk->add_option("--max-cycle-len", max_cycle_len, "longest cycle enumerated")->check(CLI::Range(3, 64));
  lk->add_option("--threads", lk_threads, "worker cap")->check(CLI::Range(1u, 256u));
  lk->add_option("--out", lk_out, "report path (default stdout)");

  SceneOptions export_opts;
  std::string obj_path;
  std::string scene_json_path;
  auto* exp = app.add_subcommand("export", "write the scene meshes as OBJ");
  export_opts.attach(exp, false);
  exp->add_option("--obj", obj_path, "OBJ output path")->required();
  exp->add_option("--scene-json", scene_json_path, "also write the exact scene JSON");

  SceneOptions config_opts;
  std::string config_out;
  auto* config = app.add_subcommand("config", "print a built-in configuration as JSON");
  config_opts.attach(config, false);
  config->add_option("--out", config_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*star) {
      RunManifest m{.command = "verify-star"};
      const SceneConfig cfg = star_opts.load(m);
      if (full_dump) m.overrides.emplace_back("full_dump", "true");
      if (!star_out.empty()) m.outputs.push_back(star_out);
      const Scene scene = build_scene(cfg);
      const StarReport report = verify_star(scene, cfg, star_opts.threads);
      emit(star_out, dump(star_report_to_json(report, m, full_dump)));
      const auto& s = report.summary;
      std::cerr << "placements " << s.total << ", evaluated " << s.evaluated << ", skipped " << s.skipped
                << ", min blocked " << s.min_blocked << "\n";
      if (s.min_blocked < 0) {
        std::cerr << "error: every placement was skipped\n";
        return kError;
      }
      if (s.min_blocked == 0) {
        std::cerr << "witness: x = " << point_text(report.placements[s.witnesses.front()].x)
                  << " misses all of a1x, b1x, cx\n";
        return kWitness;
      }
      return kOk;
    }
    if (*equator) {
      RunManifest m{.command = "equator"};
      SceneConfig cfg = eq_opts.load(m);
      if (samples) {
        cfg.equator.samples = *samples;
        m.overrides.emplace_back("equator.samples", std::to_string(*samples));
      }
      if (eq_opts.grid_shells) cfg.equator.grid.shells = *eq_opts.grid_shells;
      if (eq_opts.grid_dirs) cfg.equator.grid.directions = *eq_opts.grid_dirs;
      if (!eq_out.empty()) m.outputs.push_back(eq_out);
      const Scene scene = build_scene(cfg);
      const EquatorReport report = check_equator_claim(scene, cfg, cfg.equator.samples, eq_opts.threads);
      emit(eq_out, dump(equator_report_to_json(report, m)));
      std::cerr << "premise placements " << report.premise_count << ", pairs checked " << report.pairs_checked
                << ", counter-pairs " << report.counter_count << (report.vacuous ? " (vacuous)" : "") << "\n";
      return report.counter_count > 0 ? kWitness : kOk;
    }
    if (*lk) {
      RunManifest m{.command = "lk", .config_path = embedding_path};
      m.overrides.emplace_back("max_cycle_len", std::to_string(max_cycle_len));
      if (!lk_out.empty()) m.outputs.push_back(lk_out);
      const Json doc = read_json_file(embedding_path);
      m.config_hash = fnv1a64_hex(doc.dump());
      const LinkReport report = pairwise_link_scan(embedding_from_json(doc), max_cycle_len, lk_threads);
      emit(lk_out, dump(link_report_to_json(report, m)));
      size_t linked = 0;
      for (const auto& p : report.pairs) linked += p.linking_number != 0;
      std::cerr << report.pairs.size() << " disjoint cycle pairs, " << linked << " linked\n";
      return kOk;
    }
    if (*exp) {
      RunManifest m{.command = "export"};
      const SceneConfig cfg = export_opts.load(m);
      const Scene scene = build_scene(cfg);
      write_text_file(obj_path, scene_to_obj(scene));
      if (!scene_json_path.empty()) write_text_file(scene_json_path, dump(scene_to_json(scene)));
      return kOk;
    }
    if (*config) {
      RunManifest m{.command = "config"};
      const SceneConfig cfg = config_opts.load(m);
      emit(config_out, dump(config_to_json(cfg)));
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
