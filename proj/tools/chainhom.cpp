// chainhom: command-line front end for the chainhom library.
//
// Exit codes: 0 definite result, 2 undecided or unknown, 1 input error.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chainhom/covering.hpp"
#include "chainhom/fixtures.hpp"
#include "chainhom/io.hpp"
#include "chainhom/nullity.hpp"
#include "chainhom/oracle.hpp"
#include "chainhom/spectrum.hpp"
#include "chainhom/towers.hpp"

using namespace chainhom;
using io::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::size_t budget = 0;  // 0: command default
  unsigned jobs = 1;
  std::string out;
  bool report = false;
};

struct Outcome {
  int code = 0;
  json payload;       // used when `text` is empty
  std::string text;   // CSV payloads
};

struct Inputs {
  std::vector<std::string> paths;
};

Chain load_loop(const std::string& path, double scale) {
  const json j = io::read_json_file(path);
  Chain chain;
  if (j.is_array()) {
    chain.points = j.get<std::vector<PointIndex>>();
  } else if (j.is_object() && j.contains("points")) {
    chain.points = j.at("points").get<std::vector<PointIndex>>();
  } else {
    throw Error(ErrorKind::InvalidInput, path + ": expected a point list or a chain object");
  }
  chain.scale = scale;
  return chain;
}

std::string payload_text(const Outcome& o) { return o.text.empty() ? o.payload.dump(2) + "\n" : o.text; }

int code_for(Verdict3 v) { return v == Verdict3::Undecided ? 2 : 0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete chain homotopy on finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Random seed (all shipped generators are deterministic)")
      ->capture_default_str();
  app.add_option("--jobs", common.jobs, "Worker threads for independent scan cells")->capture_default_str();
  app.add_option("-o,--out", common.out, "Write the report to this file instead of stdout");
  app.add_flag("--report", common.report, "Wrap the payload with command echo, input digests and timing");

  Inputs inputs;
  std::string space_path, loop_path, tower_path;
  double scale = 0;
  PointIndex basepoint = 0;

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Generate a fixture space or tower as JSON");
  std::string kind;
  fixtures::Circle circle;
  fixtures::NGon ngon;
  fixtures::WarsawCircle warsaw;
  fixtures::SolenoidTower solenoid;
  fixtures::Cat0SphereTower cat0;
  fixtures::HornSurface horn;
  fixtures::CantorSuspension cantor;
  std::string circle_metric = "arc";
  std::size_t n = 0, depth = 0;
  fixture->add_option("kind", kind, "circle | ngon | warsaw | solenoid | cat0 | horn | cantor")
      ->required()
      ->check(CLI::IsMember({"circle", "ngon", "warsaw", "solenoid", "cat0", "horn", "cantor"}));
  fixture->add_option("--n", n, "Point count (circle, ngon)");
  fixture->add_option("--circumference", circle.circumference, "Circle or base solenoid circumference");
  fixture->add_option("--metric", circle_metric, "arc | chord")->check(CLI::IsMember({"arc", "chord"}));
  fixture->add_option("--side", ngon.side, "Polygon side length");
  fixture->add_option("--half-oscillations", warsaw.half_oscillations);
  fixture->add_option("--step", warsaw.step, "Warsaw sample spacing (<= 0: automatic)");
  fixture->add_option("--depth", depth, "Stage count (solenoid) or Cantor level (cantor)");
  fixture->add_option("--m", solenoid.m, "Points on the first solenoid stage");
  fixture->add_option("--branches", cat0.branches);
  fixture->add_option("--split-factor", cat0.split_factor);
  fixture->add_option("--splits", cat0.splits)->delimiter(',');
  fixture->add_option("--radii", cat0.radii)->delimiter(',');
  fixture->add_option("--half-samples", cat0.half_samples);
  fixture->add_option("--x-min", horn.x_min);
  fixture->add_option("--x-max", horn.x_max);
  fixture->add_option("--axial", horn.axial);
  fixture->add_option("--angular", horn.angular);
  fixture->add_option("--meridian-samples", cantor.meridian_samples);

  // components
  auto* components = app.add_subcommand("components", "Chain components at a scale");
  components->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  components->add_option("--scale", scale)->required();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Homotopy critical spectrum as CSV");
  spectrum->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  spectrum->add_option("--basepoint", basepoint)->capture_default_str();

  // null-check
  auto* null_check = app.add_subcommand("null-check", "Decide whether a loop is null-homotopic");
  null_check->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  null_check->add_option("loop", loop_path)->required()->check(CLI::ExistingFile);
  null_check->add_option("--scale", scale)->required();
  null_check->add_option("--budget", common.budget, "Visited-word budget of the search stage (default 1000000)");

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "Build the covering graph at a scale");
  std::size_t truncate = 4;
  cover_cmd->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  cover_cmd->add_option("--scale", scale)->required();
  cover_cmd->add_option("--basepoint", basepoint)->capture_default_str();
  cover_cmd->add_option("--budget", common.budget, "Coset budget (default 200000)");
  cover_cmd->add_option("--truncate", truncate, "Word-length radius of truncated covers")->capture_default_str();

  // lift
  auto* lift = app.add_subcommand("lift", "Lift a chain to the covering graph");
  std::size_t start_element = 0;
  lift->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  lift->add_option("chain", loop_path)->required()->check(CLI::ExistingFile);
  lift->add_option("--scale", scale)->required();
  lift->add_option("--basepoint", basepoint, "Cover basepoint")->capture_default_str();
  lift->add_option("--start-element", start_element, "Group element of the starting vertex")
      ->capture_default_str();
  lift->add_option("--budget", common.budget, "Coset budget (default 200000)");
  lift->add_option("--truncate", truncate)->capture_default_str();

  // tower-validate
  auto* tower_validate = app.add_subcommand("tower-validate", "Check tower indices and bonds");
  tower_validate->add_option("tower", tower_path)->required()->check(CLI::ExistingFile);

  // refine-check
  auto* refine = app.add_subcommand("refine-check", "Check that a composite bond is refining");
  std::size_t r = 0, t = 0;
  double eps = 0, delta = 0, kappa = 0;
  refine->add_option("tower", tower_path)->required()->check(CLI::ExistingFile);
  refine->add_option("--r", r, "Lower stage position")->required();
  refine->add_option("--t", t, "Upper stage position")->required();
  refine->add_option("--eps", eps)->required();
  refine->add_option("--delta", delta, "Default: eps/2");
  refine->add_option("--kappa", kappa, "Default: delta");
  refine->add_option("--budget", common.budget, "Visited-word budget per null check (default 1000000)");

  // invlim-scan
  auto* invlim = app.add_subcommand("invlim-scan", "Scan stage pairs and scales for the refining property");
  std::vector<double> eps_grid;
  invlim->add_option("tower", tower_path)->required()->check(CLI::ExistingFile);
  invlim->add_option("--eps-grid", eps_grid, "Comma-separated scales")->required()->delimiter(',');
  invlim->add_option("--kappa", kappa, "Fineness (<= 0: eps/2 per cell)");
  invlim->add_option("--budget", common.budget, "Visited-word budget per null check (default 1000000)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force homotopy search on short chains");
  std::size_t max_len = 8;
  oracle->add_option("space", space_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("loop", loop_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--scale", scale)->required();
  oracle->add_option("--max-len", max_len, "Longest intermediate chain")->capture_default_str();
  oracle->add_option("--budget", common.budget, "State budget (default 2000000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 1;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    NullBudget null_budget;
    if (common.budget > 0) null_budget.visited_words = common.budget;
    CoverOptions cover_options;
    cover_options.truncate_radius = truncate;
    if (common.budget > 0) cover_options.max_cosets = common.budget;

    if (*fixture) {
      fixtures::FixtureSpec spec;
      if (kind == "circle") {
        if (n > 0) circle.n = n;
        circle.metric = circle_metric == "chord" ? fixtures::CircleMetric::Chord : fixtures::CircleMetric::Arc;
        spec = circle;
      } else if (kind == "ngon") {
        if (n > 0) ngon.n = n;
        spec = ngon;
      } else if (kind == "warsaw") {
        spec = warsaw;
      } else if (kind == "solenoid") {
        if (depth > 0) solenoid.depth = depth;
        solenoid.circumference = circle.circumference;
        spec = solenoid;
      } else if (kind == "cat0") {
        spec = cat0;
      } else if (kind == "horn") {
        spec = horn;
      } else {
        if (depth > 0) cantor.depth = depth;
        spec = cantor;
      }
      const auto generated = fixtures::generate(spec, common.seed);
      outcome.payload = std::visit([](const auto& g) { return io::to_json(g); }, generated);
    } else if (*components) {
      inputs.paths = {space_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      const auto part = chain_components(space, scale);
      outcome.payload = {{"scale", scale}, {"count", part.count}, {"component", part.component}};
    } else if (*spectrum) {
      inputs.paths = {space_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      outcome.text = io::spectrum_csv(critical_spectrum(space, basepoint, common.jobs));
    } else if (*null_check) {
      inputs.paths = {space_path, loop_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      const auto verdict = is_null(space, scale, load_loop(loop_path, scale), null_budget);
      outcome.payload = io::to_json(verdict);
      outcome.code = verdict.status == NullStatus::Unknown ? 2 : 0;
    } else if (*cover_cmd) {
      inputs.paths = {space_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      const auto cover = build_cover(space, scale, basepoint, cover_options);
      outcome.payload = io::to_json(cover, space);
    } else if (*lift) {
      inputs.paths = {space_path, loop_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      const auto chain = load_loop(loop_path, scale);
      const auto cover = build_cover(space, scale, basepoint, cover_options);
      if (cover.slot.at(chain.points.front()) == CoveringGraph::npos) {
        throw Error(ErrorKind::WrongComponent, "chain starts outside the covered component");
      }
      if (start_element >= cover.group_order()) {
        throw Error(ErrorKind::InvalidInput, "start element out of range");
      }
      const auto result = lift_chain(space, cover, chain, cover.vertex(chain.points.front(), start_element));
      outcome.payload = io::to_json(result, cover);
      outcome.payload["cover_status"] = to_string(cover.status);
    } else if (*tower_validate) {
      inputs.paths = {tower_path};
      const auto tower = io::tower_from_json(io::read_json_file(tower_path));
      const auto violation = validate_tower(tower);
      outcome.payload = {{"valid", !violation}, {"stages", tower.size()}};
      if (violation) {
        outcome.payload["violation"] = {{"kind", violation->kind},
                                        {"stage", violation->stage},
                                        {"points", violation->points},
                                        {"message", violation->message}};
        outcome.code = 1;
      }
    } else if (*refine) {
      inputs.paths = {tower_path};
      const auto tower = io::tower_from_json(io::read_json_file(tower_path));
      if (auto violation = validate_tower(tower)) throw Error(ErrorKind::InvalidInput, violation->message);
      RefiningOptions options;
      options.delta = delta;
      options.kappa = kappa;
      options.budget = null_budget;
      const auto result = check_refining(tower, r, t, eps, options);
      outcome.payload = io::to_json(result);
      outcome.payload["r"] = r;
      outcome.payload["t"] = t;
      outcome.payload["gref"] = io::to_json(gref_certificate(tower, r, t, eps));
      outcome.code = code_for(result.status);
    } else if (*invlim) {
      inputs.paths = {tower_path};
      const auto tower = io::tower_from_json(io::read_json_file(tower_path));
      if (auto violation = validate_tower(tower)) throw Error(ErrorKind::InvalidInput, violation->message);
      const auto report = invlim_scan(tower, eps_grid, kappa, null_budget, common.jobs);
      outcome.text = io::invlim_csv(report);
      outcome.code = code_for(report.summary);
    } else if (*oracle) {
      inputs.paths = {space_path, loop_path};
      const auto space = io::space_from_json(io::read_json_file(space_path));
      const auto result = bfs_homotopy_oracle(space, scale, load_loop(loop_path, scale), max_len,
                                              common.budget > 0 ? common.budget : 2000000);
      outcome.payload = io::to_json(result);
      outcome.code = result.status == OracleStatus::Exhausted ? 2 : 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const io::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text = payload_text(outcome);
  if (common.report) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::vector<std::string> command(argv, argv + argc);
    json digests = json::object();
    for (const auto& p : inputs.paths) digests[p] = io::fnv1a_hex(io::read_file(p));
    json report{{"command", command},
                {"seed", common.seed},
                {"inputs", digests},
                {"payload_digest", io::fnv1a_hex(text)},
                {"exit_code", outcome.code},
                {"seconds", seconds}};
    if (outcome.text.empty()) {
      report["payload"] = outcome.payload;
    } else {
      report["payload"] = outcome.text;
    }
    text = report.dump(2) + "\n";
  }

  try {
    if (common.out.empty()) {
      std::cout << text;
    } else {
      io::write_file(common.out, text);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return outcome.code;
}
