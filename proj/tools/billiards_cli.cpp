// Command-line front end. Exit codes: 0 success, 1 invalid input or failed
// property, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "billiards/billiard.hpp"
#include "billiards/error.hpp"
#include "billiards/experiments.hpp"
#include "billiards/partition.hpp"
#include "billiards/polygon_io.hpp"
#include "billiards/svg.hpp"
#include "billiards/unfolding.hpp"

namespace {

using namespace billiards;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LaunchArgs {
  std::string edge;
  double offset{0.0};
  double theta{0.0};
  std::size_t bounces{0};
  std::string svg;
};

void add_launch_options(CLI::App& cmd, LaunchArgs& args, bool svg_required) {
  cmd.add_option("--edge", args.edge, "Edge label of the launch point")->required();
  cmd.add_option("--offset", args.offset, "Distance from the edge start")->required();
  cmd.add_option("--theta", args.theta, "Angle from the edge direction, radians in (0, pi)")->required();
  cmd.add_option("--bounces", args.bounces, "Number of boundary hits")->required();
  auto* svg = cmd.add_option("--svg", args.svg, "Write an SVG rendering to this file");
  if (svg_required) svg->required();
}

Polygon load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw UsageError("cannot read polygon file " + path);
  return read_polygon_file(path);
}

PhasePoint launch_point(const Polygon& polygon, const LaunchArgs& args) {
  if (!polygon.find_edge(args.edge)) throw UsageError("unknown edge label '" + args.edge + "'");
  try {
    return make_phase_point(polygon, args.edge, args.offset, args.theta);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int cmd_validate(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw UsageError("cannot read polygon file " + path);
  Polygon polygon = [&] {
    try {
      return read_polygon_file(path);
    } catch (const Error& e) {
      std::cout << "valid=false code=" << to_string(e.code()) << '\n';
      throw;
    }
  }();
  std::cout << "edges=" << polygon.edge_count() << '\n';
  for (const Edge& e : polygon.edges()) {
    std::cout << "edge label=" << e.label << " ring=" << e.ring << " start=" << format_real(e.start.x) << ','
              << format_real(e.start.y) << " end=" << format_real(e.end.x) << ',' << format_real(e.end.y)
              << " length=" << format_real(e.length) << '\n';
  }
  if (polygon.holes().empty()) {
    std::cout << "holes=none\n";
  } else {
    std::cout << "holes=" << polygon.holes().size() << '\n';
    for (std::size_t h = 0; h < polygon.holes().size(); ++h) {
      std::cout << "hole index=" << h << " width=" << format_real(convex_width(polygon.holes()[h])) << '\n';
    }
  }
  std::cout << "diameter=" << format_real(polygon.diameter()) << '\n' << "valid=true\n";
  return kOk;
}

int cmd_simulate(const std::string& path, const LaunchArgs& args) {
  const Polygon polygon = load(path);
  const Orbit orbit = iterate(polygon, launch_point(polygon, args), args.bounces);
  std::cout << format_orbit(polygon, orbit);
  if (!args.svg.empty()) write_file(args.svg, orbit_svg(polygon, orbit));
  return kOk;
}

int cmd_code(const std::string& path, const LaunchArgs& args) {
  const Polygon polygon = load(path);
  const CodedOrbit coded = encode_orbit(polygon, launch_point(polygon, args), args.bounces);
  std::cout << "coding=" << format_coding(polygon, coded.coding) << '\n';
  const auto period = detect_period(coded.coding);
  std::cout << "candidate_period=" << (period ? std::to_string(*period) : std::string("none")) << '\n';
  std::cout << "end=" << (coded.terminated == Termination::VertexHit ? "vertex_hit" : "horizon") << '\n';
  return kOk;
}

int cmd_unfold(const std::string& path, const LaunchArgs& args) {
  const Polygon polygon = load(path);
  const Corridor corridor = build_corridor(polygon, launch_point(polygon, args), args.bounces);
  write_file(args.svg, corridor_svg(polygon, corridor));
  std::cout << "copies=" << corridor.copy_count() << '\n'
            << "gluing=" << format_coding(polygon, corridor.gluing_edges) << '\n'
            << "end=" << (corridor.truncated ? "vertex_hit" : "horizon") << '\n';
  return kOk;
}

int cmd_atlas(const std::string& path, std::size_t samples, bool stability) {
  const Polygon polygon = load(path);
  std::cout << format_atlas(polygon, build_atlas(polygon, samples, stability));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygonal billiards in tables with holes"};
  app.require_subcommand(1);

  std::string polygon_path;
  double tolerance = 1e-9;
  LaunchArgs launch;

  auto* validate = app.add_subcommand("validate", "Check a polygon file and print its edge table");
  validate->add_option("--polygon", polygon_path, "Polygon file")->required();

  auto* simulate = app.add_subcommand("simulate", "Dump the orbit of a launch point");
  simulate->add_option("--polygon", polygon_path, "Polygon file")->required();
  add_launch_options(*simulate, launch, false);

  auto* code = app.add_subcommand("code", "Print the edge coding of a launch point");
  code->add_option("--polygon", polygon_path, "Polygon file")->required();
  add_launch_options(*code, launch, false);

  auto* unfold = app.add_subcommand("unfold", "Render the unfolded corridor of a launch point");
  unfold->add_option("--polygon", polygon_path, "Polygon file")->required();
  add_launch_options(*unfold, launch, true);

  std::size_t atlas_samples = 100;
  bool no_stability = false;
  auto* atlas = app.add_subcommand("atlas", "Report the components of every edge pair");
  atlas->add_option("--polygon", polygon_path, "Polygon file")->required();
  atlas->add_option("--samples", atlas_samples, "Grid samples per axis")->check(CLI::Range(2, 100000));
  atlas->add_flag("--no-stability", no_stability, "Skip the doubled-grid recount");

  std::string suite;
  std::uint64_t seed = 1;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> samples;
  std::size_t resolution = 100000;
  std::string start_edge;
  std::optional<double> start_offset;
  std::optional<double> start_theta;
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("--polygon", polygon_path, "Polygon file (optional for unfolding and alternating)");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--horizon", horizon, "Number of bounces or longest prefix");
  verify->add_option("--samples", samples, "Number of sampled cases");
  verify->add_option("--resolution", resolution, "Prefix-set grid resolution")->check(CLI::Range(2, 100000000));
  verify->add_option("--edge", start_edge, "Launch edge for uniqueness and divergence");
  verify->add_option("--offset", start_offset, "Launch offset for uniqueness and divergence");
  verify->add_option("--theta", start_theta, "Launch angle for uniqueness and divergence");

  for (CLI::App* sub : {validate, simulate, code, unfold, atlas, verify}) {
    sub->add_option("--tolerance", tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(polygon_path);
    if (*simulate) return cmd_simulate(polygon_path, launch);
    if (*code) return cmd_code(polygon_path, launch);
    if (*unfold) return cmd_unfold(polygon_path, launch);
    if (*atlas) return cmd_atlas(polygon_path, atlas_samples, !no_stability);
    if (*verify) {
      if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
      std::optional<Polygon> polygon;
      if (!polygon_path.empty()) polygon = load(polygon_path);
      ExperimentOptions options;
      options.seed = seed;
      options.tolerance = tolerance;
      options.horizon = horizon;
      options.samples = samples;
      options.prefix_resolution = resolution;
      if (!start_edge.empty() || start_offset || start_theta) {
        if (!polygon || start_edge.empty() || !start_offset || !start_theta) {
          throw UsageError("--edge, --offset and --theta go together and need --polygon");
        }
        options.start = launch_point(*polygon, {start_edge, *start_offset, *start_theta, 0, {}});
      }
      if (!polygon && suite != "unfolding" && suite != "alternating") {
        throw UsageError("suite '" + suite + "' needs --polygon");
      }
      const ExperimentReport report = run_suite(suite, polygon ? &*polygon : nullptr, options);
      std::cout << report.body() << report.summary();
      return report.passed() ? kOk : kFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
