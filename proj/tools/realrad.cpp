#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "realrad/gif.hpp"
#include "realrad/pipeline.hpp"
#include "realrad/report.hpp"

namespace {

struct RadicalArgs {
  std::string file;
  std::string solver = "dr";
  double svd_tol = 1e-10;
  double residual_tol = 1e-12;
  long long max_iter = 100000;
  int restarts = 0;
  int max_fr = 0;
  std::string coord_change = "auto";
  std::uint64_t seed = 9001;
  bool per_polynomial = false;
  std::string report = "text";
  std::string log_path;
};

realrad::RadicalConfig make_config(const RadicalArgs& args) {
  realrad::RadicalConfig cfg;
  cfg.tol.svd_rel_tol = args.svd_tol;
  cfg.tol.residual_tol = args.residual_tol;
  cfg.solver.method = args.solver == "map" ? realrad::SolveMethod::kAlternatingProjections
                                           : realrad::SolveMethod::kDouglasRachford;
  cfg.solver.residual_tol = args.residual_tol;
  cfg.solver.max_iter = args.max_iter;
  cfg.solver.seed = args.seed;
  cfg.restarts = args.restarts;
  cfg.max_fr = args.max_fr;
  cfg.gif.seed = args.seed;
  if (args.coord_change == "always")
    cfg.gif.coordinate_policy = realrad::CoordinatePolicy::kAlways;
  else if (args.coord_change == "never")
    cfg.gif.coordinate_policy = realrad::CoordinatePolicy::kNever;
  else
    cfg.gif.coordinate_policy = realrad::CoordinatePolicy::kAuto;
  return cfg;
}

int run_radical(const RadicalArgs& args) {
  realrad::RadicalConfig cfg = make_config(args);
  std::ofstream log_stream;
  if (!args.log_path.empty()) {
    log_stream.open(args.log_path);
    if (!log_stream) throw std::runtime_error("cannot open log file " + args.log_path);
    cfg.solver.log = &log_stream;
  }

  realrad::PolySystem input = realrad::parse_system_file(args.file);
  bool all_terminated = true;

  if (args.per_polynomial) {
    std::vector<realrad::RadicalReport> parts;
    realrad::PolySystem pooled(input.var_count());
    for (int i = 0; i < input.size(); ++i) {
      realrad::PolySystem one(input.var_count());
      one.push_back(input[i]);
      parts.push_back(realrad::gif_m(one, cfg));
      for (const auto& g : parts.back().final_generators.polynomials()) pooled.push_back(g);
    }
    realrad::RadicalReport combined = realrad::gif_m(pooled, cfg);
    all_terminated = combined.terminated;
    for (const auto& part : parts) all_terminated = all_terminated && part.terminated;

    if (args.report == "json") {
      nlohmann::json j;
      j["parts"] = nlohmann::json::array();
      for (size_t i = 0; i < parts.size(); ++i)
        j["parts"].push_back(nlohmann::json::parse(realrad::radical_report_json(
            parts[i], args.file + "#" + std::to_string(i + 1))));
      j["combined"] = nlohmann::json::parse(
          realrad::radical_report_json(combined, args.file + "#union"));
      std::cout << j.dump(2) << '\n';
    } else {
      for (size_t i = 0; i < parts.size(); ++i) {
        std::cout << "=== part " << (i + 1) << " ===\n";
        std::cout << realrad::radical_report_text(parts[i],
                                                  args.file + "#" + std::to_string(i + 1));
      }
      std::cout << "=== union ===\n";
      std::cout << realrad::radical_report_text(combined, args.file + "#union");
    }
  } else {
    realrad::RadicalReport report = realrad::gif_m(input, cfg);
    all_terminated = report.terminated;
    if (args.report == "json")
      std::cout << realrad::radical_report_json(report, args.file) << '\n';
    else
      std::cout << realrad::radical_report_text(report, args.file);
  }
  return all_terminated ? 0 : 3;
}

int run_gif(const std::string& file, double svd_tol, const std::string& coord_change,
            std::uint64_t seed) {
  realrad::ToleranceConfig tol;
  tol.svd_rel_tol = svd_tol;
  realrad::GifOptions opts;
  opts.seed = seed;
  if (coord_change == "always")
    opts.coordinate_policy = realrad::CoordinatePolicy::kAlways;
  else if (coord_change == "never")
    opts.coordinate_policy = realrad::CoordinatePolicy::kNever;

  realrad::PolySystem input = realrad::parse_system_file(file);
  realrad::GifReport report = realrad::gif(input, tol, opts);
  std::cout << "k " << report.prolongations << '\n';
  std::cout << "l " << report.projections << '\n';
  std::cout << "degree " << report.output.degree << '\n';
  std::cout << "kernel_dim " << report.output.kernel.dim() << '\n';
  std::cout << "generators:\n";
  realrad::PolySystem gens = realrad::generators(report.output);
  for (const auto& p : gens.polynomials())
    std::cout << "  " << realrad::format_polynomial(realrad::display_trim(p)) << '\n';
  return 0;
}

int run_bench(int dmax, const std::string& csv_path, const RadicalArgs& args) {
  realrad::RadicalConfig cfg = make_config(args);
  std::vector<realrad::BenchRow> rows = realrad::bench_geometric(dmax, cfg);
  std::string csv = realrad::bench_csv(rows);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path);
    out << csv;
    std::cout << "wrote " << rows.size() << " rows to " << csv_path << '\n';
  }
  for (const auto& row : rows)
    if (!row.ok) std::cerr << "d=" << row.d << " failed: " << row.message << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"candidate real-radical generators via involutive forms and moment matrices"};
  app.require_subcommand(1);

  RadicalArgs rad;
  CLI::App* radical = app.add_subcommand("radical", "run the full alternating pipeline");
  radical->add_option("file", rad.file, "input system")->required();
  radical->add_option("--solver", rad.solver, "dr or map")
      ->check(CLI::IsMember({"dr", "map"}));
  radical->add_option("--svd-tol", rad.svd_tol, "relative singular value cutoff");
  radical->add_option("--residual-tol", rad.residual_tol, "solver stopping residual");
  radical->add_option("--max-iter", rad.max_iter, "solver iteration cap");
  radical->add_option("--restarts", rad.restarts, "extra solves from random starts");
  radical->add_option("--max-fr", rad.max_fr, "additional facial reduction attempts");
  radical->add_option("--coord-change", rad.coord_change, "auto, always or never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  radical->add_option("--seed", rad.seed, "random seed");
  radical->add_flag("--per-polynomial", rad.per_polynomial,
                    "run each input polynomial separately, then the union");
  radical->add_option("--report", rad.report, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  radical->add_option("--log", rad.log_path, "write the solver iteration trace here");

  std::string gif_file;
  double gif_svd_tol = 1e-10;
  std::string gif_coord = "auto";
  std::uint64_t gif_seed = 9001;
  CLI::App* gif_cmd = app.add_subcommand("gif", "involutive form of a system");
  gif_cmd->add_option("file", gif_file, "input system")->required();
  gif_cmd->add_option("--svd-tol", gif_svd_tol, "relative singular value cutoff");
  gif_cmd->add_option("--coord-change", gif_coord, "auto, always or never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  gif_cmd->add_option("--seed", gif_seed, "random seed");

  int st_n = 0, st_d = 0;
  CLI::App* structure = app.add_subcommand("structure", "moment matrix structure");
  structure->add_option("-n", st_n, "variables")->required();
  structure->add_option("-d", st_d, "moment order")->required();

  int dmax = 1;
  std::string csv_path;
  RadicalArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench-geometric",
                                       "sweep the geometric-series family");
  bench->add_option("--dmax", dmax, "largest odd degree")->required();
  bench->add_option("--csv", csv_path, "CSV output path (stdout when absent)");
  bench->add_option("--solver", bench_args.solver, "dr or map")
      ->check(CLI::IsMember({"dr", "map"}));
  bench->add_option("--residual-tol", bench_args.residual_tol, "solver stopping residual");
  bench->add_option("--max-iter", bench_args.max_iter, "solver iteration cap");
  bench->add_option("--seed", bench_args.seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (radical->parsed()) return run_radical(rad);
    if (gif_cmd->parsed()) return run_gif(gif_file, gif_svd_tol, gif_coord, gif_seed);
    if (structure->parsed()) {
      std::cout << realrad::structure_text(realrad::build_structure(st_n, st_d));
      return 0;
    }
    if (bench->parsed()) return run_bench(dmax, csv_path, bench_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
