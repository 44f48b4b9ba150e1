// zqwalk: eigenvalue tables, chi-squared series, simulation and torus
// densities for random walks on Z_q^d, driven by a walk-spec JSON file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "zqwalk/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral tools for random walks on Z_q^d"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  std::string t_range;
  std::string format = "csv";
  std::vector<int> m0;
  std::optional<int> t;
  zqwalk::cli::Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "walk-spec JSON file")->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* eigs = app.add_subcommand("eigs", "eigenvalue table (eta, rho, kappa or ghat)");
  add_common(eigs);
  eigs->add_option("--rmax", opt.rmax, "largest frequency for torus laws");

  auto* chisq = app.add_subcommand("chisq", "chi-squared distance series with cutoff bounds");
  add_common(chisq);
  chisq->add_option("--t", t, "single time");
  chisq->add_option("--t-range", t_range, "inclusive range A:B");
  chisq->add_option("--m0", m0, "starting count vector");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo end-state distribution vs spectral prediction");
  add_common(sim);
  sim->add_option("--t", t, "number of steps");
  sim->add_option("--paths", opt.paths, "number of paths");
  sim->add_option("--seed", opt.seed, "base seed");
  sim->add_flag("--grouped", opt.grouped, "record count vectors instead of end states");

  auto* torus = app.add_subcommand("torus", "transition density grid of a torus walk");
  add_common(torus);
  torus->add_option("--t", t, "number of steps");
  torus->add_option("--a", opt.a, "start point in [0,1)");
  torus->add_option("--grid", opt.grid, "grid size");
  torus->add_option("--eps", opt.eps, "truncation tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    opt.t = t;
    if (!t_range.empty()) opt.t_range = zqwalk::cli::parse_range(t_range);
    if (!m0.empty()) opt.m0 = m0;
    opt.format = format == "json" ? zqwalk::cli::Format::kJson : zqwalk::cli::Format::kCsv;

    const auto spec = zqwalk::parse_walk_spec(read_file(spec_path));
    if (out_path.empty()) {
      zqwalk::cli::run(command, spec, opt, std::cout);
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      zqwalk::cli::run(command, spec, opt, out);
    }
  } catch (const zqwalk::Error& e) {
    std::cerr << "zqwalk: " << e.what() << '\n';
    return zqwalk::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "zqwalk: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
