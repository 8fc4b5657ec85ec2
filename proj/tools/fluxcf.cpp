// Command-line front end: single solves and convergence studies for the
// three built-in test cases.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxcf/cases.hpp"
#include "fluxcf/harness.hpp"

namespace {

fluxcf::FluxVariant parse_variant(const std::string& name) {
  if (name == "pwc") return fluxcf::FluxVariant::PiecewiseConstant;
  if (name == "upwind") return fluxcf::FluxVariant::UpwindAdjusted;
  if (name == "downwind") return fluxcf::FluxVariant::DownwindAdjusted;
  if (name == "auto") return fluxcf::FluxVariant::AutoUpwind;
  throw fluxcf::config_error("unknown flux variant: " + name);
}

fluxcf::CaseDefinition make_case(int id, double diffusion, double amp) {
  switch (id) {
    case 1: return fluxcf::case1(diffusion);
    case 2: return fluxcf::case2(amp, diffusion);
    case 3: return fluxcf::case3(diffusion);
    default: throw fluxcf::config_error("case must be 1, 2, or 3");
  }
}

std::vector<int> default_levels(int case_id) {
  if (case_id == 3) return {16, 32, 64, 128, 256};
  return {40, 80, 160, 320, 640, 1280};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete flux scheme solver for the coupled advection-diffusion/Poisson model"};
  app.require_subcommand(1);

  int case_id = 1;
  int n = 0;
  double diffusion = 1.0;
  double amp = 10.0;
  std::string flux = "auto";
  std::string dump_path, out_path, levels_arg;

  CLI::App* solve = app.add_subcommand("solve", "solve one case at one resolution");
  solve->add_option("--case", case_id, "test case id (1, 2, or 3)")->required();
  solve->add_option("--n", n, "cells per direction")->required();
  solve->add_option("--diffusion", diffusion, "diffusion coefficient D")->required();
  solve->add_option("--amp", amp, "Poisson source amplitude A (case 2)");
  solve->add_option("--flux", flux, "pwc|upwind|downwind|auto");
  solve->add_option("--dump", dump_path, "write x[,y],c_numeric,c_exact CSV here");

  CLI::App* converge = app.add_subcommand("converge", "refinement study over doubling levels");
  converge->add_option("--case", case_id, "test case id (1, 2, or 3)")->required();
  converge->add_option("--diffusion", diffusion, "diffusion coefficient D")->required();
  converge->add_option("--amp", amp, "Poisson source amplitude A (case 2)");
  converge->add_option("--flux", flux, "pwc|upwind|downwind|auto");
  converge->add_option("--levels", levels_arg, "comma-separated doubling levels");
  converge->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const fluxcf::CaseDefinition def = make_case(case_id, diffusion, amp);
    const fluxcf::FluxVariant variant = parse_variant(flux);

    if (solve->parsed()) {
      if (n < 2) throw fluxcf::config_error("--n must be >= 2");
      const fluxcf::LevelResult lr = fluxcf::solve_case(def, n, variant);
      std::printf("case %d N=%d flux=%s D=%g: relative L2 error %.6e\n", case_id, n, flux.c_str(),
                  diffusion, lr.l2_error);
      if (!dump_path.empty()) {
        fluxcf::dump_solution(lr, dump_path);
        std::fprintf(stderr, "wrote %s\n", dump_path.c_str());
      }
      return 0;
    }

    std::vector<int> levels;
    if (levels_arg.empty()) {
      levels = default_levels(case_id);
    } else {
      size_t pos = 0;
      while (pos < levels_arg.size()) {
        size_t next = levels_arg.find(',', pos);
        if (next == std::string::npos) next = levels_arg.size();
        levels.push_back(std::stoi(levels_arg.substr(pos, next - pos)));
        pos = next + 1;
      }
    }
    const fluxcf::ConvergenceReport rep = fluxcf::run_convergence(def, variant, levels);
    fluxcf::emit_csv(rep, out_path);
    fluxcf::emit_csv(rep, std::cout);
    return 0;
  } catch (const fluxcf::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
}
