// metastab: leading-order small eigenvalues of the Witten Laplacian for an
// energy landscape, and a 1D finite-difference check of them.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metastab/catalog.hpp"
#include "metastab/error.hpp"
#include "metastab/landscape.hpp"
#include "metastab/report.hpp"
#include "metastab/spectra.hpp"
#include "metastab/validator.hpp"

using namespace metastab;

namespace {

void check_h_list(const std::vector<double>& hs) {
  for (double h : hs)
    if (!(h > 0.0)) throw InputError("domain", "h values must be strictly positive");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("io", "cannot write " + out);
  f << text;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "fitted") return Scheme::fitted;
  if (s == "central") return Scheme::central;
  throw InputError("domain", "unknown scheme '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leading-order small eigenvalues of the Witten Laplacian"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h is taken by the h list

  std::string input, out, plots, samples, example_name, scheme_name = "fitted";
  std::vector<double> h_list;
  double eps_level = -1.0, theta = 1.0, c_tol = 3.0;
  int grid = 0, ring_size = 4;
  bool no_validate = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a structure (.json) or sampled potential (.csv)");
  analyze_cmd->add_option("path", input, "input file")->required();
  analyze_cmd->add_option("--h", h_list, "comma separated h values")->delimiter(',');
  analyze_cmd->add_option("--eps-level", eps_level, "level equality tolerance");
  analyze_cmd->add_option("--out", out, "output path (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "compare predictions with a 1D discretization");
  validate_cmd->add_option("csv", input, "sampled potential x,phi")->required();
  validate_cmd->add_option("--h", h_list, "comma separated h values")->delimiter(',');
  validate_cmd->add_option("--grid", grid, "interior grid nodes (default per h)");
  validate_cmd->add_option("--eps-level", eps_level, "level equality tolerance");
  validate_cmd->add_option("--scheme", scheme_name, "fitted or central");
  validate_cmd->add_option("--c-tol", c_tol, "final tolerance is c_tol * h");
  validate_cmd->add_option("--emit-plots", plots, "write h,index,predicted,numeric CSV here");
  validate_cmd->add_option("--out", out, "output path (default stdout)");

  auto* example_cmd = app.add_subcommand("example", "run a bundled example");
  example_cmd->add_option("name", example_name, "four-wells, two-heights, ring, nested, mixed-heights, double-well, asym-double-well")
      ->required();
  example_cmd->add_option("--n", ring_size, "ring size for ring");
  example_cmd->add_option("--theta", theta, "theta for two-heights");
  example_cmd->add_option("--h", h_list, "comma separated h values")->delimiter(',');
  example_cmd->add_flag("--no-validate", no_validate, "skip the 1D numeric check");
  example_cmd->add_option("--emit-plots", plots, "write h,index,predicted,numeric CSV here");
  example_cmd->add_option("--emit-samples", samples, "write x,phi samples of the 1D realization here");
  example_cmd->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << dump_json(error_json("usage", e.what()));
    return 2;
  }

  try {
    check_h_list(h_list);
    if (*analyze_cmd) {
      CriticalStructure cs;
      if (has_suffix(input, ".csv")) {
        const SampledPotential p = load_potential_csv(input);
        cs = extract_critical_structure(p, eps_level >= 0 ? std::optional<double>(eps_level) : std::nullopt);
      } else {
        cs = load_structure_file(input);
        if (eps_level >= 0) {
          cs.level_tolerance = eps_level;
          validate_structure(cs);
        }
      }
      emit(dump_json(analysis_json(analyze(cs), h_list)), out);
    } else if (*validate_cmd) {
      if (h_list.empty()) h_list = {0.15, 0.10, 0.07};
      const SampledPotential p = load_potential_csv(input);
      const CriticalStructure cs =
          extract_critical_structure(p, eps_level >= 0 ? std::optional<double>(eps_level) : std::nullopt);
      const Analysis an = analyze(cs);
      CompareOptions opt;
      opt.scheme = parse_scheme(scheme_name);
      opt.grid = grid;
      opt.c_tol = c_tol;
      const ValidationReport vr = compare(an.spectrum, p, cs, h_list, opt);
      Json j = validation_json(vr);
      j["analysis"] = analysis_json(an, h_list);
      j["analysis"].erase("schema");
      emit(dump_json(j), out);
      if (!plots.empty()) emit(plots_csv(vr), plots);
    } else {
      const Example ex = make_example(example_name, ring_size, theta);
      const Analysis an = analyze(ex.cs);
      if (h_list.empty()) h_list = {0.10, 0.07, 0.05};
      std::optional<ValidationReport> vr;
      if (ex.landscape && !no_validate)
        vr = compare(an.spectrum, ex.landscape->phi, ex.landscape->a, ex.landscape->b, h_list);
      emit(dump_json(example_json(ex, an, h_list, vr)), out);
      if (vr && !plots.empty()) emit(plots_csv(*vr), plots);
      if (!samples.empty()) {
        if (!ex.landscape) throw InputError("domain", "example " + ex.name + " has no 1D realization");
        emit(samples_csv(*ex.landscape, 0.005), samples);
      }
    }
  } catch (const InputError& e) {
    std::cout << dump_json(error_json(e.kind(), e.what()));
    return 2;
  } catch (const std::exception& e) {
    std::cout << dump_json(error_json("internal", e.what()));
    return 3;
  }
  return 0;
}
