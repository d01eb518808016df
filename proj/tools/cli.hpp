// SPDX-License-Identifier: Apache-2.0
//
// sparray: sparse active planar arrays, co-arrays and imaging under coupling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command line front end: generate | analyze | search | simulate | compare.
// Kept in a header so the test suites can drive it in-process.

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "sparray/configurations.hpp"
#include "sparray/errors.hpp"
#include "sparray/geometry.hpp"
#include "sparray/imaging.hpp"
#include "sparray/io.hpp"
#include "sparray/metrics.hpp"
#include "sparray/mra_search.hpp"

namespace sparray::cli {

inline constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
  std::string out_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  bool quiet = false;
};

// FNV-1a 64-bit, hex encoded. Identifies inputs in the run manifest.
inline std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ISO-8601 UTC. Honors SOURCE_DATE_EPOCH for reproducible manifests.
inline std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Run {
 public:
  Run(std::vector<std::string> args, GlobalOptions globals, std::ostream& log)
      : args_(std::move(args)), globals_(globals), log_(log) {}

  const GlobalOptions& globals() const { return globals_; }

  void info(const std::string& line) const {
    if (!globals_.quiet) log_ << line << "\n";
  }

  // Output location for a subcommand: its own --out resolved against the
  // global --out DIR, or `fallback` inside DIR, or empty for stdout.
  std::string target(const std::string& path, const std::string& fallback) const {
    if (globals_.out_dir.empty()) return path;
    std::filesystem::create_directories(globals_.out_dir);
    const std::filesystem::path p(path.empty() ? fallback : path);
    return (p.is_absolute() ? p : std::filesystem::path(globals_.out_dir) / p).string();
  }

  void record_input(const std::string& path, std::string_view bytes) { inputs_[path] = content_hash(bytes); }

  // Writes an output file and remembers its directory for the manifest.
  void emit(const std::string& path, std::string_view content) {
    write_text_file(path, content);
    auto dir = std::filesystem::path(path).parent_path();
    out_dir_ = dir.empty() ? std::filesystem::path(".") : dir;
  }

  void write_manifest() const {
    if (!out_dir_) return;
    std::string command_line;
    for (const auto& a : args_) command_line += (command_line.empty() ? "" : " ") + a;
    Json hashes = Json::object();
    for (const auto& [k, v] : inputs_) hashes[k] = v;
    Json manifest{{"command_line", command_line}, {"seed", globals_.seed}, {"tool_version", kVersion},
                  {"input_hashes", hashes}, {"timestamp", timestamp_now()}};
    write_text_file((*out_dir_ / "manifest.json").string(), dump_json(manifest));
  }

 private:
  std::vector<std::string> args_;
  GlobalOptions globals_;
  std::ostream& log_;
  std::map<std::string, std::string> inputs_;
  std::optional<std::filesystem::path> out_dir_;
};

inline ArrayFamily require_family(const std::string& name) {
  if (auto f = parse_family(name)) return *f;
  throw UsageError("unknown array family '" + name + "' (expected ura, ba or cra)");
}

inline std::string verdict(bool b) { return b ? "true" : "false"; }

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  int lx = 0;
  int ly = 0;
  std::string out;
};

inline int cmd_generate(const GenerateArgs& a, Run& run, std::ostream& out) {
  const ElementSet d = make_array(require_family(a.family), a.lx, a.ly);
  const std::string text = dump_json(to_json(d));
  const std::string path =
      run.target(a.out, a.family + "_" + std::to_string(a.lx) + "x" + std::to_string(a.ly) + ".json");
  if (path.empty()) {
    out << text;
  } else {
    run.emit(path, text);
  }
  run.info("n=" + std::to_string(d.size()) + " contiguous_sum=" + verdict(has_contiguous_sum_coarray(d)) +
           " contiguous_diff=" + verdict(has_contiguous_difference_coarray(d)));
  return 0;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string out;
  std::string coarray_csv;
};

inline Json metrics_json(const ArrayMetrics& m) {
  return Json{{"n", m.n},
              {"redundancy", m.redundancy.value()},
              {"contiguous_sum", m.contiguous_sum},
              {"contiguous_diff", m.contiguous_diff},
              {"s1", m.s1},
              {"s_sqrt2", m.s_sqrt2},
              {"s2", m.s2},
              {"aspect_ratio", m.aspect_ratio}};
}

inline int cmd_analyze(const AnalyzeArgs& a, Run& run, std::ostream& out) {
  const std::string text = read_text_file(a.input);
  run.record_input(a.input, text);
  const ElementSet d = element_set_from_json(parse_json_text(text, a.input));
  const std::string result = dump_json(metrics_json(analyze(d)));
  const std::string path = run.target(a.out, "metrics.json");
  if (path.empty()) {
    out << result;
  } else {
    run.emit(path, result);
  }
  if (!a.coarray_csv.empty()) {
    const std::string prefix = run.target(a.coarray_csv, a.coarray_csv);
    run.emit(prefix + "_sum.csv", coarray_csv(sum_coarray(d)));
    run.emit(prefix + "_diff.csv", coarray_csv(difference_coarray(d)));
  }
  return 0;
}

// --- search -----------------------------------------------------------------

struct SearchArgs {
  int lx = 0;
  int ly = 0;
  bool all = false;
  bool symmetric = false;
  bool min_s1 = false;
  std::uint64_t budget = 100'000'000;
  int enumerate_limit = 36;
  std::string out;
};

inline Json solution_json(const ElementSet& d) {
  Json j = to_json(d);
  j["n"] = d.size();
  j["s1"] = sparseness(d, SquaredDistance{1});
  j["s_sqrt2"] = sparseness(d, SquaredDistance{2});
  j["s2"] = sparseness(d, SquaredDistance{4});
  j["orbit_size"] = symmetry_orbit(d).size();
  return j;
}

inline Json search_json(const SearchResult& r, const SearchArgs& a) {
  Json sols = Json::array();
  for (const auto& d : r.solutions) sols.push_back(solution_json(d));
  Json best = Json::array();
  for (const auto& d : r.min_s1_solutions) best.push_back(solution_json(d));
  return Json{{"lx", r.lx},
              {"ly", r.ly},
              {"optimal_n", r.optimal_n},
              {"lower_bound", r.lower_bound},
              {"exhaustive", r.exhaustive},
              {"symmetric_only", r.symmetric_only},
              {"s1_restricted", r.s1_restricted},
              {"enumerate_all", a.all || a.min_s1},
              {"budget", a.budget},
              {"nodes_explored", r.nodes_explored},
              {"canonical_count", r.solutions.size()},
              {"raw_count", r.raw_solution_count},
              {"min_s1", r.min_s1},
              {"solutions", sols},
              {"min_s1_solutions", best}};
}

inline int cmd_search(const SearchArgs& a, Run& run, std::ostream& out) {
  SearchSpec spec;
  spec.lx = a.lx;
  spec.ly = a.ly;
  spec.enumerate_all = a.all;
  spec.max_nodes = a.budget;
  spec.require_symmetry = a.symmetric;
  spec.enumerate_variable_limit = a.enumerate_limit;
  const SearchResult r = a.min_s1 ? min_unit_spacing_mra(spec) : find_mra(spec);
  const std::string text = dump_json(search_json(r, a));
  const std::string path = run.target(a.out, "search.json");
  if (path.empty()) {
    out << text;
  } else {
    run.emit(path, text);
  }
  run.info("optimal_n=" + std::to_string(r.optimal_n) + " exhaustive=" + verdict(r.exhaustive) +
           " solutions=" + std::to_string(r.solutions.size()) + " nodes=" + std::to_string(r.nodes_explored) +
           (r.symmetric_only ? " (symmetric arrays only)" : ""));
  if (!r.exhaustive) {
    throw Error(ErrorCode::infeasible, "search budget of " + std::to_string(a.budget) +
                                           " nodes exhausted; result is inconclusive");
  }
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string array = "cra";
  int lx = 12;
  int ly = 12;
  double c1 = 0.2;
  std::optional<double> phase;
  int trials = 0;
  double sidelobe_db = 40.0;
  double threshold = 0.9999;
  int grid = 201;
  std::string reference = "self";
  std::string out;
};

inline int cmd_simulate(const SimulateArgs& a, Run& run, std::ostream& out) {
  if (a.phase && a.trials > 0) throw UsageError("simulate: --phase and --trials are mutually exclusive");
  if (a.grid < 1) throw UsageError("simulate: --grid must be positive");

  std::optional<ElementSet> d;
  if (auto family = parse_family(a.array)) {
    d = make_array(*family, a.lx, a.ly);
  } else {
    const std::string text = read_text_file(a.array);
    run.record_input(a.array, text);
    d = element_set_from_json(parse_json_text(text, a.array));
  }

  ImagingConfig config;
  config.grid = {a.grid, a.grid};
  config.sidelobe_db = a.sidelobe_db;
  config.energy_threshold = a.threshold;
  config.c1 = a.c1;
  config.threads = run.globals().threads;
  if (a.reference == "self") {
    config.reference = ReferenceMode::self;
  } else if (a.reference == "ura") {
    config.reference = ReferenceMode::ura;
  } else {
    throw UsageError("simulate: --reference must be 'self' or 'ura'");
  }
  const ImagingExperiment experiment(*d, config);
  const std::string prefix = run.target(a.out, "simulate");
  const auto& weights = experiment.imager().weights();

  if (a.trials > 0) {
    const MonteCarloSummary mc = monte_carlo_rmse(experiment, a.trials, run.globals().seed);
    Json summary{{"mean", mc.mean}, {"std", mc.std_dev}, {"trials", mc.trials}, {"seed", mc.seed},
                 {"phases", mc.phases}, {"n", d->size()}, {"q", weights.size()}, {"c1", a.c1}};
    const std::string text = dump_json(summary);
    if (prefix.empty()) {
      out << text;
    } else {
      run.emit(prefix + "_summary.json", text);
    }
    std::ostringstream line;
    line << "mean=" << format_double(mc.mean) << " std=" << format_double(mc.std_dev) << " trials=" << a.trials;
    run.info(line.str());
    return 0;
  }

  const double phase = a.phase.value_or(0.0);
  const CMatrix y = experiment.imager().image({a.c1, phase});
  const cdouble alpha = optimal_scale(y, experiment.reference());
  const double eps = experiment.rmse(y);
  Json result{{"epsilon", eps},
              {"alpha", {alpha.real(), alpha.imag()}},
              {"n", d->size()},
              {"q", weights.size()},
              {"retained_energy", weights.retained_energy},
              {"c1", a.c1},
              {"phase", phase},
              {"grid", a.grid}};
  const std::string text = dump_json(result);
  if (prefix.empty()) {
    out << text;
  } else {
    run.emit(prefix + ".json", text);
    run.emit(prefix + ".csv", image_csv(y));
    run.emit(prefix + ".pgm", image_pgm(alpha * y));
    run.emit(prefix + "_reference.pgm", image_pgm(experiment.reference()));
  }
  run.info("epsilon=" + format_double(eps) + " q=" + std::to_string(weights.size()));
  return 0;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
  std::string families = "ura,ba,cra";
  int l_min = 0;
  int l_max = 20;
  int step = 1;
  std::uint64_t mra_budget = 10'000'000;
  std::string out;
};

inline std::string compare_row(int l, std::string_view family, const std::optional<ElementSet>& d) {
  std::string row = std::to_string(l) + "," + std::string(family) + ",";
  if (!d) return row + ",,,,";
  const ArrayMetrics m = analyze(*d);
  return row + std::to_string(m.n) + "," + format_double(m.redundancy.value()) + "," + std::to_string(m.s1) + "," +
         std::to_string(m.s_sqrt2) + "," + std::to_string(m.s2);
}

inline int cmd_compare(const CompareArgs& a, Run& run, std::ostream& out) {
  if (a.step < 1 || a.l_min < 0 || a.l_max < a.l_min) throw UsageError("compare: invalid aperture range");
  std::vector<std::string> names;
  std::stringstream ss(a.families);
  for (std::string f; std::getline(ss, f, ',');)
    if (!f.empty()) names.push_back(f);
  for (const auto& f : names)
    if (f != "mra") require_family(f);

  std::string csv = "l,family,n,redundancy,s1,s_sqrt2,s2\n";
  for (int l = a.l_min; l <= a.l_max; l += a.step) {
    for (const auto& f : names) {
      std::optional<ElementSet> d;
      if (f == "mra") {
        // Only reported where the search finishes inside the budget.
        SearchSpec spec{l, l, true, a.mra_budget, false, std::numeric_limits<int>::max()};
        const SearchResult r = min_unit_spacing_mra(spec);
        if (r.exhaustive && !r.min_s1_solutions.empty()) d = r.min_s1_solutions.front();
      } else {
        try {
          d = make_array(*parse_family(f), l, l);
        } catch (const UsageError&) {
        }
      }
      csv += compare_row(l, f, d) + "\n";
    }
  }
  const std::string path = run.target(a.out, "compare.csv");
  if (path.empty()) {
    out << csv;
  } else {
    run.emit(path, csv);
  }
  return 0;
}

// --- entry point --------------------------------------------------------------

/// Runs one command line. Errors are reported on `err` as a single line
/// "<CODE>: <message>" and mapped to the exit codes of ErrorCode.
inline int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse active planar arrays: co-arrays, minimum-redundancy search, imaging under coupling",
               "sparray"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--out", g.out_dir, "Output directory; subcommand outputs are placed inside it");
  app.add_option("--seed", g.seed, "Random seed for Monte-Carlo runs");
  app.add_option("--threads", g.threads, "Worker threads for Monte-Carlo trials")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Suppress progress lines");
  app.set_version_flag("--version", kVersion);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a URA, BA or CRA element set as JSON");
  generate->add_option("family", gen.family, "ura | ba | cra")->required();
  generate->add_option("lx", gen.lx, "Aperture along x in half wavelengths")->required();
  generate->add_option("ly", gen.ly, "Aperture along y in half wavelengths")->required();
  generate->add_option("--out", gen.out, "Output JSON file (stdout if omitted)");

  AnalyzeArgs ana;
  auto* analyze_cmd = app.add_subcommand("analyze", "Figures of merit of an element set file");
  analyze_cmd->add_option("input", ana.input, "Element set JSON")->required();
  analyze_cmd->add_option("--out", ana.out, "Output JSON file (stdout if omitted)");
  analyze_cmd->add_option("--coarray-csv", ana.coarray_csv, "Write PREFIX_sum.csv and PREFIX_diff.csv");

  SearchArgs sea;
  auto* search = app.add_subcommand("search", "Exact minimum-redundancy array search");
  search->add_option("--lx", sea.lx, "Aperture along x")->required();
  search->add_option("--ly", sea.ly, "Aperture along y")->required();
  search->add_flag("--all", sea.all, "Enumerate every optimal array");
  search->add_flag("--symmetric", sea.symmetric, "Only arrays symmetric about the aperture center");
  search->add_flag("--min-s1", sea.min_s1, "Keep the optima with the fewest unit spacings");
  search->add_option("--budget", sea.budget, "Node budget");
  search->add_option("--enumerate-limit", sea.enumerate_limit, "Largest number of decision variables to enumerate");
  search->add_option("--out", sea.out, "Output JSON file (stdout if omitted)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Image a point-target scene under mutual coupling");
  simulate->add_option("--array", sim.array, "ura | ba | cra | element-set JSON file");
  simulate->add_option("--lx", sim.lx, "Aperture along x for generated arrays");
  simulate->add_option("--ly", sim.ly, "Aperture along y for generated arrays");
  simulate->add_option("--c1", sim.c1, "Coupling magnitude at unit spacing");
  auto* phase_opt = simulate->add_option("--phase", sim.phase, "Coupling phase in radians");
  simulate->add_option("--trials", sim.trials, "Monte-Carlo trials over a uniform coupling phase")
      ->excludes(phase_opt);
  simulate->add_option("--sidelobe-db", sim.sidelobe_db, "Chebyshev taper sidelobe attenuation");
  simulate->add_option("--threshold", sim.threshold, "SVD energy fraction to keep");
  simulate->add_option("--grid", sim.grid, "Scan samples per direction cosine");
  simulate->add_option("--reference", sim.reference, "self | ura");
  simulate->add_option("--out", sim.out, "Output prefix");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Tabulate N, R and S(d) of square arrays");
  compare->add_option("--families", cmp.families, "Comma separated list of ura, ba, cra, mra");
  compare->add_option("--lmin", cmp.l_min, "Smallest aperture L");
  compare->add_option("--lmax", cmp.l_max, "Largest aperture L");
  compare->add_option("--step", cmp.step, "Step between apertures");
  compare->add_option("--mra-budget", cmp.mra_budget, "Node budget per mra row");
  compare->add_option("--out", cmp.out, "Output CSV file (stdout if omitted)");

  std::vector<std::string> reversed(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_code_name(ErrorCode::usage) << ": " << e.what() << "\n";
    return static_cast<int>(ErrorCode::usage);
  }

  Run run(argv, g, err);
  try {
    int rc = 0;
    if (*generate) rc = cmd_generate(gen, run, out);
    else if (*analyze_cmd) rc = cmd_analyze(ana, run, out);
    else if (*search) rc = cmd_search(sea, run, out);
    else if (*simulate) rc = cmd_simulate(sim, run, out);
    else if (*compare) rc = cmd_compare(cmp, run, out);
    run.write_manifest();
    return rc;
  } catch (const Error& e) {
    run.write_manifest();
    err << error_code_name(e.code()) << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::domain_error& e) {
    err << error_code_name(ErrorCode::usage) << ": " << e.what() << "\n";
    return static_cast<int>(ErrorCode::usage);
  } catch (const std::exception& e) {
    err << error_code_name(ErrorCode::invariant) << ": " << e.what() << "\n";
    return static_cast<int>(ErrorCode::invariant);
  }
}

}  // namespace sparray::cli
