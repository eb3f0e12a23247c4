// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// circuit-doe: command-line front end for the library.
//
// Exit codes: 0 success, 1 usage error, 2 spec/validation/contract error,
// 3 resource budget exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/error.hpp"
#include "circuit_doe/evaluation.hpp"
#include "circuit_doe/fractions.hpp"
#include "circuit_doe/logging.hpp"
#include "circuit_doe/search.hpp"
#include "circuit_doe/study.hpp"

namespace cd = circuit_doe;

namespace {

struct GlobalOptions {
  int jobs = 0;
  std::uint64_t seed = 0;
  int verbosity = 0;
  double enum_budget = cd::kDefaultEnumerationBudget;
  double circuit_budget = cd::kDefaultCircuitBudget;
  bool allow_long = false;
};

int default_jobs() {
  if (const char* env = std::getenv("CIRCUIT_DOE_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw cd::SpecError(std::string("CIRCUIT_DOE_JOBS must be a positive integer, got \"") +
                        env + "\"");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

cd::TableFormat table_format(const std::string& name) {
  return name == "txt" ? cd::TableFormat::kText : cd::TableFormat::kCsv;
}

// Writes to `path`, or stdout when empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cd::Error("cannot open " + path + " for writing");
  fn(out);
  if (!out) throw cd::Error("failed writing " + path);
}

cd::CircuitBasis obtain_circuits(const cd::ModelMatrix& x, const std::string& import_path,
                                 const GlobalOptions& g) {
  if (!import_path.empty()) {
    cd::log_message(cd::LogLevel::kInfo, "importing circuits from " + import_path);
    return cd::import_circuits(import_path, x);
  }
  cd::CircuitOptions options;
  options.jobs = g.jobs;
  options.budget = g.circuit_budget;
  options.allow_long = g.allow_long;
  return cd::compute_circuits(x, options);
}

cd::EnumerationOptions enumeration_options(const GlobalOptions& g) {
  cd::EnumerationOptions options;
  options.jobs = g.jobs;
  options.budget = g.allow_long ? std::numeric_limits<double>::infinity() : g.enum_budget;
  return options;
}

nlohmann::json histogram_json(const cd::FrequencyTable& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, n] : t) j[std::to_string(v)] = n;
  return j;
}

double rounded(double e) { return static_cast<double>(cd::efficiency_key(e)) / 100.0; }

int run(int argc, char** argv) {
  CLI::App app{"Saturated fractions of factorial designs via circuit bases"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::optional<int> jobs_flag;
  app.add_option("--jobs,-j", jobs_flag, "Worker threads (default: CIRCUIT_DOE_JOBS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Master seed for random draws");
  app.add_flag("-v,--verbose", g.verbosity, "Increase log verbosity");
  app.add_option("--enum-budget", g.enum_budget, "Maximum C(K,p) for enumeration");
  app.add_option("--circuit-budget", g.circuit_budget,
                 "Maximum candidate-subset estimate for circuit computation");
  app.add_flag("--allow-long", g.allow_long, "Lift the circuit and enumeration budgets");

  std::string spec_path;
  std::string out_path;
  std::string circuits_path;
  std::string format;

  auto* design = app.add_subcommand("design", "Write the model matrix");
  design->add_option("--spec", spec_path, "Design spec JSON")->required();
  design->add_option("--out", out_path, "Output file (default stdout)");

  auto* circuits = app.add_subcommand("circuits", "Compute or validate the circuit basis");
  circuits->add_option("--spec", spec_path)->required();
  circuits->add_option("--out", out_path);
  circuits->add_option("--import", circuits_path, "Validate and canonicalize a circuit file");
  std::string strategy = "auto";
  circuits->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "primal", "kernel"}));

  auto* check = app.add_subcommand("check", "Test whether a fraction is saturated");
  std::string fraction_text;
  std::string method = "both";
  check->add_option("--spec", spec_path)->required();
  check->add_option("--fraction", fraction_text, "Indices \"0,1,2\" or a 0/1 string")->required();
  check->add_option("--method", method)->check(CLI::IsMember({"det", "circuits", "both"}));
  check->add_option("--circuits", circuits_path);
  std::string check_format = "text";
  check->add_option("--format", check_format)->check(CLI::IsMember({"text", "json"}));

  auto* eval = app.add_subcommand("eval", "Evaluate b_Y, g1, g2, g3, D_Y and E_Y");
  eval->add_option("--spec", spec_path)->required();
  eval->add_option("--circuits", circuits_path);
  eval->add_option("--fraction", fraction_text)->required();
  std::string eval_format = "json";
  eval->add_option("--format", eval_format)->check(CLI::IsMember({"json", "csv"}));

  auto* enumerate = app.add_subcommand("enumerate", "List every saturated fraction");
  enumerate->add_option("--spec", spec_path)->required();
  enumerate->add_option("--circuits", circuits_path);
  enumerate->add_option("--out", out_path);
  std::string enum_format = "csv";
  enumerate->add_option("--format", enum_format)->check(CLI::IsMember({"csv", "txt"}));

  auto* search = app.add_subcommand("search", "Multistart exchange search for high D_Y");
  cd::SearchConfig search_config;
  bool no_dedupe = false;
  search->add_option("--spec", spec_path)->required();
  search->add_option("--circuits", circuits_path);
  search->add_option("--restarts", search_config.restarts)->check(CLI::PositiveNumber);
  search->add_option("--max-passes", search_config.max_passes);
  search->add_flag("--no-dedupe", no_dedupe, "Report every restart, not distinct designs");
  search->add_option("--out", out_path);
  std::string search_format = "csv";
  search->add_option("--format", search_format)->check(CLI::IsMember({"csv", "txt"}));

  auto* study = app.add_subcommand("study", "Classify saturated fractions by (g1, g2, g3, E_Y)");
  std::string mode = "exhaustive";
  bool collapse = false;
  study->add_option("--spec", spec_path)->required();
  study->add_option("--circuits", circuits_path);
  study->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sample"}));
  study->add_option("--restarts", search_config.restarts)->check(CLI::PositiveNumber);
  study->add_option("--max-passes", search_config.max_passes);
  study->add_flag("--collapse", collapse, "Merge the minimum-E_Y classes into one row");
  study->add_option("--out", out_path, "Output directory")->required();
  std::string study_format = "csv";
  study->add_option("--format", study_format)->check(CLI::IsMember({"csv", "txt"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  g.jobs = jobs_flag ? *jobs_flag : default_jobs();
  cd::set_log_level(g.verbosity >= 2   ? cd::LogLevel::kDebug
                    : g.verbosity == 1 ? cd::LogLevel::kInfo
                                       : cd::LogLevel::kQuiet);

  const cd::DesignSpec spec = cd::load_design_spec(spec_path);
  const cd::ModelMatrix x = cd::build_model_matrix(spec);

  if (design->parsed()) {
    with_output(out_path, [&](std::ostream& out) { cd::write_model_matrix(out, x); });
    return 0;
  }

  if (circuits->parsed()) {
    cd::CircuitBasis basis;
    if (!circuits_path.empty()) {
      basis = cd::import_circuits(circuits_path, x);
    } else {
      cd::CircuitOptions options;
      options.jobs = g.jobs;
      options.budget = g.circuit_budget;
      options.allow_long = g.allow_long;
      options.strategy = strategy == "primal"   ? cd::CircuitStrategy::kPrimal
                         : strategy == "kernel" ? cd::CircuitStrategy::kKernel
                                                : cd::CircuitStrategy::kAuto;
      basis = cd::compute_circuits(x, options);
    }
    with_output(out_path, [&](std::ostream& out) { cd::export_circuits(basis, out); });
    return 0;
  }

  if (check->parsed()) {
    const cd::Fraction f = cd::parse_fraction(fraction_text, x.rows());
    if (f.cardinality() != x.cols()) {
      throw cd::ContractError("fraction has " + std::to_string(f.cardinality()) +
                              " points but the model has p = " + std::to_string(x.cols()));
    }
    nlohmann::json result;
    result["fraction"] = f.to_string();
    std::optional<bool> det_result;
    std::optional<bool> circuit_result;
    if (method != "circuits") {
      const cd::BigInt det = cd::fraction_determinant(x, f);
      det_result = !cd::is_zero(det);
      result["det"] = {{"saturated", *det_result}, {"detXF", det.get_str()}};
    }
    if (method != "det") {
      const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
      circuit_result = cd::is_saturated_circuits(x, basis, f);
      result["circuits"] = {{"saturated", *circuit_result}};
    }
    if (det_result && circuit_result) result["agree"] = *det_result == *circuit_result;
    if (check_format == "json") {
      std::cout << result.dump(2) << '\n';
    } else {
      if (det_result) {
        std::cout << "det: " << (*det_result ? "saturated" : "not saturated")
                  << " (det X_F = " << result["det"]["detXF"].get<std::string>() << ")\n";
      }
      if (circuit_result) {
        std::cout << "circuits: " << (*circuit_result ? "saturated" : "not saturated") << '\n';
      }
    }
    if (det_result && circuit_result && *det_result != *circuit_result) {
      throw cd::ValidationError("determinant and circuit tests disagree; the basis is incomplete");
    }
    return 0;
  }

  if (eval->parsed()) {
    const cd::Fraction f = cd::parse_fraction(fraction_text, x.rows());
    const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
    const cd::Evaluation ev = cd::evaluate(x, basis, f);
    if (eval_format == "json") {
      nlohmann::json j;
      j["fraction"] = f.to_string();
      j["saturated"] = !cd::is_zero(ev.d_y);
      j["bY_hist"] = histogram_json(ev.b_y_histogram);
      j["slack_hist"] = histogram_json(ev.slack_histogram);
      j["g1"] = ev.g1;
      j["g2"] = ev.g2;
      j["g3"] = ev.g3;
      j["detXtX"] = ev.d_y.get_str();
      j["Deff"] = rounded(ev.e_y);
      std::cout << j.dump(2) << '\n';
    } else {
      cd::write_table({"fraction", "g1", "g2", "g3", "detXtX", "Deff"},
                      {{f.to_string(), std::to_string(ev.g1), std::to_string(ev.g2),
                        std::to_string(ev.g3), ev.d_y.get_str(), cd::format_efficiency(ev.e_y)}},
                      std::cout, cd::TableFormat::kCsv);
    }
    return 0;
  }

  if (enumerate->parsed()) {
    const cd::EnumerationOptions options = enumeration_options(g);
    // Budget first, so an oversized request fails before any circuit work.
    cd::check_enumeration_budget(x.rows(), x.cols(), options);
    const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
    const char sep = enum_format == "txt" ? ' ' : ',';
    std::size_t count = 0;
    with_output(out_path, [&](std::ostream& out) {
      count = cd::for_each_saturated(x, basis, options, [&](const cd::Fraction& f) {
        const auto& idx = f.indices();
        for (std::size_t i = 0; i < idx.size(); ++i) {
          if (i > 0) out << sep;
          out << idx[i];
        }
        out << '\n';
      });
    });
    cd::log_message(cd::LogLevel::kInfo, std::to_string(count) + " saturated fractions");
    return 0;
  }

  if (search->parsed()) {
    const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
    search_config.master_seed = g.seed;
    search_config.jobs = g.jobs;
    search_config.dedupe = !no_dedupe;
    const auto results = cd::exchange_search(x, basis, search_config);
    with_output(out_path, [&](std::ostream& out) {
      cd::emit_designs(results, out, table_format(search_format));
    });
    return 0;
  }

  if (study->parsed()) {
    const cd::TableFormat fmt = table_format(study_format);
    const std::string ext = fmt == cd::TableFormat::kText ? ".txt" : ".csv";
    const std::filesystem::path dir(out_path);
    std::filesystem::create_directories(dir);
    nlohmann::json summary;
    if (mode == "exhaustive") {
      const cd::EnumerationOptions options = enumeration_options(g);
      cd::check_enumeration_budget(x.rows(), x.cols(), options);
      const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
      const cd::ExhaustiveStudy result = cd::run_exhaustive_study(x, basis, options);
      const auto rows = collapse ? cd::collapse_minimum(result.classes) : result.classes;
      cd::emit_tables(rows, (dir / ("classification" + ext)).string(), fmt);
      with_output((dir / ("frequency" + ext)).string(), [&](std::ostream& out) {
        cd::emit_frequency_table(result.frequency, out, fmt);
      });
      summary = cd::summary_json(x, basis, result);
    } else {
      const cd::CircuitBasis basis = obtain_circuits(x, circuits_path, g);
      search_config.master_seed = g.seed;
      search_config.jobs = g.jobs;
      const cd::SamplingStudy result = cd::run_sampling_study(x, basis, search_config);
      const auto rows = collapse ? cd::collapse_minimum(result.classes) : result.classes;
      cd::emit_tables(rows, (dir / ("classification" + ext)).string(), fmt);
      summary = cd::summary_json(x, basis, result);
    }
    with_output((dir / "summary.json").string(),
                [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cd::ResourceError& e) {
    std::cerr << "circuit-doe: " << e.what() << '\n';
    return 3;
  } catch (const cd::Error& e) {
    std::cerr << "circuit-doe: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "circuit-doe: " << e.what() << '\n';
    return 2;
  }
}
