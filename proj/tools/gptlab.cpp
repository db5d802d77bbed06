// Copyright 2026 The gptlab Authors
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


// gptlab command-line driver. Every subcommand prints a human-readable report
// followed by a fenced JSON block; --machine-only prints the JSON alone.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gptlab/report.hpp"

namespace {

std::string join_args(int argc, char **argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  using namespace gptlab::cli;

  CLI::App app{"gptlab: phase groups and particle types in convex operational theories"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  settings.command_echo = join_args(argc, argv);
  app.add_option("--tolerance", settings.tolerance, "Numerical tolerance")
      ->envname("GPTLAB_TOLERANCE")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", settings.seed, "Seed for sampled checks");
  app.add_option("--closure-cap", settings.closure_cap, "Maximum group order during closure")
      ->check(CLI::PositiveNumber);
  app.add_flag("--machine-only", settings.machine_only, "Print only the JSON block");

  std::string theory, measurement, topology = "simple", particle, particles, control, pair = "1",
                                   theories = "all", output;
  QuantumCheckParams q;

  auto *validate = app.add_subcommand("validate", "Load a theory file and check every invariant");
  validate->add_option("path", theory, "Theory file or builtin name")->required();

  auto *exporter = app.add_subcommand("export", "Write a theory in the JSON file format");
  exporter->add_option("theory", theory, "Builtin name or theory file")->required();
  exporter->add_option("-o,--output", output, "Write the theory document to this file");

  auto *phase = app.add_subcommand("phase-group", "Phase group of a binary measurement");
  phase->add_option("theory", theory)->required();
  phase->add_option("--measurement", measurement, "Measurement name (default: designated)");

  auto *parts = app.add_subcommand("particles", "Particle catalog of a phase group");
  parts->add_option("theory", theory)->required();
  parts->add_option("--measurement", measurement, "Measurement name (default: designated)");
  parts->add_option("--topology", topology, "simple|unrestricted");

  auto *swap = app.add_subcommand("swap", "Controlled swap of one particle pair");
  swap->add_option("theory", theory)->required();
  swap->add_option("--particle", particle, "Element label or #index")->required();
  swap->add_option("--control-state", control, "Control state, comma separated")->required();
  swap->add_option("--pair-state", pair, "Pair state, comma separated");
  swap->add_option("--measurement", measurement, "Branch measurement (default: designated)");

  auto *order = app.add_subcommand("order-test", "Controlled swaps of two pairs in both orders");
  order->add_option("theory", theory)->required();
  order->add_option("--particles", particles, "Two labels A,B")->required();
  order->add_option("--control-state", control, "Control state, comma separated")->required();
  order->add_option("--pair-state", pair, "State of each swapped pair");
  order->add_option("--measurement", measurement, "Branch measurement (default: designated)");

  auto *surv = app.add_subcommand("survey", "Phase groups and catalogs across theories");
  surv->add_option("--theories", theories, "Comma-separated builtins or files (default: all)");

  auto *qc = app.add_subcommand("quantum-check", "Hilbert-space cross-checks");
  qc->add_option("--which", q.which, "kickback|commuting|classical")->required();
  qc->add_option("--dim", q.dim, "Hilbert-space dimension (commuting)");
  qc->add_option("--trials", q.trials, "Number of random trials (commuting)");
  qc->add_option("--theta", q.theta, "Particle phase angle (kickback)");
  qc->add_option("--p", q.p, "Probability of the control bit being 1 (classical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  }

  RunReport report;
  if (*validate) {
    report = cmd_validate(theory, settings);
  } else if (*exporter) {
    report = cmd_export(theory, settings);
    if (report.exit_code == kPass && !output.empty()) {
      std::ofstream out(output);
      if (!out) {
        std::cerr << "cannot write '" << output << "'\n";
        return kInputError;
      }
      out << report.result["theory"].dump(2) << '\n';
      report.say("written to {}", output);
    }
  } else if (*phase) {
    report = cmd_phase_group(theory, measurement, settings);
  } else if (*parts) {
    report = cmd_particles(theory, measurement, topology, settings);
  } else if (*swap) {
    report = cmd_swap(theory, particle, control, pair, measurement, settings);
  } else if (*order) {
    report = cmd_order_test(theory, particles, control, pair, measurement, settings);
  } else if (*surv) {
    report = cmd_survey(theories, settings);
  } else if (*qc) {
    report = cmd_quantum_check(q, settings);
  }

  std::cout << render(report, settings);
  return report.exit_code;
}
