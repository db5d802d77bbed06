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

/**
 * @file report.hpp
 * Command implementations behind the gptlab CLI. Each command returns a
 * RunReport: human-readable lines plus a machine-readable JSON block, and
 * the process exit code.
 *
 * Exit codes: 0 pass, 2 input error, 3 theory invalid, 4 unphysical particle
 * request, 5 internal numeric failure (also used for a failed check).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gptlab/composite.hpp"
#include "gptlab/experiments.hpp"
#include "gptlab/phase.hpp"
#include "gptlab/quantum_oracle.hpp"
#include "gptlab/theories.hpp"

namespace gptlab::cli {

enum ExitCode : int {
  kPass = 0,
  kInputError = 2,
  kTheoryInvalid = 3,
  kUnphysicalParticle = 4,
  kNumericFailure = 5,
};

struct Settings {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t closure_cap = kDefaultClosureCap;
  bool machine_only = false;
  std::string command_echo;
};

struct RunReport {
  std::vector<std::string> lines;
  json result = json::object();
  bool pass = true;
  int exit_code = kPass;

  template <typename... Args>
  void say(fmt::format_string<Args...> f, Args &&...args) {
    lines.push_back(fmt::format(f, std::forward<Args>(args)...));
  }
};

/// The machine block: everything a script needs, nothing run-dependent.
inline json machine_block(const RunReport &r, const Settings &s) {
  json j;
  j["command"] = s.command_echo;
  j["seed"] = s.seed;
  j["tolerance"] = s.tolerance;
  j["pass"] = r.pass;
  j["exit_code"] = r.exit_code;
  j["result"] = r.result;
  return j;
}

inline std::string render(const RunReport &r, const Settings &s) {
  std::ostringstream os;
  if (!s.machine_only) {
    for (const auto &l : r.lines) os << l << '\n';
    os << (r.pass ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
    os << "```json\n";
  }
  os << machine_block(r, s).dump(2) << '\n';
  if (!s.machine_only) os << "```\n";
  return os.str();
}

/// Runs a command body, mapping library exceptions onto exit codes.
inline RunReport guarded(const std::function<void(RunReport &)> &body) {
  RunReport r;
  auto fail = [&](int code, const std::string &kind, const std::string &msg) {
    r.pass = false;
    r.exit_code = code;
    r.say("error ({}): {}", kind, msg);
    r.result["error"] = {{"kind", kind}, {"message", msg}};
  };
  try {
    body(r);
    if (!r.pass && r.exit_code == kPass) r.exit_code = kNumericFailure;
  } catch (const SignallingParticle &e) {
    fail(kUnphysicalParticle, "signalling_particle", e.what());
    r.result["error"]["witness"] = {{"point", detail::vector_json(e.witness().point)},
                                    {"effect_index", e.witness().effect_index},
                                    {"deviation", e.witness().deviation}};
  } catch (const UnphysicalParticle &e) {
    fail(kUnphysicalParticle, "unphysical_particle", e.what());
  } catch (const SchemaError &e) {
    fail(kInputError, "schema", e.what());
    r.result["error"]["path"] = e.path();
  } catch (const InputError &e) {
    fail(kInputError, "input", e.what());
  } catch (const InvariantError &e) {
    fail(kTheoryInvalid, "invariant", e.what());
    r.result["error"]["invariant"] = e.invariant();
  } catch (const GroupTooLarge &e) {
    fail(kTheoryInvalid, "group_too_large", e.what());
  } catch (const InvalidArgument &e) {
    fail(kInputError, "invalid_argument", e.what());
  } catch (const DimensionMismatch &e) {
    fail(kInputError, "dimension", e.what());
  } catch (const InvalidEffect &e) {
    fail(kTheoryInvalid, "invalid_effect", e.what());
  } catch (const NumericError &e) {
    fail(kNumericFailure, "numeric", e.what());
  } catch (const std::exception &e) {
    fail(kNumericFailure, "internal", e.what());
  }
  return r;
}

inline Theory resolve(const std::string &theory, const Settings &s) {
  return resolve_theory(theory, LoadOptions{s.tolerance, s.closure_cap});
}

/// Comma-separated reals, e.g. "1,0.5,0".
inline Vector parse_csv_vector(const std::string &csv) {
  std::vector<double> xs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception &) {
      throw InputError("cannot parse '" + item + "' as a number in '" + csv + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x))
      throw InputError("cannot parse '" + item + "' as a number in '" + csv + "'");
    xs.push_back(x);
  }
  if (xs.empty()) throw InputError("empty vector '" + csv + "'");
  return make_vector(xs);
}

inline json particle_json(const ParticleType &p) {
  return {{"label", p.label}, {"kind", to_string(p.kind)}, {"matrix", detail::matrix_json(p.element.matrix())}};
}

// ---------------------------------------------------------------------------

inline RunReport cmd_validate(const std::string &path, const Settings &s) {
  return guarded([&](RunReport &r) {
    const Theory t = resolve(path, s);
    const Diagnostics ds = validate(t, s.tolerance);
    r.say("theory '{}' (dimension {}, group order {})", t.name(), t.dim(), t.group().order());
    json list = json::array();
    for (const auto &d : ds) {
      r.say("  [{}] {}{}", d.ok ? "ok" : "FAIL", d.invariant, d.detail.empty() ? "" : " -- " + d.detail);
      list.push_back({{"invariant", d.invariant}, {"ok", d.ok}, {"detail", d.detail}});
    }
    r.result["theory"] = t.name();
    r.result["diagnostics"] = list;
    r.pass = all_ok(ds);
    if (!r.pass) r.exit_code = kTheoryInvalid;
  });
}

inline RunReport cmd_export(const std::string &theory, const Settings &s) {
  return guarded([&](RunReport &r) {
    const Theory t = resolve(theory, s);
    r.result["theory"] = to_json(t, s.closure_cap);
    r.say("exported theory '{}'", t.name());
  });
}

inline RunReport cmd_phase_group(const std::string &theory, const std::string &measurement,
                                 const Settings &s) {
  return guarded([&](RunReport &r) {
    const Theory t = resolve(theory, s);
    const std::string mname = measurement.empty() ? t.designated_measurement_name() : measurement;
    const PhaseGroup pg = compute_phase_group(t, t.measurement(mname), s.tolerance, 200, s.seed);
    r.say("phase group of '{}' in theory '{}': order {} (parent group order {})", mname, t.name(),
          pg.order(), t.group().order());
    r.say("  {:>4}  {:<32} {:<10} {}", "#", "label", "involution", "kind");
    json elems = json::array();
    for (std::size_t i = 0; i < pg.order(); ++i) {
      const auto &el = pg.elements[i];
      const ParticleKind k = particle_kind(el, s.tolerance);
      const bool inv = k != ParticleKind::Anyon;
      r.say("  {:>4}  {:<32} {:<10} {}", i, el.label(), inv ? "yes" : "no", to_string(k));
      elems.push_back({{"label", el.label()}, {"involution", inv}, {"kind", to_string(k)},
                       {"matrix", detail::matrix_json(el.matrix())}});
    }
    r.result = {{"theory", t.name()},
                {"measurement", mname},
                {"order", pg.order()},
                {"parent_order", t.group().order()},
                {"excluded", pg.excluded.size()},
                {"elements", elems}};
  });
}

inline Topology parse_topology(const std::string &s) {
  if (s == "simple") return Topology::Simple;
  if (s == "unrestricted") return Topology::Unrestricted;
  throw InputError("unknown topology '" + s + "' (expected simple|unrestricted)");
}

inline RunReport cmd_particles(const std::string &theory, const std::string &measurement,
                               const std::string &topology, const Settings &s) {
  return guarded([&](RunReport &r) {
    const Topology topo = parse_topology(topology);
    const Theory t = resolve(theory, s);
    const std::string mname = measurement.empty() ? t.designated_measurement_name() : measurement;
    const PhaseGroup pg = compute_phase_group(t, t.measurement(mname), s.tolerance, 200, s.seed);
    const ParticleCatalog cat = classify(pg, topo, s.tolerance, s.closure_cap);
    r.say("particle catalog of '{}' / '{}' ({} topology): {} types", t.name(), mname, to_string(topo),
          cat.particles.size());
    r.say("  bosons {}, fermions {}, anyons {}", cat.count(ParticleKind::Boson),
          cat.count(ParticleKind::Fermion), cat.count(ParticleKind::Anyon));
    json parts = json::array();
    for (const auto &p : cat.particles) {
      r.say("  {:<8} {}", to_string(p.kind), p.label);
      parts.push_back(particle_json(p));
    }
    r.say("fermion sector: {}", cat.fermion_sector_abelian ? "abelian" : "NON-ABELIAN");
    if (cat.witness_pair)
      r.say("  witness: [{}, {}] commutator max-norm {}", cat.witness_pair->first.label,
            cat.witness_pair->second.label, cat.witness_commutator);
    r.say("involutions: {} (generate a subgroup of order {}{})", cat.involution_count,
          cat.involution_generated_order, cat.involutions_form_subgroup ? "" : ", strictly larger");
    r.result = {{"theory", t.name()},
                {"measurement", mname},
                {"topology", to_string(topo)},
                {"phase_group_order", cat.phase_group_order},
                {"bosons", cat.count(ParticleKind::Boson)},
                {"fermions", cat.count(ParticleKind::Fermion)},
                {"anyons", cat.count(ParticleKind::Anyon)},
                {"fermion_sector_abelian", cat.fermion_sector_abelian},
                {"involution_count", cat.involution_count},
                {"involution_generated_order", cat.involution_generated_order},
                {"particles", parts}};
    if (cat.witness_pair)
      r.result["witness_pair"] = {cat.witness_pair->first.label, cat.witness_pair->second.label};
  });
}

inline RunReport cmd_swap(const std::string &theory, const std::string &particle,
                          const std::string &control_csv, const std::string &pair_csv,
                          const std::string &measurement, const Settings &s) {
  return guarded([&](RunReport &r) {
    const Theory t = resolve(theory, s);
    const std::string mname = measurement.empty() ? t.designated_measurement_name() : measurement;
    const ParticleType p = find_particle(t.group(), particle, s.tolerance);
    SwapExperimentConfig cfg{mname, p, State(parse_csv_vector(control_csv)),
                             State(parse_csv_vector(pair_csv))};
    const SwapExperimentResult res = run_controlled_swap(t, cfg, s.tolerance);
    r.say("controlled swap in '{}' with {} '{}' (branch measurement '{}')", t.name(), to_string(p.kind),
          p.label, mname);
    r.say("  control in : {}", format_vector(res.control_in.vector()));
    r.say("  control out: {}", format_vector(res.control_out.vector()));
    r.say("  pair in    : {}", format_vector(res.pair_in.vector()));
    r.say("  pair out   : {}", format_vector(res.pair_out.vector()));
    r.say("  branch statistics in ({}, {}) out ({}, {})", res.branch_in[0], res.branch_in[1],
          res.branch_out[0], res.branch_out[1]);
    r.say("  indistinguishability: {}", res.indistinguishability_ok ? "ok" : "VIOLATED");
    r.say("  no-signalling       : {}", res.no_signalling_ok ? "ok" : "VIOLATED");
    r.say("  kick-back           : {}", res.kickback_ok ? "ok" : "VIOLATED");
    r.result = {{"theory", t.name()},
                {"measurement", mname},
                {"particle", particle_json(p)},
                {"control_in", detail::vector_json(res.control_in.vector())},
                {"control_out", detail::vector_json(res.control_out.vector())},
                {"pair_in", detail::vector_json(res.pair_in.vector())},
                {"pair_out", detail::vector_json(res.pair_out.vector())},
                {"branch_in", res.branch_in},
                {"branch_out", res.branch_out},
                {"indistinguishability_ok", res.indistinguishability_ok},
                {"no_signalling_ok", res.no_signalling_ok},
                {"kickback_ok", res.kickback_ok}};
    r.pass = res.indistinguishability_ok && res.no_signalling_ok && res.kickback_ok;
  });
}

inline RunReport cmd_order_test(const std::string &theory, const std::string &particles,
                                const std::string &control_csv, const std::string &pair_csv,
                                const std::string &measurement, const Settings &s) {
  return guarded([&](RunReport &r) {
    const auto comma = particles.find(',');
    if (comma == std::string::npos || particles.find(',', comma + 1) != std::string::npos)
      throw InputError("--particles expects exactly two labels 'A,B'");
    const Theory t = resolve(theory, s);
    const std::string mname = measurement.empty() ? t.designated_measurement_name() : measurement;
    const ParticleType pa = find_particle(t.group(), particles.substr(0, comma), s.tolerance);
    const ParticleType pb = find_particle(t.group(), particles.substr(comma + 1), s.tolerance);
    const State control(parse_csv_vector(control_csv));
    const State pair(parse_csv_vector(pair_csv));
    const OrderTestResult res = run_order_test(t, mname, pa, pb, control, s.tolerance);
    const UncontrolledResult base = uncontrolled_commutation_check(pa, pb, pair, pair);
    r.say("order test in '{}': A = '{}', B = '{}' (branch measurement '{}')", t.name(), pa.label, pb.label,
          mname);
    r.say("  control           : {}", format_vector(control.vector()));
    r.say("  A swapped first   : {}", format_vector(res.final_ab_first.vector()));
    r.say("  B swapped first   : {}", format_vector(res.final_ba_first.vector()));
    r.say("  distinguishability: {} (measurement '{}', effect {})", res.distinguishability,
          res.best_measurement, res.best_effect);
    r.say("  uncontrolled      : {}", base.identical ? "identical pair states in both orders" : "DIFFERENT");
    r.result = {{"theory", t.name()},
                {"measurement", mname},
                {"particle_a", particle_json(pa)},
                {"particle_b", particle_json(pb)},
                {"final_ab_first", detail::vector_json(res.final_ab_first.vector())},
                {"final_ba_first", detail::vector_json(res.final_ba_first.vector())},
                {"distinguishability", res.distinguishability},
                {"best_effect", {{"measurement", res.best_measurement}, {"index", res.best_effect}}},
                {"uncontrolled_identical", base.identical},
                {"commutator_distance", commutator_distance(pa.element, pb.element)}};
    r.pass = base.identical;
  });
}

inline std::vector<std::string> split_list(const std::string &list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline RunReport cmd_survey(const std::string &theories, const Settings &s) {
  return guarded([&](RunReport &r) {
    std::vector<std::string> names = theories.empty() || theories == "all" ? builtin_names() : split_list(theories);
    std::vector<Theory> ts;
    for (const auto &n : names) ts.push_back(resolve(n, s));
    const auto rows = survey(ts, s.tolerance);
    r.say("{:<12} {:<4} {:>6} {:>6} {:>16} {:>16} {:>9} {:>9}", "theory", "meas", "|G|", "|G_phi|",
          "simple b/f/a", "unrestr. b/f/a", "abelian", "fermions");
    json arr = json::array();
    for (const auto &row : rows) {
      r.say("{:<12} {:<4} {:>6} {:>6} {:>16} {:>16} {:>9} {:>9}", row.theory,
            row.measurement + (row.designated ? "*" : ""), row.group_order, row.phase_group_order,
            fmt::format("{}/{}/{}", row.simple_bosons, row.simple_fermions, row.simple_anyons),
            fmt::format("{}/{}/{}", row.unrestricted_bosons, row.unrestricted_fermions, row.unrestricted_anyons),
            row.phase_group_abelian ? "yes" : "no", row.fermion_sector_abelian ? "abelian" : "NON-AB");
      arr.push_back({{"theory", row.theory},
                     {"measurement", row.measurement},
                     {"designated", row.designated},
                     {"group_order", row.group_order},
                     {"phase_group_order", row.phase_group_order},
                     {"phase_group_abelian", row.phase_group_abelian},
                     {"simple", {row.simple_bosons, row.simple_fermions, row.simple_anyons}},
                     {"unrestricted", {row.unrestricted_bosons, row.unrestricted_fermions, row.unrestricted_anyons}},
                     {"fermion_sector_abelian", row.fermion_sector_abelian},
                     {"involution_generated_order", row.involution_generated_order}});
    }
    r.say("(* designated measurement; b/f/a = bosons/fermions/anyons)");
    r.result["rows"] = arr;
  });
}

struct QuantumCheckParams {
  std::string which;
  Index dim = 4;
  int trials = 100;
  double theta = 0.0;
  double p = 0.3;
};

inline RunReport cmd_quantum_check(const QuantumCheckParams &q, const Settings &s) {
  return guarded([&](RunReport &r) {
    if (q.which == "kickback") {
      if (!std::isfinite(q.theta)) throw InputError("--theta must be finite");
      const auto k = quantum::kickback_check(q.theta, s.seed, s.tolerance);
      r.say("phase kick-back at theta = {}", q.theta);
      r.say("  Hilbert-space control: {}", format_vector(k.quantum_control));
      r.say("  simulator control    : {}", format_vector(k.gpt_control));
      r.say("  max deviation {} (tolerance {})", k.deviation, s.tolerance);
      r.result = {{"which", "kickback"},
                  {"theta", q.theta},
                  {"quantum_control", detail::vector_json(k.quantum_control)},
                  {"gpt_control", detail::vector_json(k.gpt_control)},
                  {"deviation", k.deviation}};
      r.pass = k.pass;
    } else if (q.which == "commuting") {
      if (q.dim < 2) throw InputError("--dim must be >= 2");
      if (q.trials < 1) throw InputError("--trials must be >= 1");
      const auto c = quantum::commuting_controlled_check(q.dim, q.trials, s.seed, s.tolerance);
      r.say("controlled commuting unitaries: dim {}, {} trials", q.dim, q.trials);
      r.say("  max ||U_C V_C - V_C U_C||_max = {}", c.max_norm);
      r.result = {{"which", "commuting"}, {"dim", q.dim}, {"trials", q.trials}, {"max_norm", c.max_norm}};
      r.pass = c.pass;
    } else if (q.which == "classical") {
      if (!(q.p >= 0.0 && q.p <= 1.0)) throw InputError("--p must lie in [0, 1]");
      const auto c = quantum::classical_control_check(q.p);
      r.say("classical control bit P = {}: boson vs fermion output max difference {}", q.p, c.max_difference);
      r.say("  (coherent |+> control, for contrast: trace distance {})", quantum::coherent_control_contrast());
      r.result = {{"which", "classical"}, {"p", q.p}, {"max_difference", c.max_difference}};
      r.pass = c.pass;
    } else {
      throw InputError("unknown check '" + q.which + "' (expected kickback|commuting|classical)");
    }
  });
}

}  // namespace gptlab::cli
