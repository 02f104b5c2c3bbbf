// Copyright 2026 The aqcsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqc/annealer.hpp"
#include "aqc/bounds.hpp"
#include "aqc/compiler.hpp"
#include "aqc/gadgets.hpp"
#include "aqc/io.hpp"
#include "aqc/rng.hpp"
#include "aqc/transforms.hpp"

namespace {

using nlohmann::json;
using namespace aqc;

constexpr const char* kVersion = "aqcsim 0.1.0";

constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key))
      throw SchemaError("unknown key '" + key + "' in " + where);
  }
  for (const auto& key : required)
    if (!obj.contains(key)) throw SchemaError("missing key '" + key + "' in " + where);
}

// ---- instance factory -----------------------------------------------------------

ProblemInstance make_instance(const json& spec, std::uint64_t master_seed) {
  require_keys(spec, "instance", {"family"}, {"params", "seed"});
  std::string family = spec.at("family").get<std::string>();
  json params = spec.value("params", json::object());
  std::uint64_t seed = spec.value("seed", master_seed);
  auto geti = [&params](const std::string& key, int def = INT_MIN) {
    if (!params.contains(key)) {
      if (def == INT_MIN) throw SchemaError("instance params missing '" + key + "'");
      return def;
    }
    return params.at(key).get<int>();
  };
  auto getd = [&params](const std::string& key, double def) {
    return params.value(key, def);
  };
  if (family == "grover") return make_grover(geti("n"), std::uint64_t(geti("m", 0)));
  if (family == "multi_marked") {
    std::vector<std::uint64_t> marked;
    for (const auto& m : params.at("marked")) marked.push_back(m.get<std::uint64_t>());
    return make_multi_marked(geti("n"), marked);
  }
  if (family == "deutsch_jozsa")
    return make_deutsch_jozsa(geti("n"), params.value("balanced", false));
  if (family == "bernstein_vazirani")
    return make_bernstein_vazirani(geti("n"), std::uint64_t(geti("a")));
  if (family == "glued_trees") return make_glued_trees(geti("n"), getd("alpha", 0.135));
  if (family == "plain_hw") return make_plain_hw(geti("n"));
  if (family == "spike") return make_spike(geti("n"));
  if (family == "barrier_hw")
    return make_barrier_hw(geti("n"), getd("alpha", 0.3), getd("beta", 0.3));
  if (family == "plateau") return make_plateau(geti("n"), geti("l"), geti("u"));
  if (family == "vandam_phw") return make_vandam_phw(geti("n"));
  if (family == "twosat_ring") {
    std::vector<int> disagree;
    if (params.contains("disagree"))
      for (const auto& d : params.at("disagree")) disagree.push_back(d.get<int>());
    return make_twosat_ring(geti("n"), disagree);
  }
  if (family == "weighted_chain")
    return make_weighted_chain(geti("period"), geti("b"), getd("w", 2.0));
  if (family == "dimer_ladder")
    return make_dimer_ladder(geti("rungs"), getd("K", 1.0), getd("U", 0.5));
  if (family == "pspin") return make_pspin(geti("n"), geti("p", 3));
  if (family == "sk") return make_sk(geti("n"), seed, params.value("gaussian", true));
  if (family == "hopfield") return make_hopfield(geti("n"), geti("p", 2), geti("r", 2), seed);
  if (family == "exact_cover") {
    auto enc = params.value("encoding", std::string("two_local")) == "three_local"
                   ? ExactCoverEncoding::ThreeLocal
                   : ExactCoverEncoding::TwoLocal;
    return make_exact_cover(geti("n"), geti("clauses"), enc, seed);
  }
  if (family == "xorsat_3reg") return make_xorsat_3reg(geti("n"), seed);
  if (family == "number_partition") {
    std::vector<double> numbers;
    for (const auto& a : params.at("numbers")) numbers.push_back(a.get<double>());
    return make_number_partition(numbers);
  }
  if (family == "catalyst_3local") return make_catalyst_3local(geti("n"));
  throw SchemaError("unknown family '" + family + "'");
}

Schedule make_schedule(const json& spec, const ProblemInstance* instance) {
  if (spec.is_null()) return linear();
  require_keys(spec, "schedule", {"kind"}, {"N", "V", "p"});
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "linear") return linear();
  if (kind == "roland_cerf") {
    double N = spec.contains("N") ? spec.at("N").get<double>()
                                  : double(Index(1) << (instance ? instance->n : 0));
    return roland_cerf(N);
  }
  if (kind == "reg_beta") return reg_beta(spec.value("V", 2));
  if (kind == "local_power") {
    if (!instance || !instance->analytic_gap_available)
      throw SchemaError("local_power needs an instance with an analytic gap");
    const ProblemInstance inst = *instance;
    return local_power([inst](double u) { return analytic_gap(inst, u); },
                       spec.value("p", 2.0));
  }
  throw SchemaError("unknown schedule kind '" + kind + "'");
}

// ---- run record -----------------------------------------------------------------

struct OutputSink {
  std::string directory;
  json manifest = json::array();
  std::vector<std::string> warnings;

  void write(const std::string& name, const std::string& payload) {
    atomic_write(directory + "/" + name, payload);
    manifest.push_back({{"name", name},
                        {"bytes", payload.size()},
                        {"digest", fnv1a(payload)}});
  }
};

void write_run_record(OutputSink& sink, const json& config, double elapsed_ms) {
  json record;
  record["version"] = kVersion;
  record["config_hash"] = fnv1a(config.dump());
  record["timing_ms"] = elapsed_ms;
  record["outputs"] = sink.manifest;
  record["warnings"] = sink.warnings;
  atomic_write(sink.directory + "/run_record.json", record.dump(2) + "\n");
}

LevelSpec parse_level_spec(const json& spec) {
  if (spec.is_null()) return LevelSpec::to_level(1);
  require_keys(spec, "level_spec", {"mode"}, {"j", "tau"});
  std::string mode = spec.at("mode").get<std::string>();
  if (mode == "to_level") return LevelSpec::to_level(spec.value("j", 1));
  if (mode == "above_degeneracy") return LevelSpec::above_degeneracy(spec.value("tau", -1.0));
  if (mode == "symmetric_sector") {
    LevelSpec out;
    out.mode = LevelSpec::Mode::SymmetricSector;
    return out;
  }
  throw SchemaError("unknown level_spec mode '" + mode + "'");
}

// ---- subcommands ----------------------------------------------------------------

void run_gap(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "gap config", {"instance"},
               {"subcommand", "grid", "refine", "level_spec", "k", "sector", "seed", "out"});
  ProblemInstance inst = make_instance(config.at("instance"), seed);
  LevelSpec spec = parse_level_spec(config.value("level_spec", json()));
  bool sector = config.value("sector", false) ||
                spec.mode == LevelSpec::Mode::SymmetricSector;
  const HamiltonianPath& path = sector ? inst.symmetric.reduced : inst.path;
  if (sector && !inst.has_symmetric) throw Error("instance has no symmetric sector");
  if (!sector && !inst.has_full_path) throw Error("instance has no full path at this size");
  GapProfileOptions options;
  options.k = config.value("k", 0);
  options.seed = seed;
  GapProfile profile =
      gap_profile(path, config.value("grid", 101), spec, config.value("refine", true), options);
  if (profile.non_unimodal) sink.warnings.push_back("non-unimodal bracket; grid minimum kept");
  sink.write("gap.csv", profile_csv(profile));
  sink.write("gap_summary.json", profile_summary_json(profile));
}

void run_evolve(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "evolve config", {"instance", "t_f"},
               {"subcommand", "schedule", "k_track", "steps", "sector", "seed", "out"});
  ProblemInstance inst = make_instance(config.at("instance"), seed);
  Schedule schedule = make_schedule(config.value("schedule", json()), &inst);
  bool sector = config.value("sector", false);
  const HamiltonianPath& path = sector ? inst.symmetric.reduced : inst.path;
  if (sector && !inst.has_symmetric) throw Error("instance has no symmetric sector");
  StepperOptions stepper;
  stepper.k_track = config.value("k_track", 2);
  stepper.steps = config.value("steps", 0);
  EigPairs start = eig_low(path, 0.0, 1, EigMethod::Auto, seed);
  double t_f = config.at("t_f").get<double>();
  EvolutionResult result = evolve(path, schedule, t_f, start.vectors.col(0), stepper);
  double error = adiabatic_error(result, path);
  sink.write("trace.csv", trace_csv(result));
  json meta;
  meta["t_f"] = t_f;
  meta["steps"] = result.step_count;
  meta["seed"] = seed;
  meta["norm_drift"] = result.norm_drift;
  meta["adiabatic_error"] = error;
  meta["config_hash"] = fnv1a(config.dump());
  sink.write("result.json", meta.dump(2) + "\n");
}

void run_schedule(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "schedule config", {"schedule"},
               {"subcommand", "instance", "qab", "seed", "out"});
  if (config.contains("qab")) {
    const json& q = config.at("qab");
    require_keys(q, "qab", {"n"}, {"two_controls", "p"});
    ControlFamily family =
        grover_control_family(q.at("n").get<int>(), q.value("two_controls", false));
    QabOptions options;
    options.p = q.value("p", 2.0);
    QabResult result = qab(family, options);
    if (result.is_schedule) {
      sink.write("schedule.csv", schedule_csv(result.schedule));
    } else {
      CsvWriter csv({"s", "x1", "x2"});
      for (Index i = 0; i < result.s_grid.size(); ++i)
        csv.row_numeric({result.s_grid[i], result.trajectory(i, 0), result.trajectory(i, 1)});
      sink.write("trajectory.csv", csv.payload());
    }
    return;
  }
  ProblemInstance inst;
  bool have_instance = config.contains("instance");
  if (have_instance) inst = make_instance(config.at("instance"), seed);
  Schedule schedule =
      make_schedule(config.at("schedule"), have_instance ? &inst : nullptr);
  check_schedule(schedule);
  sink.write("schedule.csv", schedule_csv(schedule));
}

void run_bounds(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "bounds config", {"instance"},
               {"subcommand", "grid", "schedule", "sector", "seed", "out"});
  ProblemInstance inst = make_instance(config.at("instance"), seed);
  bool sector = config.value("sector", false);
  const HamiltonianPath& base = sector ? inst.symmetric.reduced : inst.path;
  HamiltonianPath path = base;
  if (config.contains("schedule"))
    path = reparametrize(base, make_schedule(config.at("schedule"), &inst));
  BoundReport report = jrs(path, config.value("grid", 101));
  sink.write("bounds.json", bound_report_json(report));
}

void run_compile(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "compile config", {"circuit"},
               {"subcommand", "pad_identities", "seed", "out"});
  GateCircuit circuit;
  const json& cj = config.at("circuit");
  if (cj.is_string()) {
    circuit = deserialize_circuit(read_file(cj.get<std::string>()));
  } else {
    require_keys(cj, "circuit", {"n", "gates"}, {});
    circuit.n_qubits = cj.at("n").get<int>();
    for (const auto& g : cj.at("gates")) {
      require_keys(g, "gate", {"name"}, {"qubit", "control", "target", "angle", "seed"});
      std::string name = g.at("name").get<std::string>();
      if (name == "H")
        circuit.gates.push_back(gate_hadamard(g.at("qubit").get<int>()));
      else if (name == "X")
        circuit.gates.push_back(gate_x(g.at("qubit").get<int>()));
      else if (name == "I")
        circuit.gates.push_back(gate_identity(g.at("qubit").get<int>()));
      else if (name == "P")
        circuit.gates.push_back(gate_phase(g.at("qubit").get<int>(), g.value("angle", 0.0)));
      else if (name == "CNOT")
        circuit.gates.push_back(
            gate_cnot(g.at("control").get<int>(), g.at("target").get<int>()));
      else if (name == "RANDOM")
        circuit.gates.push_back(
            random_unitary_gate(g.at("qubit").get<int>(), g.value("seed", seed)));
      else
        throw SchemaError("unknown gate '" + name + "'");
    }
  }
  ClockCompilation comp = compile(circuit, config.value("pad_identities", 0));
  CompilationReport report = validate(comp);
  for (const auto& v : report.violations) sink.warnings.push_back(v);
  sink.write("circuit.txt", serialize(comp.circuit));
  sink.write("validation.json", report_json(report));
}

void run_gadget(const json& config, std::uint64_t seed, OutputSink& sink) {
  (void)seed;
  require_keys(config, "gadget config", {"terms"},
               {"subcommand", "n", "lambda_sweep", "lambda", "seed", "out"});
  GadgetSpec spec;
  spec.n_qubits = config.value("n", 0);
  for (const auto& t : config.at("terms")) {
    require_keys(t, "gadget term", {"coefficient", "factors"}, {});
    std::vector<std::pair<int, Axis>> factors;
    for (const auto& f : t.at("factors")) {
      std::string axis = f.at("axis").get<std::string>();
      if (axis != "X" && axis != "Y" && axis != "Z") throw SchemaError("bad axis");
      factors.push_back({f.at("qubit").get<int>(), Axis(axis[0])});
    }
    spec.terms.push_back(TargetTerm::pauli(t.at("coefficient").get<double>(), factors));
    for (const auto& f : factors)
      spec.n_qubits = std::max(spec.n_qubits, f.first + 1);
  }
  spec.lambda = config.value("lambda", 0.01);
  std::vector<double> sweep;
  if (config.contains("lambda_sweep"))
    for (const auto& l : config.at("lambda_sweep")) sweep.push_back(l.get<double>());
  else
    sweep = {0.02, 0.04, 0.06, 0.08};
  GadgetFitReport report = verify_gadget(spec, sweep);
  sink.write("fit.csv", fit_report_csv(report));
  GadgetBuild build = build_gadget(spec);
  if (!build.within_radius)
    sink.warnings.push_back("lambda outside the convergence radius");
  sink.write("gadget_operator.txt", serialize(build.gadget));
  json meta;
  meta["slope"] = report.slope;
  meta["radius"] = build.radius;
  meta["excluded"] = report.excluded;
  sink.write("gadget.json", meta.dump(2) + "\n");
}

void run_transform(const json& config, std::uint64_t seed, OutputSink& sink) {
  (void)seed;
  require_keys(config, "transform config", {"kind"},
               {"subcommand", "operator_file", "instance", "variant", "d", "projectors",
                "weights", "n", "seed", "out"});
  std::string kind = config.at("kind").get<std::string>();
  if (kind == "destoquasticize" || kind == "check") {
    OperatorSum h;
    if (config.contains("operator_file"))
      h = deserialize_operator(read_file(config.at("operator_file").get<std::string>()));
    else
      throw SchemaError("transform needs operator_file");
    if (kind == "check") {
      StoquasticReport report = check_stoquastic(h);
      json meta;
      meta["stoquastic"] = report.stoquastic;
      meta["max_positive_offdiagonal"] = report.max_positive_offdiagonal;
      sink.write("stoquastic.json", meta.dump(2) + "\n");
      return;
    }
    OperatorSum lifted = destoquasticize(h);
    sink.write("operator_out.txt", serialize(lifted));
    Eigen::SelfAdjointEigenSolver<CMat> before(materialize(h), Eigen::EigenvaluesOnly);
    Vec after = ancilla_sector_spectrum(lifted, true);
    sink.write("transform.json", transform_report_json(before.eigenvalues(), after));
    return;
  }
  if (kind == "amplify") {
    require_keys(config, "amplify config", {"kind", "projectors", "weights", "n"},
                 {"subcommand", "variant", "d", "seed", "out"});
    FrustrationFreeSpec spec;
    spec.n_qubits = config.at("n").get<int>();
    Index d = Index(1) << spec.n_qubits;
    for (const auto& pj : config.at("projectors")) {
      // diagonal projectors given as index lists
      CMat p = CMat::Zero(d, d);
      for (const auto& idx : pj) p(idx.get<Index>(), idx.get<Index>()) = 1.0;
      spec.projectors.push_back(p);
    }
    for (const auto& w : config.at("weights")) spec.weights.push_back(w.get<double>());
    auto variant = config.value("variant", std::string("bar")) == "primed"
                       ? AmplifyVariant::Primed
                       : AmplifyVariant::Bar;
    AmplifiedGap amp = amplify_gap(spec, variant, config.value("d", 2.0));
    sink.write("operator_out.txt", serialize(amp.op));
    sink.write("transform.json",
               transform_report_json(spec.spectrum(), single_particle_spectrum(amp)));
    return;
  }
  throw SchemaError("unknown transform kind '" + kind + "'");
}

void run_pagerank(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "pagerank config", {"graph"},
               {"subcommand", "alpha", "seed", "out"});
  GraphSpec graph;
  const json& gj = config.at("graph");
  if (gj.is_string()) {
    graph = parse_edge_list(read_file(gj.get<std::string>()));
  } else {
    require_keys(gj, "graph", {}, {"vertices", "edges", "generator", "out_degree", "seed"});
    if (gj.contains("generator")) {
      if (gj.at("generator").get<std::string>() != "preferential_attachment")
        throw SchemaError("unknown graph generator");
      graph = preferential_attachment(gj.at("vertices").get<int>(), gj.value("out_degree", 2),
                                      gj.value("seed", seed));
    } else {
      graph.vertices = gj.at("vertices").get<int>();
      for (const auto& e : gj.at("edges"))
        graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
  }
  PageRankPipeline pipe = pagerank_pipeline(graph, config.value("alpha", 0.85));
  CsvWriter csv({"vertex", "pagerank"});
  for (Index i = 0; i < pipe.pagerank.size(); ++i)
    csv.row_numeric({double(i), pipe.pagerank[i]});
  sink.write("pagerank.csv", csv.payload());
  Eigen::SelfAdjointEigenSolver<Mat> es(pipe.h1);
  Vec p = pipe.pagerank / pipe.pagerank.norm();
  json meta;
  meta["iterations"] = pipe.iterations;
  meta["ground_overlap"] = std::abs(es.eigenvectors().col(0).dot(p));
  meta["embedded"] = pipe.has_embedded;
  sink.write("pagerank.json", meta.dump(2) + "\n");
  sink.write("graph.txt", graph_to_edge_list(graph));
}

void run_bench(const json& config, std::uint64_t seed, OutputSink& sink) {
  require_keys(config, "bench config", {"family", "sizes"},
               {"subcommand", "quantum", "sa", "p_d", "params", "seed", "out"});
  std::string family = config.at("family").get<std::string>();
  json params = config.value("params", json::object());
  auto factory = [&](int n) {
    json spec;
    spec["family"] = family;
    spec["params"] = params;
    spec["params"]["n"] = n;
    return make_instance(spec, seed);
  };
  std::vector<int> sizes;
  for (const auto& s : config.at("sizes")) sizes.push_back(s.get<int>());

  std::vector<QuantumSolverSpec> quantum;
  if (config.contains("quantum")) {
    const json& qj = config.at("quantum");
    require_keys(qj, "quantum solver", {"t_f_grid"},
                 {"schedule", "symmetric", "steps", "name"});
    QuantumSolverSpec solver;
    solver.name = qj.value("name", std::string("aqc"));
    json sched = qj.value("schedule", json());
    solver.schedule = [sched](const ProblemInstance& inst) {
      return make_schedule(sched, &inst);
    };
    for (const auto& t : qj.at("t_f_grid")) solver.t_f_grid.push_back(t.get<double>());
    solver.use_symmetric_sector = qj.value("symmetric", false);
    solver.stepper.steps = qj.value("steps", 0);
    quantum.push_back(solver);
  }
  std::vector<SASolverSpec> sa;
  if (config.contains("sa")) {
    const json& sj = config.at("sa");
    require_keys(sj, "sa solver", {"sweep_grid"},
                 {"repetitions", "t_init", "t_final", "name"});
    SASolverSpec solver;
    solver.name = sj.value("name", std::string("sa"));
    solver.base.repetitions = sj.value("repetitions", 200);
    solver.base.t_init = sj.value("t_init", 2.0);
    solver.base.t_final = sj.value("t_final", 0.05);
    solver.base.seed = seed;
    for (const auto& s : sj.at("sweep_grid")) solver.sweep_grid.push_back(s.get<long>());
    sa.push_back(solver);
  }
  BenchmarkReport report = benchmark(factory, sizes, quantum, sa, config.value("p_d", 0.99));
  sink.write("bench.csv", report.csv());
  json fits = json::array();
  // one TTS_opt row per (solver, size)
  for (const auto& opt : report.optima)
    fits.push_back({{"solver", opt.solver},
                    {"n", opt.n},
                    {"knob", opt.knob},
                    {"success", opt.success},
                    {"tts_opt", opt.tts_value}});
  sink.write("fits.json", fits.dump(2) + "\n");
}

int run_config(const json& config, const std::string& out_dir, std::uint64_t seed);

int run_replay(const json& config, const std::string& prior_dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  if (!fs::exists(prior_dir + "/run_record.json"))
    throw Error("missing prior run record in " + prior_dir);
  std::string fresh = prior_dir + "/.replay";
  fs::remove_all(fresh);
  int rc = run_config(config, fresh, seed);
  if (rc != 0) return rc;
  json diff = json::array();
  for (const auto& entry : fs::directory_iterator(fresh)) {
    std::string name = entry.path().filename().string();
    if (name == "run_record.json") continue;
    std::string fresh_payload = read_file(entry.path().string());
    std::string prior_path = prior_dir + "/" + name;
    if (!fs::exists(prior_path)) {
      diff.push_back({{"name", name}, {"status", "missing_in_prior"}});
      continue;
    }
    std::string prior_payload = read_file(prior_path);
    if (prior_payload != fresh_payload)
      diff.push_back({{"name", name}, {"status", "payload_drift"}});
  }
  json report;
  report["identical"] = diff.empty();
  report["diff"] = diff;
  std::cout << report.dump(2) << std::endl;
  fs::remove_all(fresh);
  return diff.empty() ? 0 : 1;
}

int run_config(const json& config, const std::string& out_dir, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  if (!config.contains("subcommand")) throw SchemaError("config missing 'subcommand'");
  std::string sub = config.at("subcommand").get<std::string>();
  OutputSink sink;
  sink.directory = out_dir;
  if (sub == "gap")
    run_gap(config, seed, sink);
  else if (sub == "evolve")
    run_evolve(config, seed, sink);
  else if (sub == "schedule")
    run_schedule(config, seed, sink);
  else if (sub == "bounds")
    run_bounds(config, seed, sink);
  else if (sub == "compile")
    run_compile(config, seed, sink);
  else if (sub == "gadget")
    run_gadget(config, seed, sink);
  else if (sub == "transform")
    run_transform(config, seed, sink);
  else if (sub == "pagerank")
    run_pagerank(config, seed, sink);
  else if (sub == "bench")
    run_bench(config, seed, sink);
  else
    throw SchemaError("unknown subcommand '" + sub + "'");
  double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  write_run_record(sink, config, elapsed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - adiabatic quantum computation simulation toolkit"};
  std::string config_path, out_dir = "out", replay_dir;
  std::uint64_t seed = 2026;
  bool replay = false;
  app.add_option("--config", config_path, "JSON experiment configuration")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed (64-bit)");
  app.add_flag("--replay", replay, "byte-compare a rerun against --out");
  app.set_version_flag("--version", kVersion);
  CLI11_PARSE(app, argc, argv);

  if (const char* env_out = std::getenv("AQC_OUT")) out_dir = env_out;

  try {
    json config;
    try {
      config = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
      std::cerr << "config parse error: " << e.what() << std::endl;
      return kExitSchema;
    }
    if (config.contains("seed") && !config.at("seed").is_null())
      seed = config.at("seed").get<std::uint64_t>();
    if (replay) return run_replay(config, out_dir, seed);
    return run_config(config, out_dir, seed);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << std::endl;
    return kExitSchema;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "schema error: " << e.what() << std::endl;
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumeric;
  }
}
