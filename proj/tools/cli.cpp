#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mepvcb/bipartite.hpp"
#include "mepvcb/generate.hpp"
#include "mepvcb/solvers.hpp"
#include "mepvcb/verify.hpp"

namespace mepvcb::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// "-" means stdout.
void emit_json(const std::string& path, const Json& doc, std::ostream& out) {
  if (path.empty()) return;
  const std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

Json edge_list(const BipartiteGraph& g, const EdgeSet& ids) {
  Json arr = Json::array();
  for (int id : ids) arr.push_back({g.edge(id).u, g.edge(id).v, g.edge(id).w});
  return arr;
}

std::string vertex_list(const VertexSet& vs) {
  std::string s;
  for (const Vertex& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
  return s.empty() ? "(none)" : s;
}

Json params_json(const ParameterMap& params) {
  Json obj = Json::object();
  for (const auto& [k, v] : params) obj[k] = v;
  return obj;
}

struct Options {
  std::string json_out;
  std::uint64_t seed = 1;
  std::string strategy = "auto";
  int oracle_cap = 20;
  int workers = 1;
  bool mutate = false;

  // solve / stats
  std::string input;
  // reduce
  std::string reduction;
  std::string output;
  bool check = false;
  // verify
  int count = 300;
  std::vector<std::string> corpus_files;
  std::string witness;
  bool structured = false;
  // generate
  std::string family;
  int n = 5;
  int left = 4;
  int right = 4;
  double density = 0.5;
  int degree = 2;
  Weight wmin = 1;
  Weight wmax = 9;
  bool gap = false;
  std::string shape;
};

int cmd_solve(const Options& o, std::ostream& out) {
  const MepvcbInstance inst = parse_instance(read_file(o.input));
  SolveConfig config;
  config.oracle_vertex_cap = o.oracle_cap;
  config.deterministic_seed = o.seed;
  auto strategy = parse_strategy(o.strategy);
  if (!strategy) throw InputError("unknown strategy '" + o.strategy + "'");
  config.strategy = *strategy;

  const auto start = std::chrono::steady_clock::now();
  const Verdict v = solve(inst, config);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const BipartiteGraph& g = inst.graph;
  out << "verdict: " << (v.yes() ? "yes" : "no") << "\n";
  out << "method: " << v.method << "\n";
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "solve";
  doc["input_digest"] = digest(serialize(inst));
  doc["verdict"] = v.yes() ? "yes" : "no";
  doc["method"] = v.method;
  doc["strategy"] = o.strategy;
  if (v.yes()) {
    const Certificate& c = *v.certificate;
    const CertificateCheck check = check_certificate(inst, c);
    out << "chosen: " << vertex_list(c.chosen) << "\n";
    out << "covered weight: " << c.covered_weight << " (k2 = " << inst.k2 << ")\n";
    out << "matching weight: " << c.matching_weight << " (k3 = " << inst.k3 << ")\n";
    out << "certificate: " << (check.valid ? "valid" : "INVALID: " + check.violation) << "\n";
    Json chosen = Json::array();
    for (const Vertex& x : c.chosen) chosen.push_back(to_string(x));
    doc["certificate"] = {{"chosen", chosen},
                          {"covered", edge_list(g, c.covered)},
                          {"matching", edge_list(g, c.matching)},
                          {"covered_weight", c.covered_weight},
                          {"matching_weight", c.matching_weight},
                          {"valid", check.valid}};
  }
  out << "time: " << ms << " ms\n";
  emit_json(o.json_out, doc, out);
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  if (o.input == o.output) throw InputError("input and output paths must differ");
  const AnyInstance source = parse_any(read_file(o.input));
  ReductionReport report;
  if (o.check) {
    OracleConfig config;
    config.vertex_cap = o.oracle_cap;
    report = verify_instance(o.reduction, source, config, o.mutate);
  } else {
    report.reduction = o.reduction;
    report.source_digest = digest(serialize(source));
    report.source_parameter = budget_of(source);
    report.detail = "not checked";
  }
  auto target = apply_reduction(o.reduction, source, o.mutate);
  const std::string text = serialize(target.instance);
  write_file(o.output, text);
  report.target_digest = digest(text);
  report.target_parameter = budget_of(target.instance);
  report.params = target.params;

  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "reduce";
  doc["reduction"] = o.reduction;
  doc["source_kind"] = kind_of(source);
  doc["target_kind"] = kind_of(target.instance);
  doc["source_digest"] = report.source_digest;
  doc["target_digest"] = report.target_digest;
  doc["parameters"] = params_json(report.params);
  doc["budget"] = {{"source", report.source_parameter}, {"target", report.target_parameter}};
  doc["status"] = to_string(report.status);
  if (report.source_yes) doc["source_yes"] = *report.source_yes;
  if (report.target_yes) doc["target_yes"] = *report.target_yes;
  if (!report.detail.empty()) doc["detail"] = report.detail;
  write_file(o.output + ".report.json", doc.dump(2) + "\n");

  out << o.reduction << ": " << kind_of(source) << " " << report.source_digest << " -> " << kind_of(target.instance)
      << " " << report.target_digest << "\n";
  for (const auto& [k, v] : report.params) out << "  " << k << " = " << v << "\n";
  out << "status: " << to_string(report.status) << "\n";
  emit_json(o.json_out, doc, out);
  return report.status == Equivalence::Mismatch ? kExitMismatch : kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<std::string> names;
  if (o.reduction == "all") {
    for (const ReductionInfo& info : reduction_catalog()) names.push_back(info.name);
  } else {
    if (!find_reduction(o.reduction)) throw InputError("unknown reduction '" + o.reduction + "'");
    names.push_back(o.reduction);
  }
  OracleConfig config;
  config.vertex_cap = o.oracle_cap;
  config.structured_fallback = o.structured;

  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "verify";
  doc["seed"] = o.seed;
  doc["mutate"] = o.mutate;
  Json results = Json::array();
  int exit_code = kExitOk;
  for (const std::string& name : names) {
    std::vector<AnyInstance> corpus;
    if (o.corpus_files.empty()) {
      corpus = default_corpus(name, o.seed, o.count);
    } else {
      for (const std::string& path : o.corpus_files) corpus.push_back(parse_any(read_file(path)));
    }
    const VerifySummary s = verify_reduction(name, corpus, config, o.mutate, o.workers);
    Weight max_growth = 0;
    for (const ReductionReport& r : s.reports) max_growth = std::max(max_growth, r.target_parameter - r.source_parameter);
    out << name << ": " << s.equivalent << " equivalent, " << s.mismatches << " mismatch, " << s.unverified
        << " unverified (budget growth " << max_growth << ")\n";
    Json entry = {{"reduction", name},
                  {"instances", s.reports.size()},
                  {"equivalent", s.equivalent},
                  {"mismatch", s.mismatches},
                  {"unverified", s.unverified},
                  {"max_budget_growth", max_growth}};
    if (const ReductionReport* bad = s.first_mismatch()) {
      const std::string path = o.witness.empty() ? "witness-" + name + ".json"
                               : names.size() == 1 ? o.witness
                                                   : o.witness + "." + name;
      write_file(path, bad->witness);
      out << "  witness " << bad->source_digest << " (" << bad->detail << ") written to " << path << "\n";
      entry["witness"] = {{"digest", bad->source_digest}, {"detail", bad->detail}, {"path", path}};
      exit_code = kExitMismatch;
    }
    results.push_back(entry);
  }
  doc["results"] = results;
  emit_json(o.json_out, doc, out);
  return exit_code;
}

int cmd_generate(const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  const WeightRange w{o.wmin, o.wmax};
  if (o.wmin < 0 || o.wmin > o.wmax) throw InputError("weight range must satisfy 0 <= wmin <= wmax");
  auto positive = [](int value, const char* flag) {
    if (value < 1) throw InputError(std::string(flag) + " must be positive");
  };
  std::string text;
  if (o.family == "random-bipartite") {
    if (o.density < 0 || o.density > 1) throw InputError("--density must be in [0, 1]");
    text = serialize(random_thresholds(rng, random_bipartite(rng, o.left, o.right, o.density, w)));
  } else if (o.family == "two-paths") {
    positive(o.n, "--n");
    text = serialize(random_thresholds(rng, two_paths_graph(rng, o.n, w)));
  } else if (o.family == "regular") {
    positive(o.n, "--n");
    if (o.degree < 0 || o.degree > o.n) throw InputError("--degree must be in [0, n]");
    text = serialize(random_thresholds(rng, random_regular(rng, o.n, o.degree, w)));
  } else if (o.family == "complete") {
    text = serialize(random_thresholds(rng, complete_graph(rng, o.left, o.right, w)));
  } else if (o.family == "core-pendant") {
    positive(o.n, "--n");
    text = serialize(random_thresholds(rng, core_pendant_graph(rng, o.n, 2 * o.n + o.degree, o.left, w)));
  } else if (o.family == "bkp") {
    positive(o.n, "--n");
    std::string shape = o.gap ? "gap" : o.shape.empty() ? "positive" : o.shape;
    BkpShape s;
    if (shape == "signed") s = BkpShape::Signed;
    else if (shape == "positive") s = BkpShape::Positive;
    else if (shape == "ordered") s = BkpShape::Ordered;
    else if (shape == "gap") s = BkpShape::Gap;
    else throw InputError("unknown --shape '" + shape + "'");
    text = serialize(random_bkp(rng, o.n, s, o.wmax));
  } else if (o.family == "subsetsum") {
    positive(o.n, "--n");
    text = serialize(random_subsetsum(rng, o.n, o.wmax));
  } else {
    throw InputError("unknown family '" + o.family + "'");
  }
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    write_file(o.output, text);
  }
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const MepvcbInstance inst = parse_instance(read_file(o.input));
  const GraphStats s = graph_stats(inst.graph);
  const Weight k3_delta = checked_mul(inst.k3, s.max_degree);
  auto cmp = [](Weight a, Weight b) { return a < b ? "<" : a == b ? "=" : ">"; };
  out << "vertices: " << s.vertex_count << "\nedges: " << s.edge_count << "\nmax degree: " << s.max_degree
      << "\ntau: " << s.tau << "\nnu: " << s.nu << "\nalpha: " << s.alpha
      << "\nnu_ind: " << (s.nu_ind ? std::to_string(*s.nu_ind) : "omitted (|V| above cap)") << "\nradius: " << s.radius
      << "\ndiameter: " << s.diameter << "\ndisconnected: " << (s.disconnected ? "true" : "false")
      << "\n|V0| |V1| |V2|: " << s.degree0 << " " << s.degree1 << " " << s.degree2
      << "\n|V>=2| |V>=3|: " << s.degree_at_least2 << " " << s.degree_at_least3 << "\n";
  out << "k1 " << cmp(inst.k1, s.tau) << " tau, k2 " << cmp(inst.k2, inst.k3) << " k3, k2 " << cmp(inst.k2, k3_delta)
      << " k3*Delta\n";
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "stats";
  doc["input_digest"] = digest(serialize(inst));
  doc["stats"] = {{"vertices", s.vertex_count}, {"edges", s.edge_count},   {"max_degree", s.max_degree},
                  {"tau", s.tau},               {"nu", s.nu},              {"alpha", s.alpha},
                  {"nu_ind", s.nu_ind ? Json(*s.nu_ind) : Json(nullptr)},  {"radius", s.radius},
                  {"diameter", s.diameter},     {"disconnected", s.disconnected},
                  {"degree0", s.degree0},       {"degree1", s.degree1},    {"degree2", s.degree2},
                  {"degree_at_least2", s.degree_at_least2},                {"degree_at_least3", s.degree_at_least3}};
  doc["flags"] = {{"k1_ge_tau", inst.k1 >= s.tau},
                  {"k2_le_k3", inst.k2 <= inst.k3},
                  {"k2_ge_k3_delta", inst.k2 >= k3_delta},
                  {"k3_le_k1", inst.k3 <= inst.k1}};
  emit_json(o.json_out, doc, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver and reduction workbench for matching-constrained partial vertex cover"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--json-out", o.json_out, "Write a machine-readable report here ('-' for stdout)")
      ->envname("MEPVCB_JSON_OUT");
  app.add_option("--seed", o.seed, "Seed for generated corpora and instances")->envname("MEPVCB_SEED");

  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance file");
  solve_cmd->add_option("instance", o.input, "Instance file")->required();
  solve_cmd->add_option("--strategy", o.strategy, "auto | oracle | fpt-vge2 | complement-budget")
      ->envname("MEPVCB_STRATEGY");
  solve_cmd->add_option("--oracle-cap", o.oracle_cap, "Vertex cap of the exhaustive oracle")
      ->envname("MEPVCB_ORACLE_CAP");

  auto* reduce_cmd = app.add_subcommand("reduce", "Apply a reduction to an instance file");
  reduce_cmd->add_option("reduction", o.reduction, "Reduction name")->required();
  reduce_cmd->add_option("source", o.input, "Source instance file")->required();
  reduce_cmd->add_option("target", o.output, "Target instance file; the report goes to <target>.report.json")
      ->required();
  reduce_cmd->add_flag("--check", o.check, "Compare oracle verdicts of source and target");
  reduce_cmd->add_option("--oracle-cap", o.oracle_cap, "Vertex cap of the exhaustive oracle")
      ->envname("MEPVCB_ORACLE_CAP");
  reduce_cmd->add_flag("--mutate", o.mutate, "Apply the deliberately broken variant (testing only)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a reduction on a corpus against the oracles");
  verify_cmd->add_option("reduction", o.reduction, "Reduction name or 'all'")->required();
  verify_cmd->add_option("--count", o.count, "Size of the seeded corpus")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--corpus", o.corpus_files, "Use these source files instead of a seeded corpus");
  verify_cmd->add_option("--witness", o.witness, "Where to write the first mismatching source");
  verify_cmd->add_option("--oracle-cap", o.oracle_cap, "Vertex cap of the exhaustive oracle")
      ->envname("MEPVCB_ORACLE_CAP");
  verify_cmd->add_flag("--structured", o.structured, "Decide oversized targets with the exact solver");
  verify_cmd->add_option("--workers", o.workers, "Worker threads")->envname("MEPVCB_WORKERS")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--mutate", o.mutate, "Verify the deliberately broken variant (testing only)");

  auto* generate_cmd = app.add_subcommand("generate", "Write a random or structured instance");
  generate_cmd->add_option("family", o.family,
                           "random-bipartite | two-paths | regular | complete | core-pendant | bkp | subsetsum")
      ->required();
  generate_cmd->add_option("--out", o.output, "Output file (stdout by default)");
  generate_cmd->add_option("--n", o.n, "Items, 2-paths, side size of regular graphs, or core size");
  generate_cmd->add_option("--left", o.left, "Left side size (isolated edges for core-pendant)");
  generate_cmd->add_option("--right", o.right, "Right side size");
  generate_cmd->add_option("--density", o.density, "Edge probability");
  generate_cmd->add_option("--degree", o.degree, "Degree of regular graphs (extra pendants for core-pendant)");
  generate_cmd->add_option("--wmin", o.wmin, "Smallest weight");
  generate_cmd->add_option("--wmax", o.wmax, "Largest weight, profit or absolute value");
  generate_cmd->add_flag("--gap", o.gap, "bkp: satisfy the gap condition");
  generate_cmd->add_option("--shape", o.shape, "bkp: signed | positive | ordered | gap");

  auto* stats_cmd = app.add_subcommand("stats", "Print graph parameters of an instance file");
  stats_cmd->add_option("instance", o.input, "Instance file")->required();

  std::vector<std::string> argv_store{"mepvcb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (reduce_cmd->parsed()) return cmd_reduce(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (generate_cmd->parsed()) return cmd_generate(o, out);
    return cmd_stats(o, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace mepvcb::cli
