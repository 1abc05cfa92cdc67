// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success (audit: stable), 1 audit found blocking pairs or a
// verify check failed, 2 invalid input / parameters / I/O, 3 verify budget
// exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alignmatch/alignmatch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Failure {
  int exit_code;
  std::string message;
};

struct InstanceDeleter {
  void operator()(am_instance* p) const { am_instance_free(p); }
};
struct AllocationDeleter {
  void operator()(am_allocation* p) const { am_allocation_free(p); }
};
struct SpatialDeleter {
  void operator()(am_spatial* p) const { am_spatial_free(p); }
};
using InstancePtr = std::unique_ptr<am_instance, InstanceDeleter>;
using AllocationPtr = std::unique_ptr<am_allocation, AllocationDeleter>;
using SpatialPtr = std::unique_ptr<am_spatial, SpatialDeleter>;

// Takes ownership of a C string from the library.
std::string take(char* text) {
  std::string out = text ? text : "";
  am_string_free(text);
  return out;
}

void check(am_status status, const std::string& context) {
  if (status == AM_OK) return;
  int code = status == AM_ERR_BUDGET_EXCEEDED ? kExitBudget : kExitInvalid;
  throw Failure{code, context + ": " + am_status_name(status) + ": " +
                          am_last_error()};
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInvalid, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitInvalid, "cannot write " + path};
  out << text;
  if (!out) throw Failure{kExitInvalid, "write failed for " + path};
}

std::string sidecar_path_for(const std::string& instance_path) {
  const std::string ext = ".json";
  if (instance_path.size() > ext.size() &&
      instance_path.compare(instance_path.size() - ext.size(), ext.size(),
                            ext) == 0)
    return instance_path.substr(0, instance_path.size() - ext.size()) +
           ".spatial.json";
  return instance_path + ".spatial.json";
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string format = "json";
  bool strict = true;
  bool trace = false;
};

InstancePtr load_instance(const std::string& path, const GlobalOptions& g) {
  std::string text = read_text(path);
  am_instance* raw = nullptr;
  check(am_instance_parse(text.c_str(), g.strict ? 1 : 0, &raw),
        "instance " + path);
  return InstancePtr(raw);
}

AllocationPtr load_allocation(const am_instance* instance,
                              const std::string& path) {
  std::string text = read_text(path);
  am_allocation* raw = nullptr;
  check(am_allocation_parse(instance, text.c_str(), &raw), "allocation " + path);
  return AllocationPtr(raw);
}

void require_one_stdin(const std::string& a, const std::string& b) {
  if (a == "-" && b == "-")
    throw Failure{kExitInvalid,
                  "the instance and the allocation cannot both come from stdin"};
}

// --- generate --------------------------------------------------------------

struct RandomArgs {
  std::size_t students = 0;
  std::size_t schools = 0;
  std::vector<std::int64_t> capacities;
  std::string out = "-";
};

int run_generate_random(const RandomArgs& a, const GlobalOptions& g) {
  if (!a.capacities.empty() && a.capacities.size() != a.schools)
    throw Failure{kExitInvalid, "--capacities needs one value per school"};
  am_instance* raw = nullptr;
  check(am_instance_random(a.students, a.schools,
                           a.capacities.empty() ? nullptr : a.capacities.data(),
                           g.seed, &raw),
        "generate random");
  InstancePtr instance(raw);
  char* text = nullptr;
  check(am_instance_serialize(instance.get(), &text), "serialize");
  write_text(a.out, take(text));
  return kExitOk;
}

struct SpatialArgs {
  std::size_t grid = 0;
  std::size_t students = 0;
  std::size_t schools = 15;
  std::vector<std::int64_t> capacities;
  std::string capacity_mode = "proportional";
  std::string out = "-";
  std::string sidecar;
};

int run_generate_spatial(const SpatialArgs& a, const GlobalOptions& g) {
  if ((a.grid == 0) == (a.students == 0))
    throw Failure{kExitInvalid, "give exactly one of --grid or --students"};
  am_spatial_params params;
  am_spatial_params_init(&params);
  params.grid = a.grid;
  params.random_students = a.students;
  params.n_schools = a.schools;
  params.seed = g.seed;
  params.strict = g.strict ? 1 : 0;
  if (!a.capacities.empty()) {
    if (a.capacities.size() != a.schools)
      throw Failure{kExitInvalid, "--capacities needs one value per school"};
    params.capacity_mode = AM_CAPACITY_EXPLICIT;
    params.capacities = a.capacities.data();
  } else {
    params.capacity_mode = a.capacity_mode == "even" ? AM_CAPACITY_EVEN
                                                     : AM_CAPACITY_PROPORTIONAL;
  }
  am_spatial* raw = nullptr;
  check(am_spatial_generate(&params, &raw), "generate spatial");
  SpatialPtr spatial(raw);

  am_instance* inst_raw = nullptr;
  check(am_spatial_instance(spatial.get(), &inst_raw), "generate spatial");
  InstancePtr instance(inst_raw);
  char* text = nullptr;
  check(am_instance_serialize(instance.get(), &text), "serialize");
  write_text(a.out, take(text));

  std::string sidecar = a.sidecar;
  if (sidecar.empty() && a.out != "-") sidecar = sidecar_path_for(a.out);
  if (!sidecar.empty()) {
    char* side = nullptr;
    check(am_spatial_serialize(spatial.get(), &side), "serialize sidecar");
    write_text(sidecar, take(side));
  }
  return kExitOk;
}

// --- solve / audit / metrics / verify / render ---------------------------

struct SolveArgs {
  std::string algorithm;
  std::string instance = "-";
  std::string out = "-";
  std::string trace_out;
};

int run_solve(const SolveArgs& a, const GlobalOptions& g) {
  am_algorithm algorithm;
  check(am_algorithm_from_name(a.algorithm.c_str(), &algorithm), "solve");
  auto instance = load_instance(a.instance, g);
  am_allocation* raw = nullptr;
  char* trace = nullptr;
  bool want_trace = g.trace || !a.trace_out.empty();
  check(am_solve(instance.get(), algorithm, &raw, want_trace ? &trace : nullptr),
        "solve");
  AllocationPtr allocation(raw);
  std::string trace_text = take(trace);
  char* text = nullptr;
  check(am_allocation_to_json(instance.get(), allocation.get(),
                              am_algorithm_name(algorithm), &text),
        "solve");
  write_text(a.out, take(text));
  if (want_trace) {
    if (a.trace_out.empty())
      std::cerr << trace_text;
    else
      write_text(a.trace_out, trace_text);
  }
  return kExitOk;
}

struct PairArgs {
  std::string instance;
  std::string allocation = "-";
  std::string out = "-";
};

int run_audit(const PairArgs& a, const GlobalOptions& g) {
  require_one_stdin(a.instance, a.allocation);
  auto instance = load_instance(a.instance, g);
  auto allocation = load_allocation(instance.get(), a.allocation);
  int stable = 0;
  char* report = nullptr;
  check(am_audit(instance.get(), allocation.get(), &stable, &report), "audit");
  write_text(a.out, take(report));
  return stable ? kExitOk : kExitUnstable;
}

int run_metrics(const PairArgs& a, const GlobalOptions& g) {
  require_one_stdin(a.instance, a.allocation);
  auto instance = load_instance(a.instance, g);
  auto allocation = load_allocation(instance.get(), a.allocation);
  char* report = nullptr;
  check(am_metrics(instance.get(), allocation.get(), &report), "metrics");
  write_text(a.out, take(report));
  return kExitOk;
}

struct VerifyArgs {
  std::string instance = "-";
  std::size_t max_students = 7;
  std::uint64_t max_allocations = 10'000'000;
  std::string out = "-";
};

int run_verify(const VerifyArgs& a, const GlobalOptions& g) {
  auto instance = load_instance(a.instance, g);
  int passed = 0;
  char* report = nullptr;
  check(am_verify(instance.get(), a.max_students, a.max_allocations, &passed,
                  &report),
        "verify");
  write_text(a.out, take(report));
  return passed ? kExitOk : kExitUnstable;
}

struct RenderArgs {
  std::string instance;
  std::string allocation = "-";
  std::string out;
  std::string spatial;
  std::string csv;
  double cell_size = 8.0;
};

int run_render(const RenderArgs& a, const GlobalOptions& g) {
  require_one_stdin(a.instance, a.allocation);
  std::string sidecar = a.spatial;
  if (sidecar.empty()) {
    if (a.instance == "-")
      throw Failure{kExitInvalid,
                    "--spatial is required when the instance comes from stdin"};
    sidecar = sidecar_path_for(a.instance);
  }
  std::ifstream probe(sidecar);
  if (!probe)
    throw Failure{kExitInvalid, "no spatial sidecar at " + sidecar +
                                    "; render needs a grid spatial instance"};
  probe.close();

  auto instance = load_instance(a.instance, g);
  std::string side_text = read_text(sidecar);
  am_spatial* raw = nullptr;
  check(am_spatial_parse(side_text.c_str(), g.strict ? 1 : 0, &raw),
        "sidecar " + sidecar);
  SpatialPtr spatial(raw);
  am_instance* derived_raw = nullptr;
  check(am_spatial_instance(spatial.get(), &derived_raw), "sidecar");
  InstancePtr derived(derived_raw);
  if (!am_instance_equal(instance.get(), derived.get()))
    throw Failure{kExitInvalid,
                  "sidecar " + sidecar + " does not describe " + a.instance};

  auto allocation = load_allocation(instance.get(), a.allocation);
  char* svg = nullptr;
  check(am_spatial_render_svg(spatial.get(), allocation.get(), a.cell_size, &svg),
        "render");
  write_text(a.out, take(svg));
  if (!a.csv.empty()) {
    char* csv = nullptr;
    check(am_spatial_territories_csv(spatial.get(), allocation.get(), &csv),
          "render");
    write_text(a.csv, take(csv));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable and max-min-lex matching under aligned preferences"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed (u64)");
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json"}));
  app.add_flag("--strict,!--no-strict", global.strict,
               "Reject repeated utility values (default: strict)");
  app.add_flag("--trace", global.trace, "Emit the solver trace");

  auto* generate = app.add_subcommand("generate", "Write an instance file");
  generate->require_subcommand(1);

  RandomArgs random_args;
  auto* gen_random =
      generate->add_subcommand("random", "Random strict instance");
  gen_random->add_option("--students", random_args.students)->required();
  gen_random->add_option("--schools", random_args.schools)->required();
  gen_random->add_option("--capacities", random_args.capacities)
      ->delimiter(',');
  gen_random->add_option("-o,--out", random_args.out);

  SpatialArgs spatial_args;
  auto* gen_spatial = generate->add_subcommand(
      "spatial", "Students and schools on the unit square");
  gen_spatial->add_option("--grid", spatial_args.grid,
                          "Students at the cell centers of a grid x grid lattice");
  gen_spatial->add_option("--students", spatial_args.students,
                          "Uniformly drawn students instead of a lattice");
  gen_spatial->add_option("--schools", spatial_args.schools);
  gen_spatial->add_option("--capacities", spatial_args.capacities)
      ->delimiter(',');
  gen_spatial->add_option("--capacity-mode", spatial_args.capacity_mode)
      ->check(CLI::IsMember({"proportional", "even"}));
  gen_spatial->add_option("-o,--out", spatial_args.out);
  gen_spatial->add_option("--sidecar", spatial_args.sidecar,
                          "Coordinates file (default: <out>.spatial.json)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Compute an allocation");
  solve->add_option("algorithm", solve_args.algorithm,
                    "max-max-lex | da | max-min-lex")
      ->required();
  solve->add_option("-i,--instance", solve_args.instance);
  solve->add_option("-o,--out", solve_args.out);
  solve->add_option("--trace-out", solve_args.trace_out,
                    "Write the trace here (implies --trace)");

  PairArgs audit_args;
  auto* audit = app.add_subcommand("audit", "Blocking pairs and metrics");
  audit->add_option("-i,--instance", audit_args.instance)->required();
  audit->add_option("-a,--allocation", audit_args.allocation);
  audit->add_option("-o,--out", audit_args.out);

  PairArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "Inequality metrics");
  metrics->add_option("-i,--instance", metrics_args.instance)->required();
  metrics->add_option("-a,--allocation", metrics_args.allocation);
  metrics->add_option("-o,--out", metrics_args.out);

  VerifyArgs verify_args;
  auto* verify =
      app.add_subcommand("verify", "Brute-force cross-check of every solver");
  verify->add_option("-i,--instance", verify_args.instance);
  verify->add_option("--max-students", verify_args.max_students);
  verify->add_option("--max-allocations", verify_args.max_allocations);
  verify->add_option("-o,--out", verify_args.out);

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "SVG territory map");
  render->add_option("-i,--instance", render_args.instance)->required();
  render->add_option("-a,--allocation", render_args.allocation);
  render->add_option("-o,--out", render_args.out)->required();
  render->add_option("--spatial", render_args.spatial,
                     "Coordinates sidecar (default: <instance>.spatial.json)");
  render->add_option("--csv", render_args.csv, "Also write the territory CSV");
  render->add_option("--cell-size", render_args.cell_size, "Pixels per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (gen_random->parsed()) return run_generate_random(random_args, global);
    if (gen_spatial->parsed()) return run_generate_spatial(spatial_args, global);
    if (solve->parsed()) return run_solve(solve_args, global);
    if (audit->parsed()) return run_audit(audit_args, global);
    if (metrics->parsed()) return run_metrics(metrics_args, global);
    if (verify->parsed()) return run_verify(verify_args, global);
    if (render->parsed()) return run_render(render_args, global);
  } catch (const Failure& f) {
    std::cerr << "alignmatch: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitInvalid;
}
