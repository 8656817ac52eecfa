// Command line front-end: synth | simulate | check | export | omega | bench

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gxw/errors.hpp"
#include "gxw/netlist.hpp"
#include "gxw/pipeline.hpp"
#include "gxw/util.hpp"

namespace fs = std::filesystem;
using namespace gxw;

namespace {

struct CommonOpts {
  std::string out_dir = ".";
  std::string unroll = "auto";
  size_t fuzz = 0;
  uint64_t seed = 0;
  std::string json_report;
  bool dot = false;
  std::string qdimacs;
};

SynthesisOptions to_options(const CommonOpts& c) {
  SynthesisOptions o;
  if (c.unroll == "auto") {
    o.unroll = UnrollMode::Auto;
  } else if (c.unroll == "off") {
    o.unroll = UnrollMode::Off;
  } else {
    o.unroll = UnrollMode::Fixed;
    o.unroll_depth = std::stoi(c.unroll);
  }
  o.fuzz_traces = c.fuzz;
  o.seed = c.seed;
  return o;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_synth(const std::string& specfile, const CommonOpts& copts) {
  SynthesisOutcome out = run_synthesis_file(specfile, to_options(copts));
  RunReport& rep = out.report;

  fs::create_directories(copts.out_dir);
  std::string base = (fs::path(copts.out_dir) / stem_of(specfile)).string();
  if (out.system) {
    write_file_atomic(base + ".netlist.json", export_netlist_json(*out.system));
    rep.artifacts["netlist"] = base + ".netlist.json";
    write_file_atomic(base + ".dot", export_dot(*out.system));
    rep.artifacts["dot"] = base + ".dot";
  }
  if (rep.witness) {
    write_file_atomic(base + ".witness", witness_to_string(*rep.witness));
    rep.artifacts["witness"] = base + ".witness";
  }
  std::string report_path = copts.json_report.empty() ? base + ".report.json" : copts.json_report;
  rep.artifacts["report"] = report_path;
  write_file_atomic(report_path, report_to_json(rep));

  std::cout << verdict_name(rep.verdict);
  if (!rep.detail.empty()) std::cout << ": " << rep.detail;
  std::cout << "\n";
  if (rep.witness)
    for (const auto& [k, v] : rep.witness->values)
      std::cout << "  A(" << k << ") = " << (v ? "true" : "false") << "\n";
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  return verdict_exit_code(rep.verdict);
}

int cmd_simulate(const std::string& netlist_path, const std::string& trace_path,
                 const std::string& out_path) {
  ActorSystem sys = import_netlist_json(read_file(netlist_path));
  Trace ins = trace_from_csv(read_file(trace_path));
  std::vector<std::map<std::string, bool>> in_maps;
  for (size_t t = 0; t < ins.length(); ++t) {
    std::map<std::string, bool> m;
    for (const auto& v : sys.ext_inputs) m[v] = ins.at(t, v);
    in_maps.push_back(std::move(m));
  }
  auto outs = run(sys, in_maps);
  Trace out_tr = Trace::empty(sys.ext_outputs, outs.size());
  for (size_t t = 0; t < outs.size(); ++t)
    for (const auto& [k, v] : outs[t]) out_tr.set(t, k, v);
  std::string csv = trace_to_csv(out_tr);
  if (out_path.empty() || out_path == "-")
    std::cout << csv;
  else
    write_file_atomic(out_path, csv);
  return 0;
}

int cmd_check(const std::string& specfile, const std::string& trace_path) {
  GxwSpec spec = load_spec(specfile);
  Trace joint = trace_from_csv(read_file(trace_path));
  auto violations = check_trace(spec, joint);
  for (const auto& v : violations)
    std::cout << v.label << " @ cycle " << v.cycle << ": " << v.reason << "\n";
  if (violations.empty()) {
    std::cout << "ok: no violations over " << joint.length() << " cycles\n";
    return 0;
  }
  return 1;
}

int cmd_export(const std::string& input, const CommonOpts& copts) {
  if (copts.dot) {
    ActorSystem sys = import_netlist_json(read_file(input));
    std::string path = (fs::path(copts.out_dir) / (stem_of(input) + ".dot")).string();
    write_file_atomic(path, export_dot(sys));
    std::cout << path << "\n";
    return 0;
  }
  if (!copts.qdimacs.empty()) {
    // the constraint system needs the specification (invariants, assumption)
    GxwSpec spec = load_spec(input);
    PartialSystem ps = build_controller(spec);
    share_monitors(ps);
    evaluation_order(ps.sys);
    QbfProblem p;
    if (copts.unroll == "auto" || copts.unroll == "off") {
      p = encode_static(ps, spec);
    } else {
      p = encode_unrolled(ps, spec, std::stoi(copts.unroll));
    }
    write_file_atomic(copts.qdimacs, export_qdimacs(p));
    std::cout << copts.qdimacs << "\n";
    return 0;
  }
  std::cerr << "export: pass --dot (netlist input) or --qdimacs FILE (spec input)\n";
  return 1;
}

int cmd_omega(const std::string& specfile) {
  GxwSpec spec = load_spec(specfile);
  std::cout << compute_omega(spec) << "\n";
  return 0;
}

int cmd_bench(int n, int k, const CommonOpts& copts) {
  std::string text = make_scaling_spec(n, n, k);
  fs::create_directories(copts.out_dir);
  std::string specfile = (fs::path(copts.out_dir) / ("bench_" + std::to_string(n) + "_" +
                                                     std::to_string(k) + ".gxw"))
                             .string();
  write_file_atomic(specfile, text);
  auto t0 = std::chrono::steady_clock::now();
  SynthesisOutcome out = run_synthesis_file(specfile, to_options(copts));
  auto total =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const auto& ms = out.report.timings_ms;
  std::cout << "n,k,parse_ms,build_ms,encode_ms,solve_ms,validate_ms,total_ms,verdict\n";
  auto get = [&](const char* key) {
    auto it = ms.find(key);
    return it == ms.end() ? 0.0 : it->second;
  };
  std::cout << n << "," << k << "," << get("parse") << "," << get("build") << ","
            << get("encode") << "," << get("solve") << "," << get("validate") << "," << total
            << "," << verdict_name(out.report.verdict) << "\n";
  return out.report.verdict == Verdict::Synthesized ? 0 : verdict_exit_code(out.report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured controller synthesis for GXW specifications"};
  app.require_subcommand(1);

  CommonOpts copts;
  std::string specfile, netlist, trace, out_path;
  int bench_n = 8, bench_k = 8;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o", copts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--unroll", copts.unroll, "auto|N|off")->capture_default_str();
    sub->add_option("--fuzz", copts.fuzz, "validation traces after synthesis");
    sub->add_option("--seed", copts.seed, "random seed")->capture_default_str();
    sub->add_option("--json-report", copts.json_report, "report path");
  };

  CLI::App* synth = app.add_subcommand("synth", "synthesize a controller from a .gxw file");
  synth->add_option("spec", specfile, "specification file")->required();
  add_common(synth);

  CLI::App* sim = app.add_subcommand("simulate", "run a netlist on an input trace");
  sim->add_option("netlist", netlist, "netlist json")->required();
  sim->add_option("trace", trace, "input trace csv")->required();
  sim->add_option("-o", out_path, "output csv (default stdout)");

  CLI::App* check = app.add_subcommand("check", "check a joint trace against a specification");
  check->add_option("spec", specfile, "specification file")->required();
  check->add_option("trace", trace, "joint trace csv")->required();

  CLI::App* exp = app.add_subcommand("export", "export dot (from netlist) or qdimacs (from spec)");
  exp->add_option("input", netlist, "netlist json or spec file")->required();
  exp->add_flag("--dot", copts.dot, "write graphviz dot");
  exp->add_option("--qdimacs", copts.qdimacs, "write the constraint system to FILE");
  exp->add_option("-o", copts.out_dir, "output directory")->capture_default_str();
  exp->add_option("--unroll", copts.unroll, "auto|N|off (qdimacs depth)")->capture_default_str();

  CLI::App* om = app.add_subcommand("omega", "print the unroll bound of a specification");
  om->add_option("spec", specfile, "specification file")->required();

  CLI::App* bench = app.add_subcommand("bench", "synthesize a generated spec and report timings");
  bench->add_option("--n", bench_n, "inputs and outputs")->capture_default_str();
  bench->add_option("--k", bench_k, "trigger-until conjuncts")->capture_default_str();
  add_common(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return cmd_synth(specfile, copts);
    if (*sim) return cmd_simulate(netlist, trace, out_path);
    if (*check) return cmd_check(specfile, trace);
    if (*exp) return cmd_export(netlist, copts);
    if (*om) return cmd_omega(specfile);
    if (*bench) return cmd_bench(bench_n, bench_k, copts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
