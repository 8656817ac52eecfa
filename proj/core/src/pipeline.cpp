#include "gxw/pipeline.hpp"

#include <chrono>

#include <json.hpp>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

using nlohmann::json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Synthesized:
      return "synthesized";
    case Verdict::Unknown:
      return "unknown";
    case Verdict::Unrealizable:
      return "unrealizable";
    case Verdict::RejectedPattern:
      return "rejected-pattern";
    case Verdict::RejectedCycle:
      return "rejected-cycle";
    case Verdict::InternalError:
      return "internal-error";
  }
  return "?";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Synthesized:
      return 0;
    case Verdict::Unknown:
      return 2;
    case Verdict::Unrealizable:
      return 3;
    case Verdict::RejectedPattern:
    case Verdict::RejectedCycle:
      return 4;
    case Verdict::InternalError:
      return 1;
  }
  return 1;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["timings_ms"] = r.timings_ms;
  if (r.witness) {
    json w = json::object();
    for (const auto& [k, v] : r.witness->values) w[k] = v;
    j["witness"] = w;
  }
  if (!r.decided_by.empty()) j["decided_by"] = r.decided_by;
  j["omega"] = r.omega;
  j["warnings"] = r.warnings;
  json prov = json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = prov;
  j["artifacts"] = r.artifacts;
  return j.dump(2) + "\n";
}

namespace {

class PhaseTimer {
 public:
  explicit PhaseTimer(std::map<std::string, double>& sink) : sink_(sink) {}
  void begin(const std::string& phase) {
    end();
    phase_ = phase;
    start_ = std::chrono::steady_clock::now();
  }
  void end() {
    if (phase_.empty()) return;
    auto dt = std::chrono::steady_clock::now() - start_;
    sink_[phase_] += std::chrono::duration<double, std::milli>(dt).count();
    phase_.clear();
  }

 private:
  std::map<std::string, double>& sink_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SynthesisOutcome run_synthesis(const GxwSpec& spec, const SynthesisOptions& opts) {
  SynthesisOutcome out;
  RunReport& rep = out.report;
  PhaseTimer timer(rep.timings_ms);
  for (const char* k : {"parse", "build", "encode", "solve", "validate"}) rep.timings_ms[k] = 0.0;
  rep.warnings = spec.warnings;
  out.spec = spec;

  try {
    timer.begin("build");
    PartialSystem ps = build_controller(spec);
    share_monitors(ps);
    for (const auto& w : ps.warnings) rep.warnings.push_back(w);
    try {
      evaluation_order(ps.sys);
    } catch (const CycleError& e) {
      rep.verdict = Verdict::RejectedCycle;
      rep.detail = e.what();
      out.partial = std::move(ps);
      timer.end();
      return out;
    }
    for (const auto& [label, ids] : ps.provenance)
      rep.provenance[label] = std::vector<std::string>(ids.begin(), ids.end());
    rep.omega = compute_omega(spec);

    timer.begin("encode");
    QbfProblem static_problem = encode_static(ps, spec);
    timer.begin("solve");
    auto witness = solve_2qbf(static_problem);
    if (witness) {
      rep.decided_by = "static";
    } else {
      bool complete_regime = bounded_check_complete(spec);
      int depth = 0;
      if (opts.unroll == UnrollMode::Fixed) {
        depth = opts.unroll_depth;
      } else if (opts.unroll == UnrollMode::Auto) {
        depth = rep.omega;
      }
      if (opts.unroll != UnrollMode::Off && depth >= 1) {
        timer.begin("encode");
        QbfProblem unrolled = encode_unrolled(ps, spec, depth);
        timer.begin("solve");
        witness = solve_2qbf(unrolled);
        if (witness) {
          rep.decided_by = "unrolled";
          if (opts.unroll == UnrollMode::Fixed && depth < rep.omega)
            rep.warnings.push_back("unroll depth " + std::to_string(depth) +
                                   " is below the computed bound " +
                                   std::to_string(rep.omega));
        } else if (complete_regime) {
          // within the restricted fragment the bounded check is complete
          rep.verdict = Verdict::Unrealizable;
          rep.decided_by = "unrolled";
          out.partial = std::move(ps);
          timer.end();
          return out;
        }
      }
      if (!witness) {
        rep.verdict = Verdict::Unknown;
        rep.detail = "constraint system unsatisfiable without unroll";
        out.partial = std::move(ps);
        timer.end();
        return out;
      }
    }
    rep.witness = witness;
    ActorSystem sys = apply_witness(ps, *witness);

    if (opts.fuzz_traces > 0) {
      timer.begin("validate");
      EquivalenceResult eq = equivalence_check(sys, spec, static_cast<int>(opts.fuzz_length),
                                               opts.fuzz_traces, opts.seed);
      if (!eq.ok) {
        rep.verdict = Verdict::InternalError;
        rep.detail = "validation found a violating run: " + eq.reason;
        out.partial = std::move(ps);
        timer.end();
        return out;
      }
    }
    rep.verdict = Verdict::Synthesized;
    out.partial = std::move(ps);
    out.system = std::move(sys);
    timer.end();
  } catch (const NoMatchError& e) {
    rep.verdict = Verdict::RejectedPattern;
    rep.detail = e.what();
  } catch (const MixedClauseError& e) {
    rep.verdict = Verdict::RejectedPattern;
    rep.detail = e.what();
  } catch (const TemporalOperatorError& e) {
    rep.verdict = Verdict::RejectedPattern;
    rep.detail = e.what();
  } catch (const Error& e) {
    rep.verdict = Verdict::InternalError;
    rep.detail = e.what();
  }
  return out;
}

SynthesisOutcome run_synthesis_file(const std::string& path, const SynthesisOptions& opts) {
  SynthesisOutcome out;
  std::map<std::string, double> parse_timing;
  PhaseTimer timer(parse_timing);
  timer.begin("parse");
  GxwSpec spec;
  try {
    spec = load_spec(path);
  } catch (const Error& e) {
    timer.end();
    bool user_error = dynamic_cast<const ParseError*>(&e) ||
                      dynamic_cast<const NoMatchError*>(&e) ||
                      dynamic_cast<const MixedClauseError*>(&e) ||
                      dynamic_cast<const TemporalOperatorError*>(&e) ||
                      dynamic_cast<const DepthExceededError*>(&e) ||
                      dynamic_cast<const UnsatisfiableAssumptionError*>(&e);
    out.report.verdict = user_error ? Verdict::RejectedPattern : Verdict::InternalError;
    out.report.detail = e.what();
    out.report.timings_ms = parse_timing;
    return out;
  }
  timer.end();
  out = run_synthesis(spec, opts);
  out.report.timings_ms["parse"] = parse_timing["parse"];
  return out;
}

std::string make_scaling_spec(int n_in, int n_out, int k) {
  std::string text;
  text += "input";
  for (int i = 0; i < n_in; ++i) text += std::string(i ? "," : "") + " i" + std::to_string(i);
  text += ";\noutput";
  for (int i = 0; i < n_out; ++i) text += std::string(i ? "," : "") + " o" + std::to_string(i);
  text += ";\n";
  for (int m = 0; m < k; ++m) {
    std::string trig = "i" + std::to_string(m % n_in);
    std::string rel = "i" + std::to_string((m + 1) % n_in);
    std::string out = "o" + std::to_string(m % n_out);
    text += "T" + std::to_string(m + 1) + ": G((!" + trig + " & X " + trig + ") -> X (" + out +
            " W " + rel + "));\n";
  }
  return text;
}

}  // namespace gxw
