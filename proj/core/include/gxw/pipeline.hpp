#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gxw/qbf.hpp"
#include "gxw/spec.hpp"
#include "gxw/synthesis.hpp"
#include "gxw/validate.hpp"

namespace gxw {

enum class Verdict { Synthesized, Unknown, Unrealizable, RejectedPattern, RejectedCycle, InternalError };

std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

enum class UnrollMode { Auto, Off, Fixed };

struct SynthesisOptions {
  UnrollMode unroll = UnrollMode::Auto;
  int unroll_depth = 0;      // Fixed mode
  size_t fuzz_traces = 0;    // post-synthesis validation traces
  size_t fuzz_length = 50;
  uint64_t seed = 0;
};

struct RunReport {
  Verdict verdict = Verdict::Unknown;
  std::string detail;  // diagnostic text (rejection reason etc.)
  std::map<std::string, double> timings_ms;  // parse, build, encode, solve, validate
  std::optional<QbfWitness> witness;
  std::string decided_by;  // "static" or "unrolled"
  int omega = 0;
  std::vector<std::string> warnings;
  std::map<std::string, std::vector<std::string>> provenance;  // label -> actor ids
  std::map<std::string, std::string> artifacts;                // name -> path
};

std::string report_to_json(const RunReport& r);

struct SynthesisOutcome {
  RunReport report;
  std::optional<GxwSpec> spec;
  std::optional<PartialSystem> partial;
  std::optional<ActorSystem> system;  // concretized controller on success
};

/// Full pipeline: classify, build, optimize, order, encode, solve, apply the
/// witness and optionally fuzz the result.
SynthesisOutcome run_synthesis(const GxwSpec& spec, const SynthesisOptions& opts);
SynthesisOutcome run_synthesis_file(const std::string& path, const SynthesisOptions& opts);

/// Synthetic specification for scaling runs: k trigger-until conjuncts over
/// n_in inputs and n_out outputs, rising-edge triggers, input-only releases.
std::string make_scaling_spec(int n_in, int n_out, int k);

}  // namespace gxw
