#pragma once

#include <string>

#include "tfd/config.hpp"
#include "tfd/emit.hpp"

namespace tfd {

// Scenario runners behind the command-line front end.  Each runner reads
// its parameters from a flat Config (see the sample files under
// scenarios/), computes with the library layers, writes a CSV series plus
// a line-delimited summary into `out_dir`, and returns the summary.
//
// Callers apply environment overrides to the Config before invoking a
// runner, so the hash recorded in every emitted file describes the
// effective configuration.  Runners are deterministic: identical config
// and seed produce byte-identical files.
//
// Check conventions: threshold checks pass when the measured residual is
// strictly below the threshold; floor checks (names ending in `_floor`)
// store max(0, floor - measured) against threshold 0, so they pass exactly
// when the measured value reaches the floor.  Every declared check appears
// exactly once per summary.

enum class RunKind {
    VerifyAlgebra,  // operator-algebra identity suite over listed spaces
    Evolve,         // driven single-mode evolution: geometric preservation,
                    // q-norm law, trace and frame-invariant conservation
    Propagators,    // two-time kernel tabulations: structure, causality,
                    // and the sandwich-vs-engine equivalence
    Transport,      // occupation kinetics: conservation, positivity,
                    // equilibrium asymptote
    RenormCompare,  // staggered on-shell step vs the transport rate and the
                    // equilibrium mixed-component condition
};

// Maps the CLI spelling (verify-algebra, evolve, propagators, transport,
// renorm-compare); throws ConfigError on anything else.
RunKind parse_run_kind(const std::string& name);
std::string run_kind_name(RunKind kind);

RunSummary run_verify_algebra(const Config& cfg, const std::string& out_dir);
RunSummary run_evolve(const Config& cfg, const std::string& out_dir);
RunSummary run_propagators(const Config& cfg, const std::string& out_dir);
RunSummary run_transport(const Config& cfg, const std::string& out_dir);
RunSummary run_renorm_compare(const Config& cfg, const std::string& out_dir);

// Dispatches on the required key `run.kind`.
RunSummary run_scenario(const Config& cfg, const std::string& out_dir);

}  // namespace tfd
