#pragma once

#include <string>
#include <vector>

#include "grouplab/cohomology.hpp"
#include "grouplab/functorial.hpp"
#include "grouplab/isolation.hpp"
#include "grouplab/lie_core.hpp"

namespace grouplab {

// ---------------------------------------------------------------------------
// Built-in corpus
// ---------------------------------------------------------------------------

IntegerRep alpha_rep();                 // Z2 by diag(1,-1) on Z^2
IntegerRep beta_rep();                  // Z2 by [[1,1],[0,-1]]
IntegerRep rotation4_rep();             // Z4 by [[0,-1],[1,0]]
IntegerRep negation_rep();              // Z2 by (-1) on Z^1
SemidirectGroup g_alpha();
SemidirectGroup g_beta();

/// Named Lie algebras: so3, su2, su2_2eps, u2, r1, r2, r3, so3+r1, su2+su2.
LieAlgebraData corpus_algebra(const std::string& name);

/// Named groups: T1, T2, G_alpha, G_beta, SO3, SU2.
GroupPtr corpus_group(const std::string& name);

// ---------------------------------------------------------------------------
// Experiment configs
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string experiment;
    std::string params_json;  // canonical dump of the params object
    unsigned long long seed = 0;
    std::string output_dir = ".";
};

/// Thrown on schema violations (unknown experiment, missing/ill-typed params).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parse and validate a config file body. Flags may override seed/output.
ExperimentConfig parse_experiment_config(const std::string& json_text);

std::vector<std::string> list_experiments();

struct Artifact {
    std::string filename;
    std::string content;
};

struct ExperimentOutcome {
    int exit_code = 0;                // 0 ok, 1 experiment failure
    std::vector<Artifact> artifacts;  // written by the caller
    std::string summary;              // one-line human summary
};

/// Run one experiment. Deterministic given (experiment, params, seed); every
/// artifact body embeds the tool version, the seed and the config hash.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// FNV-1a hash of the canonical config serialization.
std::string config_hash(const ExperimentConfig& config);

inline const char* grouplab_version() { return "0.1.0"; }

}  // namespace grouplab
