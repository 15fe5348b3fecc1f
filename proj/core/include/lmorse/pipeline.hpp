#pragma once

#include "lmorse/config.hpp"
#include "lmorse/dynamics.hpp"
#include "lmorse/evaluation.hpp"
#include "lmorse/transition.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lmorse {

/// File names inside the output directory.
struct ArtifactPaths {
    std::filesystem::path graph;      // graph.json
    std::filesystem::path morse;      // morse.json
    std::filesystem::path morse_dot;  // morse.dot
    std::filesystem::path roa_csv;    // roa.csv
    std::filesystem::path roa;        // roa.json
    std::filesystem::path report;     // report.json
    std::filesystem::path run;        // run.json (timings; not digested)

    static ArtifactPaths in(const std::filesystem::path& dir);
};

struct Timings {
    std::vector<std::pair<std::string, double>> seconds;
};

DynamicsMap load_dynamics(const AnalysisConfig& c);

/// Digest of everything the transition graph depends on.
std::string graph_input_digest(const AnalysisConfig& c, const std::string& train_digest,
                               const std::string& dynamics_digest);

/// Each stage reads the artifacts of the previous one, refuses stale ones with
/// StaleArtifactError, and writes its own.
void stage_build_graph(const AnalysisConfig& c, unsigned workers, std::ostream& log, Timings& t);
void stage_morse(const AnalysisConfig& c, std::ostream& log, Timings& t);
void stage_roa(const AnalysisConfig& c, std::ostream& log, Timings& t);
/// Returns the summary table text.
std::string stage_evaluate(const AnalysisConfig& c, std::ostream& log, Timings& t);

/// All stages in order, then run.json. Returns the summary table text.
std::string run_analysis(const AnalysisConfig& c, unsigned workers, std::ostream& log);

/// Loads graph.json after checking it against the current inputs.
TransitionGraph load_checked_graph(const AnalysisConfig& c);

}  // namespace lmorse
