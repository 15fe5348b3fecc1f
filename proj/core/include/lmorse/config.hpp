#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lmorse {

/// Settings for one analysis run. Relative paths in a config file resolve
/// against the file's directory.
struct AnalysisConfig {
    std::string task;  // name shown in the summary table
    std::vector<std::int64_t> subdivisions;
    int rollout_steps = 12;
    std::optional<double> delta;  // overrides the Lipschitz-derived radius
    double safety_factor = 1.5;
    std::size_t lipschitz_samples = 10000;
    double lipschitz_pair_scale = 1e-3;
    std::uint64_t seed = 0;
    std::size_t extra_samples_per_cell = 0;

    // Exactly one of system / weights.
    std::optional<std::string> system;
    std::optional<std::filesystem::path> weights;

    std::filesystem::path train;
    std::optional<std::filesystem::path> validation;
    std::filesystem::path output_dir = "lmorse-out";

    /// Throws Error naming the offending field.
    void validate() const;
};

AnalysisConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
AnalysisConfig load_config(const std::filesystem::path& path);
/// Canonical JSON form (paths as given after resolution).
std::string serialize_config(const AnalysisConfig& c);
/// Digest of the analysis settings. File locations are left out so the value
/// does not depend on where the tool is run from; the contents of the input
/// files are tracked by their own digests in each artifact.
std::string config_digest(const AnalysisConfig& c);

}  // namespace lmorse
