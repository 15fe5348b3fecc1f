#pragma once

// JSON interchange: trajectory datasets, network weights, and the staged
// analysis caches (transition graph, Morse graph, ROA).

#include "lmorse/dataset.hpp"
#include "lmorse/dynamics.hpp"
#include "lmorse/morse.hpp"
#include "lmorse/transition.hpp"

#include <filesystem>
#include <string>

namespace lmorse {

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Trajectory datasets.
TrajectoryDataset parse_trajectories(const std::string& text);
std::string serialize_trajectories(const TrajectoryDataset& d);
TrajectoryDataset load_trajectories(const std::filesystem::path& path);
void save_trajectories(const TrajectoryDataset& d, const std::filesystem::path& path);
/// Digest of the canonical serialization; unchanged by load/save round trips.
std::string dataset_digest(const TrajectoryDataset& d);

// Network weights.
DynamicsNet parse_dynamics_net(const std::string& text);
std::string serialize_dynamics_net(const DynamicsNet& net);
DynamicsNet load_dynamics_net(const std::filesystem::path& path);
void save_dynamics_net(const DynamicsNet& net, const std::filesystem::path& path);
/// Networks hash their canonical weights; analytic maps hash name + parameters.
std::string dynamics_digest(const DynamicsMap& m);

// Staged caches. Each carries the digests needed to detect staleness.
struct GraphArtifact {
    std::string config_digest;
    std::string input_digest;
    TransitionGraph graph;
};
std::string serialize_graph(const GraphArtifact& a);
GraphArtifact parse_graph(const std::string& text);

struct MorseArtifact {
    std::string config_digest;
    std::string graph_digest;
    MorseGraph graph;
};
std::string serialize_morse(const MorseArtifact& a);
MorseArtifact parse_morse(const std::string& text);

struct RoaArtifact {
    std::string config_digest;
    std::string morse_digest;
    RoaAssignment roa;
};
std::string serialize_roa(const RoaArtifact& a);
RoaArtifact parse_roa(const std::string& text);

}  // namespace lmorse
