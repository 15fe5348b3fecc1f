#pragma once

#include "lmorse/dataset.hpp"
#include "lmorse/dynamics.hpp"

#include <cstddef>
#include <cstdint>

namespace lmorse {

struct SynthOptions {
    std::size_t trajectories = 100;
    std::size_t steps = 50;  // points per trajectory = steps + 1
    std::uint64_t seed = 0;
    Split split = Split::train;
};

/// Simulates an analytic map from uniform initial points in [-1,1]^d.
/// A trajectory is labeled success iff its final point is strictly closer to
/// the map's success attractor than to any other attractor.
TrajectoryDataset synthesize(const DynamicsMap& m, const SynthOptions& opts);

/// 1 if `p` would be labeled success by synthesize.
int proximity_label(const DynamicsMap& m, const LatentPoint& p);

}  // namespace lmorse
