#pragma once

#include "lmorse/geometry.hpp"

#include <string>
#include <vector>

namespace lmorse {

enum class Split { train, validation };

std::string to_string(Split s);
Split split_from_string(const std::string& name);

struct Trajectory {
    std::string id;
    int label = 0;  // 1 = success, 0 = failure
    std::vector<LatentPoint> points;
};

/// Labeled latent trajectories of one split.
struct TrajectoryDataset {
    std::size_t dim = 0;
    Split split = Split::train;
    std::vector<Trajectory> trajectories;

    /// Throws FormatError on the first violated invariant: empty list,
    /// fewer than 2 points, wrong dimension, coordinate outside [-1,1] or
    /// non-finite, label outside {0,1}.
    void validate() const;

    std::size_t point_count() const;
};

}  // namespace lmorse
