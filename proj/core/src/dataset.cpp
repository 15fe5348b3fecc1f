#include "lmorse/dataset.hpp"

#include "lmorse/error.hpp"

#include <cmath>

namespace lmorse {

std::string to_string(Split s) { return s == Split::train ? "train" : "validation"; }

Split split_from_string(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "validation") return Split::validation;
    throw FormatError("unknown split '" + name + "' (expected train or validation)");
}

void TrajectoryDataset::validate() const {
    if (dim == 0) throw FormatError("dataset dim must be positive");
    if (trajectories.empty()) throw FormatError("dataset has no trajectories");
    for (std::size_t t = 0; t < trajectories.size(); ++t) {
        const auto& tr = trajectories[t];
        const std::string where = "trajectory '" + tr.id + "' (index " + std::to_string(t) + ")";
        if (tr.label != 0 && tr.label != 1) {
            throw FormatError(where + ": label must be 0 or 1, got " + std::to_string(tr.label));
        }
        if (tr.points.size() < 2) throw FormatError(where + ": needs at least 2 points");
        for (std::size_t i = 0; i < tr.points.size(); ++i) {
            const auto& p = tr.points[i];
            if (p.dim() != dim) {
                throw FormatError(where + ", point " + std::to_string(i) + ": has " +
                                  std::to_string(p.dim()) + " coordinates, dataset dim is " +
                                  std::to_string(dim));
            }
            for (std::size_t a = 0; a < dim; ++a) {
                if (!std::isfinite(p[a]) || p[a] < -1.0 || p[a] > 1.0) {
                    throw FormatError(where + ", point " + std::to_string(i) + ", coordinate " +
                                      std::to_string(a) + ": value " + std::to_string(p[a]) +
                                      " outside [-1, 1]");
                }
            }
        }
    }
}

std::size_t TrajectoryDataset::point_count() const {
    std::size_t n = 0;
    for (const auto& t : trajectories) n += t.points.size();
    return n;
}

}  // namespace lmorse
