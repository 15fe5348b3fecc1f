#pragma once

#include "lmorse/dataset.hpp"
#include "lmorse/geometry.hpp"
#include "lmorse/morse.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lmorse {

/// Initial (B) and final (L) latent vectors split by outcome. Ids line up with
/// the B sets.
struct EndpointSets {
    std::vector<LatentPoint> initial_success;  // B_s
    std::vector<LatentPoint> initial_failure;  // B_f
    std::vector<LatentPoint> final_success;    // L_s
    std::vector<LatentPoint> final_failure;    // L_f
    std::vector<std::string> success_ids;
    std::vector<std::string> failure_ids;
};

EndpointSets endpoint_sets(const TrajectoryDataset& dataset);

enum class LabelStatus { ok, no_success_region };

std::string to_string(LabelStatus s);

struct AttractorVotes {
    std::size_t node = 0;
    std::size_t success = 0;
    std::size_t failure = 0;
};

struct LabelingResult {
    MorseGraph graph;  // copy with attractor labels filled in
    std::vector<AttractorVotes> votes;  // one per attractor, by node id
    LabelStatus status = LabelStatus::ok;
    std::size_t excluded_success = 0;  // L_s points in ambiguous/unreachable/outside cells
    std::size_t excluded_failure = 0;
};

/// Majority vote of L_s against L_f per attractor. Ties and attractors with no
/// votes are failure. Points whose cell is not assigned to a single attractor
/// do not vote.
LabelingResult label_attractors(const MorseGraph& mg, const RoaAssignment& roa,
                                const EndpointSets& endpoints, const LatentGrid& g);

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    /// Zero when nothing was predicted positive.
    double precision() const;
    /// Zero when there are no true positives to find.
    double recall() const;
    /// Harmonic mean; zero when precision + recall is zero.
    double f_score() const;
};

enum class PredictionBasis { attractor, ambiguous, unreachable, outside_domain };

std::string to_string(PredictionBasis b);

struct Prediction {
    std::string id;
    int label = 0;
    bool predicted_success = false;
    PredictionBasis basis = PredictionBasis::unreachable;
    std::optional<std::size_t> attractor;
};

struct ClassificationReport {
    std::vector<Prediction> predictions;  // B_s first, then B_f
    ConfusionCounts counts;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    std::size_t ambiguous = 0;
    std::size_t unreachable = 0;
    std::size_t outside_domain = 0;  // initial cell not in C
    std::size_t clamped = 0;         // initial point had to be clamped into the cube
};

/// Success is the positive class. Anything not exclusively attracted to a
/// success-labeled attractor is predicted failure.
ClassificationReport classify_initial_states(const EndpointSets& endpoints,
                                             const RoaAssignment& roa,
                                             const MorseGraph& labeled, const LatentGrid& g);

}  // namespace lmorse
