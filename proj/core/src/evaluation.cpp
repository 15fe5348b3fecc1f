#include "lmorse/evaluation.hpp"

#include "lmorse/error.hpp"

#include <algorithm>
#include <cmath>

namespace lmorse {

namespace {

// Clamps p into the cube; returns whether anything moved.
bool clamp_in_place(LatentPoint& p) {
    bool moved = false;
    for (std::size_t a = 0; a < p.dim(); ++a) {
        if (!std::isfinite(p[a])) throw Error("non-finite latent coordinate");
        const double c = std::clamp(p[a], -1.0, 1.0);
        moved = moved || c != p[a];
        p[a] = c;
    }
    return moved;
}

const RoaEntry* lookup(LatentPoint p, const RoaAssignment& roa, const LatentGrid& g,
                       bool* clamped = nullptr) {
    const bool moved = clamp_in_place(p);
    if (clamped) *clamped = moved;
    return roa.find(point_to_cell_id(p.coords(), g));
}

}  // namespace

EndpointSets endpoint_sets(const TrajectoryDataset& dataset) {
    if (dataset.trajectories.empty()) throw Error("cannot build endpoint sets from an empty split");
    EndpointSets e;
    for (const auto& t : dataset.trajectories) {
        if (t.points.empty()) throw Error("trajectory '" + t.id + "' has no points");
        if (t.label == 1) {
            e.initial_success.push_back(t.points.front());
            e.final_success.push_back(t.points.back());
            e.success_ids.push_back(t.id);
        } else {
            e.initial_failure.push_back(t.points.front());
            e.final_failure.push_back(t.points.back());
            e.failure_ids.push_back(t.id);
        }
    }
    return e;
}

std::string to_string(LabelStatus s) {
    return s == LabelStatus::ok ? "ok" : "no_success_region";
}

LabelingResult label_attractors(const MorseGraph& mg, const RoaAssignment& roa,
                                const EndpointSets& endpoints, const LatentGrid& g) {
    const auto attractors = mg.attractors();
    if (attractors.empty()) throw Error("Morse graph has no attractors to label");

    LabelingResult out;
    out.graph = mg;
    std::vector<std::size_t> slot(mg.nodes.size(), attractors.size());
    for (std::size_t i = 0; i < attractors.size(); ++i) {
        slot[attractors[i]] = i;
        out.votes.push_back({attractors[i], 0, 0});
    }

    auto vote = [&](const LatentPoint& p, bool success) {
        const RoaEntry* e = lookup(p, roa, g);
        if (e == nullptr || e->kind != RoaKind::attractor) {
            ++(success ? out.excluded_success : out.excluded_failure);
            return;
        }
        auto& v = out.votes[slot[e->attractor]];
        ++(success ? v.success : v.failure);
    };
    for (const auto& p : endpoints.final_success) vote(p, true);
    for (const auto& p : endpoints.final_failure) vote(p, false);

    bool any_success = false;
    for (const auto& v : out.votes) {
        const bool success = v.success > v.failure;
        out.graph.nodes[v.node].label = success ? AttractorLabel::success : AttractorLabel::failure;
        any_success = any_success || success;
    }
    out.status = any_success ? LabelStatus::ok : LabelStatus::no_success_region;
    return out;
}

double ConfusionCounts::precision() const {
    const std::size_t denom = tp + fp;
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionCounts::recall() const {
    const std::size_t denom = tp + fn;
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionCounts::f_score() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::string to_string(PredictionBasis b) {
    switch (b) {
        case PredictionBasis::attractor: return "attractor";
        case PredictionBasis::ambiguous: return "ambiguous";
        case PredictionBasis::unreachable: return "unreachable";
        case PredictionBasis::outside_domain: return "outside_domain";
    }
    return "?";
}

ClassificationReport classify_initial_states(const EndpointSets& endpoints,
                                             const RoaAssignment& roa,
                                             const MorseGraph& labeled, const LatentGrid& g) {
    ClassificationReport rep;
    auto predict = [&](const LatentPoint& p, const std::string& id, int label) {
        bool clamped = false;
        const RoaEntry* e = lookup(p, roa, g, &clamped);
        Prediction pr;
        pr.id = id;
        pr.label = label;
        if (clamped) ++rep.clamped;
        if (e == nullptr) {
            pr.basis = PredictionBasis::outside_domain;
            ++rep.outside_domain;
        } else if (e->kind == RoaKind::ambiguous) {
            pr.basis = PredictionBasis::ambiguous;
            ++rep.ambiguous;
        } else if (e->kind == RoaKind::unreachable) {
            pr.basis = PredictionBasis::unreachable;
            ++rep.unreachable;
        } else {
            pr.basis = PredictionBasis::attractor;
            pr.attractor = e->attractor;
            pr.predicted_success = labeled.nodes.at(e->attractor).label == AttractorLabel::success;
        }
        if (label == 1) {
            ++(pr.predicted_success ? rep.counts.tp : rep.counts.fn);
        } else {
            ++(pr.predicted_success ? rep.counts.fp : rep.counts.tn);
        }
        rep.predictions.push_back(std::move(pr));
    };
    for (std::size_t i = 0; i < endpoints.initial_success.size(); ++i) {
        predict(endpoints.initial_success[i], endpoints.success_ids.at(i), 1);
    }
    for (std::size_t i = 0; i < endpoints.initial_failure.size(); ++i) {
        predict(endpoints.initial_failure[i], endpoints.failure_ids.at(i), 0);
    }
    rep.precision = rep.counts.precision();
    rep.recall = rep.counts.recall();
    rep.f_score = rep.counts.f_score();
    return rep;
}

}  // namespace lmorse
