#include "lmorse/synth.hpp"

#include "lmorse/error.hpp"
#include "lmorse/parallel.hpp"

#include <cstdio>

namespace lmorse {

namespace {

double distance2(const LatentPoint& a, const LatentPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

}  // namespace

int proximity_label(const DynamicsMap& m, const LatentPoint& p) {
    const auto attractors = analytic_attractors(m);
    if (!attractors) throw Error("proximity labels need a built-in analytic map");
    const double to_success = distance2(p, attractors->points[attractors->success]);
    for (std::size_t i = 0; i < attractors->points.size(); ++i) {
        if (i == attractors->success) continue;
        if (distance2(p, attractors->points[i]) <= to_success) return 0;
    }
    return 1;
}

TrajectoryDataset synthesize(const DynamicsMap& m, const SynthOptions& opts) {
    if (opts.trajectories == 0) throw Error("synth: need at least one trajectory");
    if (opts.steps == 0) throw Error("synth: need at least one step");
    if (!analytic_attractors(m)) throw Error("synth: only built-in analytic maps can be simulated");

    TrajectoryDataset d;
    d.dim = m.dim();
    d.split = opts.split;
    d.trajectories.reserve(opts.trajectories);
    SeededRng rng(opts.seed, 0);
    std::vector<double> scratch;
    for (std::size_t t = 0; t < opts.trajectories; ++t) {
        Trajectory tr;
        char id[32];
        std::snprintf(id, sizeof id, "traj-%06zu", t);
        tr.id = id;
        std::vector<double> z(d.dim);
        for (auto& v : z) v = rng.uniform(-1.0, 1.0);
        tr.points.reserve(opts.steps + 1);
        tr.points.emplace_back(z);
        for (std::size_t s = 0; s < opts.steps; ++s) {
            m.step(z, scratch);
            tr.points.emplace_back(z);
        }
        tr.label = proximity_label(m, tr.points.back());
        d.trajectories.push_back(std::move(tr));
    }
    return d;
}

}  // namespace lmorse
