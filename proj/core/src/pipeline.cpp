#include "lmorse/pipeline.hpp"

#include "lmorse/digest.hpp"
#include "lmorse/error.hpp"
#include "lmorse/exports.hpp"
#include "lmorse/formats.hpp"
#include "lmorse/morse.hpp"

#include <json.hpp>

#include <chrono>
#include <ostream>

namespace lmorse {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct CheckedGraph {
    std::string text;
    GraphArtifact artifact;
};

CheckedGraph read_checked_graph(const AnalysisConfig& c) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    if (!std::filesystem::exists(paths.graph)) {
        throw Error("no transition graph cache at '" + paths.graph.string() + "'; run build-graph first");
    }
    auto text = read_text_file(paths.graph);
    auto artifact = parse_graph(text);
    CheckedGraph g{std::move(text), std::move(artifact)};
    const auto train = load_trajectories(c.train);
    const auto dyn = load_dynamics(c);
    const auto expected = graph_input_digest(c, dataset_digest(train), dynamics_digest(dyn));
    if (g.artifact.input_digest != expected) {
        throw StaleArtifactError("transition graph cache '" + paths.graph.string() +
                                 "' is stale: input digest " + g.artifact.input_digest +
                                 " does not match the current config and inputs (" + expected +
                                 "); rerun build-graph");
    }
    return g;
}

struct CheckedMorse {
    std::string text;
    MorseArtifact artifact;
};

CheckedMorse read_checked_morse(const AnalysisConfig& c, const std::string& graph_text) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    if (!std::filesystem::exists(paths.morse)) {
        throw Error("no Morse graph cache at '" + paths.morse.string() + "'; run morse first");
    }
    auto text = read_text_file(paths.morse);
    auto artifact = parse_morse(text);
    CheckedMorse m{std::move(text), std::move(artifact)};
    const auto expected = sha256_hex(graph_text);
    if (m.artifact.graph_digest != expected) {
        throw StaleArtifactError("Morse graph cache '" + paths.morse.string() +
                                 "' was built from a different transition graph (digest " +
                                 m.artifact.graph_digest + ", current " + expected + "); rerun morse");
    }
    return m;
}

RoaArtifact read_checked_roa(const AnalysisConfig& c, const std::string& morse_text) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    if (!std::filesystem::exists(paths.roa)) {
        throw Error("no ROA cache at '" + paths.roa.string() + "'; run roa first");
    }
    auto roa = parse_roa(read_text_file(paths.roa));
    const auto expected = sha256_hex(morse_text);
    if (roa.morse_digest != expected) {
        throw StaleArtifactError("ROA cache '" + paths.roa.string() +
                                 "' was built from a different Morse graph (digest " + roa.morse_digest +
                                 ", current " + expected + "); rerun roa");
    }
    return roa;
}

}  // namespace

ArtifactPaths ArtifactPaths::in(const std::filesystem::path& dir) {
    return {dir / "graph.json", dir / "morse.json", dir / "morse.dot", dir / "roa.csv",
            dir / "roa.json",   dir / "report.json", dir / "run.json"};
}

DynamicsMap load_dynamics(const AnalysisConfig& c) {
    if (c.weights) return DynamicsMap(load_dynamics_net(*c.weights));
    return DynamicsMap::analytic(analytic_kind_from_string(*c.system), c.subdivisions.size());
}

std::string graph_input_digest(const AnalysisConfig& c, const std::string& train_digest,
                               const std::string& dynamics_digest) {
    nlohmann::ordered_json j;
    j["subdivisions"] = c.subdivisions;
    j["rollout_steps"] = c.rollout_steps;
    j["delta"] = c.delta ? nlohmann::ordered_json(*c.delta) : nlohmann::ordered_json(nullptr);
    j["safety_factor"] = c.safety_factor;
    j["lipschitz_samples"] = c.lipschitz_samples;
    j["lipschitz_pair_scale"] = c.lipschitz_pair_scale;
    j["seed"] = c.seed;
    j["extra_samples_per_cell"] = c.extra_samples_per_cell;
    j["train_digest"] = train_digest;
    j["dynamics_digest"] = dynamics_digest;
    return sha256_hex(j.dump());
}

TransitionGraph load_checked_graph(const AnalysisConfig& c) {
    return read_checked_graph(c).artifact.graph;
}

void stage_build_graph(const AnalysisConfig& c, unsigned workers, std::ostream& log, Timings& t) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    const LatentGrid grid(c.subdivisions);
    const auto train = load_trajectories(c.train);
    if (train.dim != grid.dim()) {
        throw Error("train dataset dim " + std::to_string(train.dim) + " does not match the " +
                    std::to_string(grid.dim()) + " subdivision counts in the config");
    }
    const auto dyn = load_dynamics(c);
    if (dyn.dim() != grid.dim()) {
        throw Error("dynamics dim " + std::to_string(dyn.dim()) + " does not match the grid dim " +
                    std::to_string(grid.dim()));
    }
    const auto train_digest = dataset_digest(train);
    const auto dyn_digest = dynamics_digest(dyn);
    const RolloutSpec spec(c.rollout_steps);

    Stopwatch lip_clock;
    LipschitzOptions lip;
    lip.domain_samples = c.lipschitz_samples;
    lip.pair_scale = c.lipschitz_pair_scale;
    lip.seed = c.seed;
    lip.workers = workers;
    const double lipschitz = estimate_lipschitz(dyn, spec, lip);
    const double delta = c.delta.value_or(delta_radius(lipschitz, grid, c.safety_factor));
    t.seconds.emplace_back("lipschitz", lip_clock.seconds());
    log << "lipschitz estimate (r=" << spec.steps << "): " << format_double(lipschitz)
        << ", delta: " << format_double(delta) << (c.delta ? " (override)" : "") << "\n";

    Stopwatch build_clock;
    const auto cells = valid_cells(train, grid);
    TransitionOptions opts;
    opts.extra_samples_per_cell = c.extra_samples_per_cell;
    opts.seed = c.seed;
    opts.workers = workers;
    auto f = build_transition_graph(dyn, cells, grid, spec, delta, opts);
    f.info.lipschitz = lipschitz;
    f.info.dataset_digest = train_digest;
    f.info.dynamics_digest = dyn_digest;
    t.seconds.emplace_back("build_graph", build_clock.seconds());

    const auto stats = graph_stats(f);
    log << "transition graph: " << stats.nodes << " cells (" << cells.data_cell_count() << " with data), "
        << stats.edges << " edges, " << stats.exit_cells << " exit cells\n";

    write_text_file(paths.graph, serialize_graph({config_digest(c),
                                                  graph_input_digest(c, train_digest, dyn_digest), f}));
}

void stage_morse(const AnalysisConfig& c, std::ostream& log, Timings& t) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    const auto graph = read_checked_graph(c);
    Stopwatch clock;
    const auto mg = build_morse_graph(graph.artifact.graph);
    t.seconds.emplace_back("morse", clock.seconds());
    log << "Morse graph: " << mg.nodes.size() << " nodes, " << mg.edge_count() << " edges, "
        << mg.attractors().size() << " attractors\n";
    const auto digest = config_digest(c);
    write_text_file(paths.morse, serialize_morse({digest, sha256_hex(graph.text), mg}));
    write_text_file(paths.morse_dot, export_morse_dot(mg, digest));
}

void stage_roa(const AnalysisConfig& c, std::ostream& log, Timings& t) {
    const auto paths = ArtifactPaths::in(c.output_dir);
    const auto graph = read_checked_graph(c);
    const auto morse = read_checked_morse(c, graph.text);
    Stopwatch clock;
    const auto roa = regions_of_attraction(graph.artifact.graph, morse.artifact.graph);
    check_structure(graph.artifact.graph, morse.artifact.graph, roa);
    t.seconds.emplace_back("roa", clock.seconds());
    log << "regions of attraction: " << roa.count(RoaKind::attractor) << " assigned, "
        << roa.count(RoaKind::ambiguous) << " ambiguous, " << roa.count(RoaKind::unreachable)
        << " unreachable\n";
    write_text_file(paths.roa, serialize_roa({config_digest(c), sha256_hex(morse.text), roa}));
    write_text_file(paths.roa_csv, export_roa(roa, graph.artifact.graph.grid));
}

std::string stage_evaluate(const AnalysisConfig& c, std::ostream& log, Timings& t) {
    if (!c.validation) throw Error("config: 'validation' dataset path is required for evaluate");
    const auto paths = ArtifactPaths::in(c.output_dir);
    const auto graph = read_checked_graph(c);
    const auto morse = read_checked_morse(c, graph.text);
    const auto roa = read_checked_roa(c, morse.text);
    const auto validation = load_trajectories(*c.validation);
    const auto& grid = graph.artifact.graph.grid;
    if (validation.dim != grid.dim()) {
        throw Error("validation dataset dim " + std::to_string(validation.dim) +
                    " does not match the grid dim " + std::to_string(grid.dim()));
    }
    if (validation.split != Split::validation) {
        log << "warning: '" << c.validation->string() << "' is tagged split=" << to_string(validation.split)
            << ", expected validation\n";
    }

    Stopwatch clock;
    const auto endpoints = endpoint_sets(validation);
    const auto& mg = morse.artifact.graph;
    if (mg.attractors().empty()) throw Error("Morse graph has no attractors; nothing to label");
    const auto labels = label_attractors(mg, roa.roa, endpoints, grid);
    if (labels.status == LabelStatus::no_success_region) {
        log << "warning: no success region (no attractor received a success majority; "
            << labels.excluded_success << " L_s points could not be assigned)\n";
    }
    const auto report = classify_initial_states(endpoints, roa.roa, labels.graph, grid);
    t.seconds.emplace_back("evaluate", clock.seconds());

    ReportContext ctx;
    ctx.task = c.task;
    ctx.latent_dim = grid.dim();
    ctx.config_digest = config_digest(c);
    ctx.graph_digest = sha256_hex(graph.text);
    ctx.validation_digest = dataset_digest(validation);
    ctx.morse_nodes = mg.nodes.size();
    write_text_file(paths.report, serialize_report(report, labels, ctx));
    write_text_file(paths.morse_dot, export_morse_dot(labels.graph, ctx.config_digest));
    log << "classified " << report.counts.total() << " initial states (" << report.ambiguous
        << " ambiguous, " << report.unreachable << " unreachable, " << report.outside_domain
        << " outside C)\n";
    return summary_table(report, ctx);
}

std::string run_analysis(const AnalysisConfig& c, unsigned workers, std::ostream& log) {
    if (!c.validation) throw Error("config: 'validation' dataset path is required for analyze");
    Timings t;
    Stopwatch total;
    stage_build_graph(c, workers, log, t);
    stage_morse(c, log, t);
    stage_roa(c, log, t);
    auto table = stage_evaluate(c, log, t);
    t.seconds.emplace_back("total", total.seconds());

    nlohmann::ordered_json run;
    run["format"] = "lmorse.run/1";
    run["config_digest"] = config_digest(c);
    run["workers"] = workers;
    nlohmann::ordered_json secs;
    for (const auto& [name, s] : t.seconds) secs[name] = s;
    run["timings_seconds"] = std::move(secs);
    write_text_file(ArtifactPaths::in(c.output_dir).run, run.dump(2) + "\n");
    return table;
}

}  // namespace lmorse
