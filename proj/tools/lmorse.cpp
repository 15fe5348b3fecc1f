// lmorse: Morse graph analysis of learned latent dynamics.

#include "lmorse/config.hpp"
#include "lmorse/error.hpp"
#include "lmorse/exports.hpp"
#include "lmorse/formats.hpp"
#include "lmorse/parallel.hpp"
#include "lmorse/pipeline.hpp"
#include "lmorse/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit : int { ok = 0, failure = 1, stale = 3 };

struct SynthArgs {
    std::string system;
    std::size_t trajectories = 100;
    std::size_t steps = 50;
    std::uint64_t seed = 0;
    std::string split = "train";
    std::size_t dim = 0;
    std::string out;
};

void print_stats(const lmorse::TransitionGraph& f) {
    const auto s = lmorse::graph_stats(f);
    std::cout << "cells           " << s.nodes << "\n"
              << "data cells      " << f.nodes.data_cell_count() << "\n"
              << "edges           " << s.edges << "\n"
              << "exit cells      " << s.exit_cells << "\n"
              << "max out-degree  " << s.max_out_degree << "\n"
              << "escaped targets " << lmorse::format_double(s.escaped_fraction) << "\n"
              << "rollout steps   " << f.info.rollout_steps << "\n"
              << "lipschitz       " << lmorse::format_double(f.info.lipschitz) << "\n"
              << "delta           " << lmorse::format_double(f.info.delta) << "\n";
}

int run_synth(const SynthArgs& a) {
    const auto map = lmorse::DynamicsMap::analytic(lmorse::analytic_kind_from_string(a.system), a.dim);
    lmorse::SynthOptions opts;
    opts.trajectories = a.trajectories;
    opts.steps = a.steps;
    opts.seed = a.seed;
    opts.split = lmorse::split_from_string(a.split);
    const auto data = lmorse::synthesize(map, opts);
    if (a.out.empty() || a.out == "-") {
        std::cout << lmorse::serialize_trajectories(data);
    } else {
        lmorse::save_trajectories(data, a.out);
        std::cerr << "wrote " << data.trajectories.size() << " trajectories to " << a.out << "\n";
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morse graph analysis of latent dynamics"};
    app.require_subcommand(1);

    std::optional<unsigned> workers_flag;
    app.add_option("--workers", workers_flag, "Worker threads for graph construction (env LMORSE_WORKERS)")
        ->check(CLI::PositiveNumber);

    std::string config_path;
    auto add_staged = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Analysis config (JSON)")->required()->check(CLI::ExistingFile);
        return sub;
    };
    auto* analyze = add_staged("analyze", "Run every stage and write all artifacts");
    auto* build = add_staged("build-graph", "Estimate delta and build the transition graph");
    auto* morse = add_staged("morse", "Condense the cached transition graph into a Morse graph");
    auto* roa = add_staged("roa", "Compute regions of attraction from the cached Morse graph");
    auto* evaluate = add_staged("evaluate", "Label attractors and classify validation initial states");

    auto* stats = app.add_subcommand("stats", "Print transition graph statistics");
    std::string graph_path;
    auto* stats_config = stats->add_option("--config", config_path, "Analysis config (JSON)")
                             ->check(CLI::ExistingFile);
    auto* stats_graph = stats->add_option("--graph", graph_path, "graph.json to inspect without digest checks")
                            ->check(CLI::ExistingFile);
    stats_config->excludes(stats_graph);
    stats->require_option(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a labeled trajectory dataset from an analytic map");
    synth->add_option("--system", synth_args.system, "contraction | bistable_1d | bistable_2d")
        ->required()
        ->check(CLI::IsMember({"contraction", "bistable_1d", "bistable_2d"}));
    synth->add_option("--trajectories", synth_args.trajectories, "Number of trajectories")->required();
    synth->add_option("--steps", synth_args.steps, "Steps per trajectory")->required();
    synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
    synth->add_option("--split", synth_args.split, "train | validation")
        ->check(CLI::IsMember({"train", "validation"}));
    synth->add_option("--dim", synth_args.dim, "Latent dim (contraction only; default 2)");
    synth->add_option("--out", synth_args.out, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(synth_args);
        if (stats->parsed() && !graph_path.empty()) {
            print_stats(lmorse::parse_graph(lmorse::read_text_file(graph_path)).graph);
            return ok;
        }

        const auto config = lmorse::load_config(config_path);
        const unsigned workers = lmorse::resolve_workers(workers_flag);
        lmorse::Timings timings;
        if (analyze->parsed()) {
            std::cout << lmorse::run_analysis(config, workers, std::cerr);
        } else if (build->parsed()) {
            lmorse::stage_build_graph(config, workers, std::cerr, timings);
        } else if (morse->parsed()) {
            lmorse::stage_morse(config, std::cerr, timings);
        } else if (roa->parsed()) {
            lmorse::stage_roa(config, std::cerr, timings);
        } else if (evaluate->parsed()) {
            std::cout << lmorse::stage_evaluate(config, std::cerr, timings);
        } else if (stats->parsed()) {
            print_stats(lmorse::load_checked_graph(config));
        }
        return ok;
    } catch (const lmorse::StaleArtifactError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return stale;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
}
