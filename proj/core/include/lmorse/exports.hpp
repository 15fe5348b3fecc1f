#pragma once

#include "lmorse/evaluation.hpp"
#include "lmorse/morse.hpp"

#include <string>
#include <string_view>

namespace lmorse {

/// Graphviz digraph of the Morse graph, nodes in id order. A non-empty
/// config digest is recorded in a leading comment.
std::string export_morse_dot(const MorseGraph& mg, std::string_view config_digest = {});

/// CSV: cell_id,idx_0..idx_{d-1},center_0..center_{d-1},assignment with one row
/// per valid cell in flat-id order. assignment is attractor:<id>, ambiguous or
/// unreachable.
std::string export_roa(const RoaAssignment& roa, const LatentGrid& g);

struct ReportContext {
    std::string task;
    std::size_t latent_dim = 0;
    std::string config_digest;
    std::string graph_digest;
    std::string validation_digest;
    std::size_t morse_nodes = 0;
};

std::string serialize_report(const ClassificationReport& report, const LabelingResult& labels,
                             const ReportContext& ctx);

/// Task / Latent Dim / Precision / Recall / F-score table.
std::string summary_table(const ClassificationReport& report, const ReportContext& ctx);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace lmorse
