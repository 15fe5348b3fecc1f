#include "lmorse/exports.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <sstream>

namespace lmorse {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string export_morse_dot(const MorseGraph& mg, std::string_view config_digest) {
    std::ostringstream out;
    if (!config_digest.empty()) out << "// config_digest: " << config_digest << "\n";
    out << "digraph morse_graph {\n";
    out << "  node [shape=box];\n";
    for (const auto& n : mg.nodes) {
        out << "  m" << n.id << " [label=\"M" << n.id << "\\ncells=" << n.cells.size();
        if (n.is_attractor) out << "\\nattractor\\n" << to_string(n.label);
        out << "\", cells=" << n.cells.size() << ", is_attractor=" << (n.is_attractor ? "true" : "false")
            << ", outcome=\"" << to_string(n.label) << "\"";
        if (n.is_attractor) {
            out << ", peripheries=2";
            if (n.label == AttractorLabel::success) out << ", style=filled, fillcolor=\"#9fd5a5\"";
            if (n.label == AttractorLabel::failure) out << ", style=filled, fillcolor=\"#e8a0a0\"";
        }
        out << "];\n";
    }
    for (std::size_t from = 0; from < mg.edges.size(); ++from) {
        for (std::size_t to : mg.edges[from]) out << "  m" << from << " -> m" << to << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_roa(const RoaAssignment& roa, const LatentGrid& g) {
    std::ostringstream out;
    out << "cell_id";
    for (std::size_t a = 0; a < g.dim(); ++a) out << ",idx_" << a;
    for (std::size_t a = 0; a < g.dim(); ++a) out << ",center_" << a;
    out << ",assignment\n";
    for (std::size_t i = 0; i < roa.cells.size(); ++i) {
        const auto idx = g.index_of(roa.cells[i]);
        const auto center = cell_center(idx, g);
        out << roa.cells[i];
        for (auto k : idx.idx) out << ',' << k;
        for (double c : center) out << ',' << format_double(c);
        const auto& e = roa.entries[i];
        switch (e.kind) {
            case RoaKind::attractor: out << ",attractor:" << e.attractor; break;
            case RoaKind::ambiguous: out << ",ambiguous"; break;
            case RoaKind::unreachable: out << ",unreachable"; break;
        }
        out << '\n';
    }
    return out.str();
}

std::string serialize_report(const ClassificationReport& report, const LabelingResult& labels,
                             const ReportContext& ctx) {
    using Json = nlohmann::ordered_json;
    Json j;
    j["format"] = "lmorse.report/1";
    j["task"] = ctx.task;
    j["latent_dim"] = ctx.latent_dim;
    j["config_digest"] = ctx.config_digest;
    j["graph_digest"] = ctx.graph_digest;
    j["validation_digest"] = ctx.validation_digest;
    j["morse_nodes"] = ctx.morse_nodes;
    j["label_status"] = to_string(labels.status);
    Json attractors = Json::array();
    for (const auto& v : labels.votes) {
        Json a;
        a["node"] = v.node;
        a["label"] = to_string(labels.graph.nodes[v.node].label);
        a["success_votes"] = v.success;
        a["failure_votes"] = v.failure;
        attractors.push_back(std::move(a));
    }
    j["attractors"] = std::move(attractors);
    j["excluded_success_votes"] = labels.excluded_success;
    j["excluded_failure_votes"] = labels.excluded_failure;
    j["counts"] = {{"tp", report.counts.tp}, {"fp", report.counts.fp},
                   {"tn", report.counts.tn}, {"fn", report.counts.fn}};
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["f_score"] = report.f_score;
    j["ambiguous"] = report.ambiguous;
    j["unreachable"] = report.unreachable;
    j["outside_domain"] = report.outside_domain;
    j["clamped"] = report.clamped;
    Json preds = Json::array();
    for (const auto& p : report.predictions) {
        Json jp;
        jp["id"] = p.id;
        jp["label"] = p.label;
        jp["predicted"] = p.predicted_success ? 1 : 0;
        jp["basis"] = to_string(p.basis);
        jp["attractor"] = p.attractor ? Json(*p.attractor) : Json(nullptr);
        preds.push_back(std::move(jp));
    }
    j["predictions"] = std::move(preds);
    return j.dump(2) + "\n";
}

std::string summary_table(const ClassificationReport& report, const ReportContext& ctx) {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-16s %-10s %-10s %-10s %-10s\n", "Task", "Latent Dim",
                  "Precision", "Recall", "F-score");
    out += line;
    std::snprintf(line, sizeof line, "%-16s %-10zu %-10.4f %-10.4f %-10.4f\n", ctx.task.c_str(),
                  ctx.latent_dim, report.precision, report.recall, report.f_score);
    out += line;
    return out;
}

}  // namespace lmorse
