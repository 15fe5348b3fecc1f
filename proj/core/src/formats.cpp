#include "lmorse/formats.hpp"

#include "lmorse/digest.hpp"
#include "lmorse/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <variant>

namespace lmorse {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kGraphFormat = "lmorse.transition_graph/1";
constexpr const char* kMorseFormat = "lmorse.morse_graph/1";
constexpr const char* kRoaFormat = "lmorse.roa/1";

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(what + ": malformed JSON at byte offset " + std::to_string(e.byte) +
                          ": " + e.what());
    }
}

// Runs a decoder and turns nlohmann type/lookup errors into FormatError.
template <class Fn>
auto decode(const std::string& what, Fn&& fn) {
    try {
        return fn();
    } catch (const Json::exception& e) {
        throw FormatError(what + ": " + e.what());
    }
}

const Json& require(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(what + ": missing field '" + key + "'");
    }
    return j.at(key);
}

void require_format(const Json& j, const char* expected, const std::string& what) {
    const auto got = require(j, "format", what).get<std::string>();
    if (got != expected) {
        throw FormatError(what + ": format is '" + got + "', expected '" + expected + "'");
    }
}

Json layer_to_json(const DenseLayer& l) {
    Json j;
    j["rows"] = l.rows;
    j["cols"] = l.cols;
    j["weights"] = l.weights;
    j["bias"] = l.bias;
    j["activation"] = to_string(l.activation);
    return j;
}

Json dataset_to_json(const TrajectoryDataset& d) {
    Json j;
    j["dim"] = d.dim;
    j["split"] = to_string(d.split);
    Json trajs = Json::array();
    for (const auto& t : d.trajectories) {
        Json jt;
        jt["id"] = t.id;
        jt["label"] = t.label;
        Json pts = Json::array();
        for (const auto& p : t.points) pts.push_back(std::vector<double>(p.begin(), p.end()));
        jt["points"] = std::move(pts);
        trajs.push_back(std::move(jt));
    }
    j["trajectories"] = std::move(trajs);
    return j;
}

Json net_to_json(const DynamicsNet& net) {
    Json j;
    j["input_dim"] = net.input_dim();
    Json layers = Json::array();
    for (const auto& l : net.layers()) layers.push_back(layer_to_json(l));
    j["layers"] = std::move(layers);
    return j;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out) throw Error("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

TrajectoryDataset parse_trajectories(const std::string& text) {
    const std::string what = "trajectory dataset";
    const Json j = parse_json(text, what);
    TrajectoryDataset d = decode(what, [&] {
        TrajectoryDataset out;
        out.dim = require(j, "dim", what).get<std::size_t>();
        out.split = split_from_string(require(j, "split", what).get<std::string>());
        const auto& trajs = require(j, "trajectories", what);
        if (!trajs.is_array()) throw FormatError(what + ": 'trajectories' must be an array");
        for (std::size_t i = 0; i < trajs.size(); ++i) {
            const auto& jt = trajs[i];
            const std::string where = what + ", trajectory index " + std::to_string(i);
            Trajectory t;
            t.id = require(jt, "id", where).get<std::string>();
            const auto& label = require(jt, "label", where);
            if (!label.is_number_integer()) {
                throw FormatError(where + " ('" + t.id + "'): label must be the integer 0 or 1");
            }
            t.label = label.get<int>();
            for (const auto& jp : require(jt, "points", where)) {
                t.points.emplace_back(jp.get<std::vector<double>>());
            }
            out.trajectories.push_back(std::move(t));
        }
        return out;
    });
    d.validate();
    return d;
}

std::string serialize_trajectories(const TrajectoryDataset& d) {
    return dataset_to_json(d).dump() + "\n";
}

TrajectoryDataset load_trajectories(const std::filesystem::path& path) {
    try {
        return parse_trajectories(read_text_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void save_trajectories(const TrajectoryDataset& d, const std::filesystem::path& path) {
    write_text_file(path, serialize_trajectories(d));
}

std::string dataset_digest(const TrajectoryDataset& d) {
    return sha256_hex(dataset_to_json(d).dump());
}

DynamicsNet parse_dynamics_net(const std::string& text) {
    const std::string what = "network weights";
    const Json j = parse_json(text, what);
    return decode(what, [&] {
        const auto input_dim = require(j, "input_dim", what).get<std::size_t>();
        std::vector<DenseLayer> layers;
        const auto& jl = require(j, "layers", what);
        for (std::size_t i = 0; i < jl.size(); ++i) {
            const std::string where = what + ", layer " + std::to_string(i);
            DenseLayer l;
            l.rows = require(jl[i], "rows", where).get<std::size_t>();
            l.cols = require(jl[i], "cols", where).get<std::size_t>();
            l.weights = require(jl[i], "weights", where).get<std::vector<double>>();
            l.bias = require(jl[i], "bias", where).get<std::vector<double>>();
            l.activation = activation_from_string(require(jl[i], "activation", where).get<std::string>());
            layers.push_back(std::move(l));
        }
        return DynamicsNet(input_dim, std::move(layers));
    });
}

std::string serialize_dynamics_net(const DynamicsNet& net) { return net_to_json(net).dump() + "\n"; }

DynamicsNet load_dynamics_net(const std::filesystem::path& path) {
    try {
        return parse_dynamics_net(read_text_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void save_dynamics_net(const DynamicsNet& net, const std::filesystem::path& path) {
    write_text_file(path, serialize_dynamics_net(net));
}

std::string dynamics_digest(const DynamicsMap& m) {
    Json j;
    std::visit(
        [&](const auto& map) {
            using T = std::decay_t<decltype(map)>;
            if constexpr (std::is_same_v<T, DynamicsNet>) {
                j["network"] = net_to_json(map);
            } else if constexpr (std::is_same_v<T, ContractionMap>) {
                j["system"] = "contraction";
                j["dim"] = map.dim;
                j["rate"] = map.rate;
            } else if constexpr (std::is_same_v<T, Bistable1dMap>) {
                j["system"] = "bistable_1d";
                j["gain"] = map.gain;
            } else {
                j["system"] = "bistable_2d";
                j["expansion"] = map.expansion;
                j["knee"] = map.knee;
                j["attractor"] = map.attractor;
                j["y_rate"] = map.y_rate;
            }
        },
        m.variant());
    return sha256_hex(j.dump());
}

std::string serialize_graph(const GraphArtifact& a) {
    const auto& f = a.graph;
    Json j;
    j["format"] = kGraphFormat;
    j["config_digest"] = a.config_digest;
    j["input_digest"] = a.input_digest;
    j["subdivisions"] = f.grid.subdivisions();
    Json b;
    b["rollout_steps"] = f.info.rollout_steps;
    b["delta"] = f.info.delta;
    b["lipschitz"] = f.info.lipschitz;
    b["extra_samples_per_cell"] = f.info.extra_samples_per_cell;
    b["dataset_digest"] = f.info.dataset_digest;
    b["dynamics_digest"] = f.info.dynamics_digest;
    b["escaped_targets"] = f.info.escaped_targets;
    b["total_targets"] = f.info.total_targets;
    j["build"] = std::move(b);
    j["cells"] = f.nodes.cells;
    std::vector<CellId> data;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        if (f.nodes.origin[i] == CellOrigin::data) data.push_back(f.nodes.cells[i]);
    }
    j["data_cells"] = std::move(data);
    Json succ = Json::array();
    for (NodeId v = 0; v < f.edges.node_count(); ++v) {
        std::vector<CellId> row;
        for (NodeId w : f.edges.successors(v)) row.push_back(f.cell(w));
        succ.push_back(std::move(row));
    }
    j["successors"] = std::move(succ);
    return j.dump() + "\n";
}

GraphArtifact parse_graph(const std::string& text) {
    const std::string what = "transition graph cache";
    const Json j = parse_json(text, what);
    return decode(what, [&] {
        require_format(j, kGraphFormat, what);
        LatentGrid grid(require(j, "subdivisions", what).get<std::vector<std::int64_t>>());
        ValidCellSet nodes;
        nodes.cells = require(j, "cells", what).get<std::vector<CellId>>();
        const auto data = require(j, "data_cells", what).get<std::vector<CellId>>();
        for (CellId c : nodes.cells) {
            nodes.origin.push_back(std::binary_search(data.begin(), data.end(), c) ? CellOrigin::data
                                                                                   : CellOrigin::neighbor);
        }
        if (!std::is_sorted(nodes.cells.begin(), nodes.cells.end())) {
            throw FormatError(what + ": cells are not sorted");
        }
        const auto& succ = require(j, "successors", what);
        if (succ.size() != nodes.size()) throw FormatError(what + ": successor row count mismatch");
        std::vector<std::vector<NodeId>> rows(nodes.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (const auto& t : succ[i]) {
                const auto pos = nodes.position(t.get<CellId>());
                if (!pos) throw FormatError(what + ": edge target outside the cell set");
                rows[i].push_back(*pos);
            }
        }
        GraphArtifact a{require(j, "config_digest", what).get<std::string>(),
                        require(j, "input_digest", what).get<std::string>(),
                        TransitionGraph{grid, std::move(nodes), Digraph::from_rows(std::move(rows)), {}}};
        const auto& b = require(j, "build", what);
        auto& info = a.graph.info;
        info.rollout_steps = require(b, "rollout_steps", what).get<int>();
        info.delta = require(b, "delta", what).get<double>();
        info.lipschitz = require(b, "lipschitz", what).get<double>();
        info.extra_samples_per_cell = require(b, "extra_samples_per_cell", what).get<std::size_t>();
        info.dataset_digest = require(b, "dataset_digest", what).get<std::string>();
        info.dynamics_digest = require(b, "dynamics_digest", what).get<std::string>();
        info.escaped_targets = require(b, "escaped_targets", what).get<std::uint64_t>();
        info.total_targets = require(b, "total_targets", what).get<std::uint64_t>();
        return a;
    });
}

std::string serialize_morse(const MorseArtifact& a) {
    Json j;
    j["format"] = kMorseFormat;
    j["config_digest"] = a.config_digest;
    j["graph_digest"] = a.graph_digest;
    Json nodes = Json::array();
    for (const auto& n : a.graph.nodes) {
        Json jn;
        jn["id"] = n.id;
        jn["is_attractor"] = n.is_attractor;
        jn["label"] = to_string(n.label);
        jn["cells"] = n.cells;
        nodes.push_back(std::move(jn));
    }
    j["nodes"] = std::move(nodes);
    j["edges"] = a.graph.edges;
    return j.dump() + "\n";
}

MorseArtifact parse_morse(const std::string& text) {
    const std::string what = "Morse graph cache";
    const Json j = parse_json(text, what);
    return decode(what, [&] {
        require_format(j, kMorseFormat, what);
        MorseArtifact a;
        a.config_digest = require(j, "config_digest", what).get<std::string>();
        a.graph_digest = require(j, "graph_digest", what).get<std::string>();
        for (const auto& jn : require(j, "nodes", what)) {
            MorseNode n;
            n.id = jn.at("id").get<std::size_t>();
            n.is_attractor = jn.at("is_attractor").get<bool>();
            const auto label = jn.at("label").get<std::string>();
            n.label = label == "success"   ? AttractorLabel::success
                      : label == "failure" ? AttractorLabel::failure
                                           : AttractorLabel::unlabeled;
            n.cells = jn.at("cells").get<std::vector<CellId>>();
            if (n.id != a.graph.nodes.size()) throw FormatError(what + ": node ids must be 0..n-1 in order");
            a.graph.nodes.push_back(std::move(n));
        }
        a.graph.edges = require(j, "edges", what).get<std::vector<std::vector<std::size_t>>>();
        if (a.graph.edges.size() != a.graph.nodes.size()) throw FormatError(what + ": edge row count mismatch");
        a.graph.topological_order.resize(a.graph.nodes.size());
        for (std::size_t i = 0; i < a.graph.nodes.size(); ++i) a.graph.topological_order[i] = i;
        return a;
    });
}

std::string serialize_roa(const RoaArtifact& a) {
    Json j;
    j["format"] = kRoaFormat;
    j["config_digest"] = a.config_digest;
    j["morse_digest"] = a.morse_digest;
    j["cells"] = a.roa.cells;
    // attractor id, or -1 ambiguous, -2 unreachable
    std::vector<std::int64_t> code;
    code.reserve(a.roa.entries.size());
    for (const auto& e : a.roa.entries) {
        code.push_back(e.kind == RoaKind::attractor   ? static_cast<std::int64_t>(e.attractor)
                       : e.kind == RoaKind::ambiguous ? -1
                                                      : -2);
    }
    j["assignment"] = std::move(code);
    return j.dump() + "\n";
}

RoaArtifact parse_roa(const std::string& text) {
    const std::string what = "ROA cache";
    const Json j = parse_json(text, what);
    return decode(what, [&] {
        require_format(j, kRoaFormat, what);
        RoaArtifact a;
        a.config_digest = require(j, "config_digest", what).get<std::string>();
        a.morse_digest = require(j, "morse_digest", what).get<std::string>();
        a.roa.cells = require(j, "cells", what).get<std::vector<CellId>>();
        const auto code = require(j, "assignment", what).get<std::vector<std::int64_t>>();
        if (code.size() != a.roa.cells.size()) throw FormatError(what + ": assignment length mismatch");
        for (auto c : code) {
            if (c >= 0) {
                a.roa.entries.push_back({RoaKind::attractor, static_cast<std::size_t>(c)});
            } else {
                a.roa.entries.push_back({c == -1 ? RoaKind::ambiguous : RoaKind::unreachable, 0});
            }
        }
        return a;
    });
}

}  // namespace lmorse
