#include "lmorse/config.hpp"

#include "lmorse/digest.hpp"
#include "lmorse/error.hpp"
#include "lmorse/formats.hpp"

#include <json.hpp>

#include <set>

namespace lmorse {

using Json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKnownKeys = {
    "task",         "subdivisions",         "rollout_steps", "delta",
    "safety_factor", "lipschitz_samples",   "lipschitz_pair_scale", "seed",
    "extra_samples_per_cell", "system",     "weights",       "train",
    "validation",   "output_dir"};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) path = base / path;
    return path.lexically_normal();
}

Json to_json(const AnalysisConfig& c, bool with_paths) {
    Json j;
    j["task"] = c.task;
    j["subdivisions"] = c.subdivisions;
    j["rollout_steps"] = c.rollout_steps;
    j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
    j["safety_factor"] = c.safety_factor;
    j["lipschitz_samples"] = c.lipschitz_samples;
    j["lipschitz_pair_scale"] = c.lipschitz_pair_scale;
    j["seed"] = c.seed;
    j["extra_samples_per_cell"] = c.extra_samples_per_cell;
    if (c.system) j["system"] = *c.system;
    j["source"] = c.system ? "system" : "weights";
    if (with_paths) {
        if (c.weights) j["weights"] = c.weights->generic_string();
        j["train"] = c.train.generic_string();
        if (c.validation) j["validation"] = c.validation->generic_string();
        j["output_dir"] = c.output_dir.generic_string();
    }
    return j;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (subdivisions.empty()) throw Error("config: 'subdivisions' must list one count per axis");
    for (std::size_t a = 0; a < subdivisions.size(); ++a) {
        if (subdivisions[a] < 2) {
            throw Error("config: subdivisions[" + std::to_string(a) + "] must be >= 2, got " +
                        std::to_string(subdivisions[a]));
        }
    }
    if (rollout_steps < 1) throw Error("config: 'rollout_steps' must be >= 1");
    if (delta && !(*delta >= 0.0)) throw Error("config: 'delta' must be >= 0");
    if (!(safety_factor >= 1.0)) throw Error("config: 'safety_factor' must be >= 1");
    if (lipschitz_samples < 2) throw Error("config: 'lipschitz_samples' must be >= 2");
    if (!(lipschitz_pair_scale > 0.0)) throw Error("config: 'lipschitz_pair_scale' must be > 0");
    if (system.has_value() == weights.has_value()) {
        throw Error("config: give exactly one of 'system' (built-in map) or 'weights' (network file)");
    }
    if (train.empty()) throw Error("config: 'train' dataset path is required");
}

AnalysisConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError("config: malformed JSON at byte offset " + std::to_string(e.byte));
    }
    if (!j.is_object()) throw FormatError("config: top level must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!kKnownKeys.count(key)) throw FormatError("config: unknown key '" + key + "'");
    }
    AnalysisConfig c;
    try {
        if (j.contains("task")) c.task = j["task"].get<std::string>();
        if (!j.contains("subdivisions")) throw FormatError("config: missing 'subdivisions'");
        c.subdivisions = j["subdivisions"].get<std::vector<std::int64_t>>();
        if (j.contains("rollout_steps")) c.rollout_steps = j["rollout_steps"].get<int>();
        if (j.contains("delta") && !j["delta"].is_null()) c.delta = j["delta"].get<double>();
        if (j.contains("safety_factor")) c.safety_factor = j["safety_factor"].get<double>();
        if (j.contains("lipschitz_samples")) c.lipschitz_samples = j["lipschitz_samples"].get<std::size_t>();
        if (j.contains("lipschitz_pair_scale")) {
            c.lipschitz_pair_scale = j["lipschitz_pair_scale"].get<double>();
        }
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("extra_samples_per_cell")) {
            c.extra_samples_per_cell = j["extra_samples_per_cell"].get<std::size_t>();
        }
        if (j.contains("system")) c.system = j["system"].get<std::string>();
        if (j.contains("weights")) c.weights = resolve(base_dir, j["weights"].get<std::string>());
        if (j.contains("train")) c.train = resolve(base_dir, j["train"].get<std::string>());
        if (j.contains("validation")) c.validation = resolve(base_dir, j["validation"].get<std::string>());
        if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
        else c.output_dir = resolve(base_dir, c.output_dir.string());
    } catch (const Json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
    if (c.task.empty()) c.task = c.system.value_or("network");
    c.validate();
    return c;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path), path.parent_path());
}

std::string serialize_config(const AnalysisConfig& c) {
    auto j = to_json(c, true);
    j.erase("source");
    return j.dump(2) + "\n";
}

std::string config_digest(const AnalysisConfig& c) { return sha256_hex(to_json(c, false).dump()); }

}  // namespace lmorse
