#include "lmorse/dynamics.hpp"

#include "lmorse/error.hpp"
#include "lmorse/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lmorse {

namespace {

constexpr std::size_t kLipschitzChunk = 1024;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

void require_finite(std::span<const double> z, const char* where) {
    for (double v : z) {
        if (!std::isfinite(v)) throw Error(std::string("non-finite value in ") + where);
    }
}

double bistable_2d_x(const Bistable2dMap& m, double x) {
    const double ax = std::abs(x);
    const double fx = ax <= m.knee ? m.expansion * ax
                                   : m.attractor + m.outer_rate() * (ax - m.attractor);
    return std::copysign(fx, x);
}

}  // namespace

std::string to_string(Activation a) {
    switch (a) {
        case Activation::tanh: return "tanh";
        case Activation::relu: return "relu";
        case Activation::identity: return "identity";
    }
    return "?";
}

Activation activation_from_string(const std::string& name) {
    if (name == "tanh") return Activation::tanh;
    if (name == "relu") return Activation::relu;
    if (name == "identity") return Activation::identity;
    throw FormatError("unknown activation '" + name + "' (expected tanh, relu or identity)");
}

std::string to_string(AnalyticKind k) {
    switch (k) {
        case AnalyticKind::contraction: return "contraction";
        case AnalyticKind::bistable_1d: return "bistable_1d";
        case AnalyticKind::bistable_2d: return "bistable_2d";
    }
    return "?";
}

AnalyticKind analytic_kind_from_string(const std::string& name) {
    if (name == "contraction") return AnalyticKind::contraction;
    if (name == "bistable_1d") return AnalyticKind::bistable_1d;
    if (name == "bistable_2d") return AnalyticKind::bistable_2d;
    throw Error("unknown system '" + name + "' (expected contraction, bistable_1d or bistable_2d)");
}

DynamicsNet::DynamicsNet(std::size_t input_dim, std::vector<DenseLayer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ == 0) throw FormatError("input_dim must be positive");
    if (layers_.empty()) throw FormatError("network has no layers");
    std::size_t expected_cols = input_dim_;
    widest_ = input_dim_;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const auto& l = layers_[i];
        const std::string where = "layer " + std::to_string(i);
        if (l.rows == 0) throw FormatError(where + ": rows must be positive");
        if (l.cols != expected_cols) {
            throw FormatError(where + ": cols is " + std::to_string(l.cols) + " but the previous " +
                              (i == 0 ? std::string("input_dim") : std::string("layer's rows")) +
                              " is " + std::to_string(expected_cols));
        }
        if (l.weights.size() != l.rows * l.cols) {
            throw FormatError(where + ": expected " + std::to_string(l.rows * l.cols) +
                              " weights, got " + std::to_string(l.weights.size()));
        }
        if (l.bias.size() != l.rows) {
            throw FormatError(where + ": expected " + std::to_string(l.rows) + " biases, got " +
                              std::to_string(l.bias.size()));
        }
        for (double w : l.weights) {
            if (!std::isfinite(w)) throw FormatError(where + ": non-finite weight");
        }
        for (double b : l.bias) {
            if (!std::isfinite(b)) throw FormatError(where + ": non-finite bias");
        }
        expected_cols = l.rows;
        widest_ = std::max(widest_, l.rows);
    }
    if (expected_cols != input_dim_) {
        throw FormatError("final layer has " + std::to_string(expected_cols) +
                          " outputs but input_dim is " + std::to_string(input_dim_));
    }
    if (layers_.back().activation == Activation::relu) {
        throw FormatError("final layer activation must be tanh (or identity), got relu: "
                          "outputs must cover (-1,1)^d");
    }
}

void DynamicsNet::apply(std::span<const double> in, std::span<double> out,
                        std::span<double> scratch) const {
    double* cur = scratch.data();
    double* nxt = scratch.data() + widest_;
    std::copy(in.begin(), in.end(), cur);
    for (const auto& l : layers_) {
        const double* w = l.weights.data();
        for (std::size_t r = 0; r < l.rows; ++r) {
            double acc = l.bias[r];
            const double* row = w + r * l.cols;
            for (std::size_t c = 0; c < l.cols; ++c) acc += row[c] * cur[c];
            switch (l.activation) {
                case Activation::tanh: acc = std::tanh(acc); break;
                case Activation::relu: acc = acc > 0.0 ? acc : 0.0; break;
                case Activation::identity: break;
            }
            if (!std::isfinite(acc)) throw Error("non-finite intermediate value in network");
            nxt[r] = acc;
        }
        std::swap(cur, nxt);
    }
    if (layers_.back().activation == Activation::identity) {
        for (std::size_t i = 0; i < input_dim_; ++i) cur[i] = clamp_unit(cur[i]);
    }
    std::copy(cur, cur + input_dim_, out.begin());
}

DynamicsMap::DynamicsMap(DynamicsNet net) : map_(std::move(net)) { check(); }
DynamicsMap::DynamicsMap(ContractionMap m) : map_(m) { check(); }
DynamicsMap::DynamicsMap(Bistable1dMap m) : map_(m) { check(); }
DynamicsMap::DynamicsMap(Bistable2dMap m) : map_(m) { check(); }

void DynamicsMap::check() {
    std::visit(Overloaded{
                   [&](const DynamicsNet& n) { dim_ = n.input_dim(); },
                   [&](const ContractionMap& m) {
                       if (m.dim == 0) throw Error("contraction: dim must be positive");
                       if (!(std::abs(m.rate) <= 1.0)) throw Error("contraction: |rate| must be <= 1");
                       dim_ = m.dim;
                   },
                   [&](const Bistable1dMap& m) {
                       if (!(m.gain > 0.0 && m.gain <= 0.5)) {
                           throw Error("bistable_1d: gain must lie in (0, 0.5]");
                       }
                       dim_ = 1;
                   },
                   [&](const Bistable2dMap& m) {
                       if (!(m.knee > 0.0 && m.knee < m.attractor && m.attractor < 1.0)) {
                           throw Error("bistable_2d: need 0 < knee < attractor < 1");
                       }
                       if (!(m.expansion > 1.0 && m.expansion * m.knee < m.attractor)) {
                           throw Error("bistable_2d: need expansion > 1 and expansion*knee < attractor");
                       }
                       if (!(std::abs(m.y_rate) < 1.0)) throw Error("bistable_2d: |y_rate| must be < 1");
                       dim_ = 2;
                   },
               },
               map_);
}

DynamicsMap DynamicsMap::analytic(AnalyticKind kind, std::size_t dim) {
    switch (kind) {
        case AnalyticKind::contraction: return DynamicsMap(ContractionMap{dim == 0 ? 2 : dim, 0.5});
        case AnalyticKind::bistable_1d:
            if (dim != 0 && dim != 1) throw Error("bistable_1d is one-dimensional");
            return DynamicsMap(Bistable1dMap{});
        case AnalyticKind::bistable_2d:
            if (dim != 0 && dim != 2) throw Error("bistable_2d is two-dimensional");
            return DynamicsMap(Bistable2dMap{});
    }
    throw Error("unknown analytic map");
}

void DynamicsMap::step(std::span<double> z, std::vector<double>& scratch) const {
    std::visit(Overloaded{
                   [&](const DynamicsNet& n) {
                       if (scratch.size() < 2 * n.widest_layer()) scratch.resize(2 * n.widest_layer());
                       n.apply(z, z, scratch);
                   },
                   [&](const ContractionMap& m) {
                       for (double& v : z) v = clamp_unit(m.rate * v);
                   },
                   [&](const Bistable1dMap& m) {
                       z[0] = clamp_unit(z[0] + m.gain * z[0] * (1.0 - z[0] * z[0]));
                   },
                   [&](const Bistable2dMap& m) {
                       z[0] = clamp_unit(bistable_2d_x(m, z[0]));
                       z[1] = clamp_unit(m.y_rate * z[1]);
                   },
               },
               map_);
    require_finite(z, "dynamics step");
}

RolloutSpec::RolloutSpec(int r) : steps(r) {
    if (r < 1) throw Error("rollout steps must be >= 1, got " + std::to_string(r));
}

void rollout_inplace(const DynamicsMap& m, std::span<double> z, int steps,
                     std::vector<double>& scratch) {
    for (int s = 0; s < steps; ++s) m.step(z, scratch);
}

LatentPoint forward(const DynamicsMap& m, const LatentPoint& p) {
    return rollout(m, p, RolloutSpec(1));
}

LatentPoint rollout(const DynamicsMap& m, const LatentPoint& p, const RolloutSpec& spec) {
    if (p.dim() != m.dim()) {
        throw Error("dimension mismatch: point has " + std::to_string(p.dim()) +
                    " coordinates, dynamics has dimension " + std::to_string(m.dim()));
    }
    require_finite(p.coords(), "rollout input");
    LatentPoint z = p;
    std::vector<double> scratch;
    rollout_inplace(m, z.coords(), spec.steps, scratch);
    return z;
}

double estimate_lipschitz(const DynamicsMap& m, const RolloutSpec& spec,
                          const LipschitzOptions& opts) {
    if (opts.domain_samples < 2) throw Error("lipschitz estimate needs at least 2 samples");
    if (!(opts.pair_scale > 0.0)) throw Error("lipschitz pair_scale must be positive");
    const std::size_t d = m.dim();
    const std::size_t chunks = (opts.domain_samples + kLipschitzChunk - 1) / kLipschitzChunk;
    std::vector<double> chunk_max(chunks, 0.0);

    parallel_for_chunks(chunks, opts.workers, [&](std::size_t chunk) {
        SeededRng rng(opts.seed, chunk);
        const std::size_t begin = chunk * kLipschitzChunk;
        const std::size_t end = std::min(opts.domain_samples, begin + kLipschitzChunk);
        std::vector<double> x(d), y(d), dir(d), scratch;
        double best = 0.0;
        for (std::size_t s = begin; s < end; ++s) {
            double gap = 0.0;
            do {
                for (auto& v : x) v = rng.uniform(-1.0, 1.0);
                // Direction by rejection from the unit ball.
                double norm2 = 0.0;
                do {
                    norm2 = 0.0;
                    for (auto& v : dir) {
                        v = rng.uniform(-1.0, 1.0);
                        norm2 += v * v;
                    }
                } while (norm2 == 0.0 || norm2 > 1.0);
                const double len = opts.pair_scale * (1.0 - rng.uniform01()) / std::sqrt(norm2);
                double g2 = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    y[a] = clamp_unit(x[a] + len * dir[a]);
                    g2 += (y[a] - x[a]) * (y[a] - x[a]);
                }
                gap = std::sqrt(g2);
            } while (gap == 0.0);
            rollout_inplace(m, x, spec.steps, scratch);
            rollout_inplace(m, y, spec.steps, scratch);
            double img2 = 0.0;
            for (std::size_t a = 0; a < d; ++a) img2 += (x[a] - y[a]) * (x[a] - y[a]);
            best = std::max(best, std::sqrt(img2) / gap);
        }
        chunk_max[chunk] = best;
    });
    return *std::max_element(chunk_max.begin(), chunk_max.end());
}

std::optional<double> exact_lipschitz(const DynamicsMap& m, const RolloutSpec& spec) {
    const double r = spec.steps;
    // Each analytic map is separable with its largest slope at a fixed point,
    // so the sup of the r-step derivative is (max slope)^r.
    return std::visit(Overloaded{
                          [](const DynamicsNet&) -> std::optional<double> { return std::nullopt; },
                          [&](const ContractionMap& c) -> std::optional<double> {
                              return std::pow(std::abs(c.rate), r);
                          },
                          [&](const Bistable1dMap& b) -> std::optional<double> {
                              const double slope = std::max(1.0 + b.gain, std::abs(1.0 - 2.0 * b.gain));
                              return std::pow(slope, r);
                          },
                          [&](const Bistable2dMap& b) -> std::optional<double> {
                              const double slope = std::max({b.expansion, std::abs(b.outer_rate()),
                                                             std::abs(b.y_rate)});
                              return std::pow(slope, r);
                          },
                      },
                      m.variant());
}

double delta_radius(double lipschitz, const LatentGrid& g, double safety_factor) {
    if (!(lipschitz >= 0.0)) throw Error("Lipschitz estimate must be non-negative");
    if (!(safety_factor >= 1.0)) throw Error("safety_factor must be >= 1");
    return safety_factor * lipschitz * g.half_diagonal();
}

std::optional<AttractorSet> analytic_attractors(const DynamicsMap& m) {
    return std::visit(
        Overloaded{
            [](const DynamicsNet&) -> std::optional<AttractorSet> { return std::nullopt; },
            [](const ContractionMap& c) -> std::optional<AttractorSet> {
                return AttractorSet{{LatentPoint(std::vector<double>(c.dim, 0.0))}, 0};
            },
            [](const Bistable1dMap&) -> std::optional<AttractorSet> {
                return AttractorSet{{LatentPoint{-1.0}, LatentPoint{1.0}}, 1};
            },
            [](const Bistable2dMap& b) -> std::optional<AttractorSet> {
                return AttractorSet{{LatentPoint{-b.attractor, 0.0}, LatentPoint{b.attractor, 0.0}}, 1};
            },
        },
        m.variant());
}

}  // namespace lmorse
