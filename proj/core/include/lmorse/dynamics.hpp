#pragma once

#include "lmorse/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lmorse {

enum class Activation { tanh, relu, identity };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

struct DenseLayer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> weights;  // row-major rows x cols
    std::vector<double> bias;     // rows
    Activation activation = Activation::identity;
};

/// Feed-forward latent dynamics network Z -> Z.
///
/// Trained networks end in tanh. An identity head is also accepted (its
/// output is clamped to the cube) so that hand-written linear maps can be
/// used as fixtures; a relu head is rejected.
class DynamicsNet {
public:
    /// Validates the dimension chain, finiteness and the output head. Throws
    /// FormatError naming the offending layer.
    DynamicsNet(std::size_t input_dim, std::vector<DenseLayer> layers);

    std::size_t input_dim() const { return input_dim_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }
    std::size_t widest_layer() const { return widest_; }

    /// out may alias in. scratch must hold 2 * widest_layer() doubles.
    void apply(std::span<const double> in, std::span<double> out, std::span<double> scratch) const;

private:
    std::size_t input_dim_;
    std::vector<DenseLayer> layers_;
    std::size_t widest_ = 0;
};

/// z -> rate * z on [-1,1]^dim. Single attractor at the origin.
struct ContractionMap {
    std::size_t dim = 2;
    double rate = 0.5;
};

/// z -> clamp(z + gain * z * (1 - z^2)). Attractors at -1 and +1.
struct Bistable1dMap {
    double gain = 0.3;
};

/// Decoupled planar map. x follows an odd piecewise-linear map with slope
/// `expansion` on |x| <= knee and an affine contraction onto +-attractor
/// beyond it; y -> y_rate * y. Attractors (+-attractor, 0), separatrix x = 0.
struct Bistable2dMap {
    double expansion = 1.16;
    double knee = 0.3;
    double attractor = 0.6;
    double y_rate = 0.8;

    double outer_rate() const { return (attractor - expansion * knee) / (attractor - knee); }
};

enum class AnalyticKind { contraction, bistable_1d, bistable_2d };

std::string to_string(AnalyticKind k);
AnalyticKind analytic_kind_from_string(const std::string& name);

/// Either a loaded network or one of the built-in analytic maps.
class DynamicsMap {
public:
    using Variant = std::variant<DynamicsNet, ContractionMap, Bistable1dMap, Bistable2dMap>;

    explicit DynamicsMap(DynamicsNet net);
    explicit DynamicsMap(ContractionMap m);
    explicit DynamicsMap(Bistable1dMap m);
    explicit DynamicsMap(Bistable2dMap m);

    /// Built-in map with default parameters.
    static DynamicsMap analytic(AnalyticKind kind, std::size_t dim = 0);

    std::size_t dim() const { return dim_; }
    const Variant& variant() const { return map_; }
    bool is_network() const { return std::holds_alternative<DynamicsNet>(map_); }

    /// One step, in place. Throws on non-finite values.
    void step(std::span<double> z, std::vector<double>& scratch) const;

private:
    void check();

    Variant map_;
    std::size_t dim_ = 0;
};

struct RolloutSpec {
    int steps = 12;

    explicit RolloutSpec(int r = 12);
};

LatentPoint forward(const DynamicsMap& m, const LatentPoint& p);
LatentPoint rollout(const DynamicsMap& m, const LatentPoint& p, const RolloutSpec& spec);

/// In-place r-step rollout for hot loops.
void rollout_inplace(const DynamicsMap& m, std::span<double> z, int steps,
                     std::vector<double>& scratch);

struct LipschitzOptions {
    std::size_t domain_samples = 10000;
    double pair_scale = 1e-3;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Sampled lower estimate of the Lipschitz constant of the r-step map: the
/// largest ratio |R(x) - R(x + e)| / |e| over random x in the cube and random
/// perturbations |e| <= pair_scale. The result does not depend on the worker
/// count.
double estimate_lipschitz(const DynamicsMap& m, const RolloutSpec& spec,
                          const LipschitzOptions& opts = {});

/// Exact Lipschitz constant of the r-step map for the analytic maps; empty for
/// networks.
std::optional<double> exact_lipschitz(const DynamicsMap& m, const RolloutSpec& spec);

/// delta = safety_factor * L * (half-diagonal of one cell).
double delta_radius(double lipschitz, const LatentGrid& g, double safety_factor);

/// Attractors of an analytic map and which one counts as success.
struct AttractorSet {
    std::vector<LatentPoint> points;
    std::size_t success = 0;
};

std::optional<AttractorSet> analytic_attractors(const DynamicsMap& m);

}  // namespace lmorse
