#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace lmorse {

/// A point of the latent cube [-1, 1]^d.
class LatentPoint {
public:
    LatentPoint() = default;
    explicit LatentPoint(std::vector<double> coords) : coords_(std::move(coords)) {}
    LatentPoint(std::initializer_list<double> coords) : coords_(coords) {}

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t axis) const { return coords_[axis]; }
    double& operator[](std::size_t axis) { return coords_[axis]; }

    std::span<const double> coords() const { return coords_; }
    std::span<double> coords() { return coords_; }

    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    friend bool operator==(const LatentPoint&, const LatentPoint&) = default;

private:
    std::vector<double> coords_;
};

/// Row-major flat id of a cell.
using CellId = std::uint64_t;

/// Per-axis integer coordinates of a cell.
struct CellIndex {
    std::vector<std::int64_t> idx;

    std::size_t dim() const { return idx.size(); }
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct CellBox {
    LatentPoint lo;
    LatentPoint hi;

    /// Closed-box membership.
    bool contains(std::span<const double> p) const;
    /// Half-open membership [lo, hi) on every axis, except that an axis whose
    /// hi is +1 is closed there.
    bool contains_half_open(std::span<const double> p) const;
    double half_diagonal() const;
};

/// Uniform decomposition of [-1, 1]^d into axis-aligned cells.
///
/// Cells are numbered row-major: the last axis varies fastest. Each axis may
/// carry its own subdivision count.
class LatentGrid {
public:
    explicit LatentGrid(std::vector<std::int64_t> subdivisions);

    /// Convenience for isotropic grids.
    static LatentGrid uniform(std::size_t dim, std::int64_t cells_per_axis);

    std::size_t dim() const { return subdivisions_.size(); }
    const std::vector<std::int64_t>& subdivisions() const { return subdivisions_; }
    double width(std::size_t axis) const { return widths_[axis]; }
    CellId cell_count() const { return cell_count_; }
    double half_diagonal() const { return half_diagonal_; }

    bool valid(const CellIndex& c) const;
    CellId flat_id(const CellIndex& c) const;
    CellIndex index_of(CellId id) const;

    /// Lower edge of cell k along an axis.
    double lower_edge(std::size_t axis, std::int64_t k) const;
    /// Index along one axis of the cell holding coordinate x in [-1, 1].
    std::int64_t axis_cell(std::size_t axis, double x) const;

    friend bool operator==(const LatentGrid& a, const LatentGrid& b) {
        return a.subdivisions_ == b.subdivisions_;
    }

private:
    std::vector<std::int64_t> subdivisions_;
    std::vector<double> widths_;
    std::vector<CellId> strides_;
    CellId cell_count_ = 0;
    double half_diagonal_ = 0.0;
};

LatentPoint clamp_to_domain(const LatentPoint& p);

CellIndex point_to_cell(const LatentPoint& p, const LatentGrid& g);
CellId point_to_cell_id(std::span<const double> p, const LatentGrid& g);

CellBox cell_box(const CellIndex& c, const LatentGrid& g);
LatentPoint cell_center(const CellIndex& c, const LatentGrid& g);

/// The 2^d vertices of the cell box. Corner k takes hi on axis a iff bit
/// (d-1-a) of k is set, so corners come out in lexicographic order.
std::vector<LatentPoint> cell_corners(const CellIndex& c, const LatentGrid& g);

/// Moore neighborhood, excluding c itself, clipped to the grid. Sorted by flat id.
std::vector<CellIndex> neighbors(const CellIndex& c, const LatentGrid& g);
std::vector<CellId> neighbor_ids(CellId c, const LatentGrid& g);

/// Cells whose closed box lies within Euclidean distance `radius` of `center`.
/// Sorted by flat id.
std::vector<CellIndex> cells_intersecting_ball(const LatentPoint& center, double radius,
                                               const LatentGrid& g);

/// Appends the flat ids of the cells intersecting the ball to `out`, unsorted.
/// Hot-path variant used by the transition-graph builder.
void append_ball_cells(std::span<const double> center, double radius, const LatentGrid& g,
                       std::vector<CellId>& out);

}  // namespace lmorse
