#include "lmorse/geometry.hpp"

#include "lmorse/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lmorse {

namespace {

// Added to every ball radius. Only ever grows the cell set.
constexpr double kBallSlack = 1e-12;

void require_dim(std::size_t got, const LatentGrid& g) {
    if (got != g.dim()) {
        throw Error("dimension mismatch: point has " + std::to_string(got) +
                    " coordinates, grid has dimension " + std::to_string(g.dim()));
    }
}

}  // namespace

bool CellBox::contains(std::span<const double> p) const {
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] < lo[a] || p[a] > hi[a]) return false;
    }
    return true;
}

bool CellBox::contains_half_open(std::span<const double> p) const {
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] < lo[a]) return false;
        if (p[a] >= hi[a] && !(hi[a] == 1.0 && p[a] == 1.0)) return false;
    }
    return true;
}

double CellBox::half_diagonal() const {
    double sum = 0.0;
    for (std::size_t a = 0; a < lo.dim(); ++a) {
        const double w = hi[a] - lo[a];
        sum += w * w;
    }
    return 0.5 * std::sqrt(sum);
}

LatentGrid::LatentGrid(std::vector<std::int64_t> subdivisions)
    : subdivisions_(std::move(subdivisions)) {
    if (subdivisions_.empty()) throw Error("grid needs at least one axis");
    widths_.resize(dim());
    strides_.resize(dim());
    double diag2 = 0.0;
    CellId count = 1;
    for (std::size_t a = dim(); a-- > 0;) {
        const auto n = subdivisions_[a];
        if (n < 1) {
            throw Error("subdivisions[" + std::to_string(a) + "] must be positive, got " +
                        std::to_string(n));
        }
        strides_[a] = count;
        if (count > (CellId{1} << 62) / static_cast<CellId>(n)) {
            throw Error("grid has too many cells");
        }
        count *= static_cast<CellId>(n);
        widths_[a] = 2.0 / static_cast<double>(n);
        diag2 += widths_[a] * widths_[a];
    }
    cell_count_ = count;
    half_diagonal_ = 0.5 * std::sqrt(diag2);
}

LatentGrid LatentGrid::uniform(std::size_t dim, std::int64_t cells_per_axis) {
    return LatentGrid(std::vector<std::int64_t>(dim, cells_per_axis));
}

bool LatentGrid::valid(const CellIndex& c) const {
    if (c.dim() != dim()) return false;
    for (std::size_t a = 0; a < dim(); ++a) {
        if (c.idx[a] < 0 || c.idx[a] >= subdivisions_[a]) return false;
    }
    return true;
}

CellId LatentGrid::flat_id(const CellIndex& c) const {
    if (!valid(c)) throw Error("invalid cell index for grid");
    CellId id = 0;
    for (std::size_t a = 0; a < dim(); ++a) id += static_cast<CellId>(c.idx[a]) * strides_[a];
    return id;
}

CellIndex LatentGrid::index_of(CellId id) const {
    if (id >= cell_count_) throw Error("cell id " + std::to_string(id) + " out of range");
    CellIndex c;
    c.idx.resize(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        c.idx[a] = static_cast<std::int64_t>(id / strides_[a]);
        id %= strides_[a];
    }
    return c;
}

double LatentGrid::lower_edge(std::size_t axis, std::int64_t k) const {
    // 2k/n - 1 hits -1, 0 (when n is even) and +1 exactly.
    return 2.0 * static_cast<double>(k) / static_cast<double>(subdivisions_[axis]) - 1.0;
}

std::int64_t LatentGrid::axis_cell(std::size_t axis, double x) const {
    const auto n = subdivisions_[axis];
    auto k = static_cast<std::int64_t>(std::floor((x + 1.0) / widths_[axis]));
    k = std::clamp<std::int64_t>(k, 0, n - 1);
    // Snap to the same edges cell_box reports.
    while (k > 0 && x < lower_edge(axis, k)) --k;
    while (k < n - 1 && x >= lower_edge(axis, k + 1)) ++k;
    return k;
}

LatentPoint clamp_to_domain(const LatentPoint& p) {
    LatentPoint out = p;
    for (std::size_t a = 0; a < p.dim(); ++a) {
        if (!std::isfinite(p[a])) throw Error("non-finite coordinate on axis " + std::to_string(a));
        out[a] = std::clamp(p[a], -1.0, 1.0);
    }
    return out;
}

CellId point_to_cell_id(std::span<const double> p, const LatentGrid& g) {
    require_dim(p.size(), g);
    CellIndex c;
    c.idx.resize(g.dim());
    for (std::size_t a = 0; a < g.dim(); ++a) c.idx[a] = g.axis_cell(a, p[a]);
    return g.flat_id(c);
}

CellIndex point_to_cell(const LatentPoint& p, const LatentGrid& g) {
    require_dim(p.dim(), g);
    CellIndex c;
    c.idx.resize(g.dim());
    for (std::size_t a = 0; a < g.dim(); ++a) c.idx[a] = g.axis_cell(a, p[a]);
    return c;
}

CellBox cell_box(const CellIndex& c, const LatentGrid& g) {
    if (!g.valid(c)) throw Error("invalid cell index for grid");
    std::vector<double> lo(g.dim()), hi(g.dim());
    for (std::size_t a = 0; a < g.dim(); ++a) {
        lo[a] = g.lower_edge(a, c.idx[a]);
        hi[a] = g.lower_edge(a, c.idx[a] + 1);
    }
    return CellBox{LatentPoint(std::move(lo)), LatentPoint(std::move(hi))};
}

LatentPoint cell_center(const CellIndex& c, const LatentGrid& g) {
    if (!g.valid(c)) throw Error("cell index outside the grid");
    std::vector<double> mid(g.dim());
    for (std::size_t a = 0; a < g.dim(); ++a) {
        // (2k+1)/n - 1 is exactly 0 for the middle cell of an odd axis.
        mid[a] = static_cast<double>(2 * c.idx[a] + 1) / static_cast<double>(g.subdivisions()[a]) - 1.0;
    }
    return LatentPoint(std::move(mid));
}

std::vector<LatentPoint> cell_corners(const CellIndex& c, const LatentGrid& g) {
    const auto box = cell_box(c, g);
    const std::size_t d = g.dim();
    const std::size_t count = std::size_t{1} << d;
    std::vector<LatentPoint> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> v(d);
        for (std::size_t a = 0; a < d; ++a) {
            const bool high = (k >> (d - 1 - a)) & 1U;
            v[a] = high ? box.hi[a] : box.lo[a];
        }
        out.emplace_back(std::move(v));
    }
    return out;
}

std::vector<CellId> neighbor_ids(CellId id, const LatentGrid& g) {
    const auto c = g.index_of(id);
    const std::size_t d = g.dim();
    std::vector<std::int64_t> offset(d, -1);
    std::vector<CellId> out;
    CellIndex probe;
    probe.idx.resize(d);
    while (true) {
        bool inside = true;
        bool self = true;
        for (std::size_t a = 0; a < d; ++a) {
            probe.idx[a] = c.idx[a] + offset[a];
            if (probe.idx[a] < 0 || probe.idx[a] >= g.subdivisions()[a]) inside = false;
            if (offset[a] != 0) self = false;
        }
        if (inside && !self) out.push_back(g.flat_id(probe));
        std::size_t a = d;
        while (a > 0) {
            --a;
            if (++offset[a] <= 1) break;
            offset[a] = -1;
            if (a == 0) return out;  // odometer wrapped; already in row-major order
        }
    }
}

std::vector<CellIndex> neighbors(const CellIndex& c, const LatentGrid& g) {
    std::vector<CellIndex> out;
    for (CellId id : neighbor_ids(g.flat_id(c), g)) out.push_back(g.index_of(id));
    return out;
}

void append_ball_cells(std::span<const double> center, double radius, const LatentGrid& g,
                       std::vector<CellId>& out) {
    require_dim(center.size(), g);
    if (radius < 0.0) throw Error("ball radius must be non-negative");
    const std::size_t d = g.dim();
    const double r = radius + kBallSlack;
    const double r2 = r * r;

    std::vector<std::int64_t> first(d), last(d), k(d);
    for (std::size_t a = 0; a < d; ++a) {
        first[a] = g.axis_cell(a, std::clamp(center[a] - r, -1.0, 1.0));
        last[a] = g.axis_cell(a, std::clamp(center[a] + r, -1.0, 1.0));
        // A ball ending exactly on an edge also touches the closed box below it.
        if (first[a] > 0 && g.lower_edge(a, first[a]) >= center[a] - r) --first[a];
        k[a] = first[a];
    }

    auto axis_gap2 = [&](std::size_t a, std::int64_t kk) {
        const double lo = g.lower_edge(a, kk);
        const double hi = g.lower_edge(a, kk + 1);
        const double nearest = std::clamp(center[a], lo, hi);
        const double gap = center[a] - nearest;
        return gap * gap;
    };

    // Odometer over the index box with running partial sums so rows that are
    // already too far are skipped wholesale.
    std::vector<double> partial(d + 1, 0.0);
    std::size_t a = 0;
    while (true) {
        partial[a + 1] = partial[a] + axis_gap2(a, k[a]);
        if (partial[a + 1] <= r2) {
            if (a + 1 == d) {
                CellId id = 0;
                CellId stride = 1;
                for (std::size_t b = d; b-- > 0;) {
                    id += static_cast<CellId>(k[b]) * stride;
                    stride *= static_cast<CellId>(g.subdivisions()[b]);
                }
                out.push_back(id);
            } else {
                ++a;
                k[a] = first[a];
                continue;
            }
        }
        // advance
        while (true) {
            if (++k[a] <= last[a]) break;
            if (a == 0) return;
            --a;
        }
    }
}

std::vector<CellIndex> cells_intersecting_ball(const LatentPoint& center, double radius,
                                               const LatentGrid& g) {
    std::vector<CellId> ids;
    append_ball_cells(center.coords(), radius, g, ids);
    std::sort(ids.begin(), ids.end());
    std::vector<CellIndex> out;
    out.reserve(ids.size());
    for (CellId id : ids) out.push_back(g.index_of(id));
    return out;
}

}  // namespace lmorse
