#include "lmorse/error.hpp"
#include "lmorse/geometry.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace lmorse {
namespace {

CellIndex ix(std::initializer_list<std::int64_t> v) { return CellIndex{std::vector<std::int64_t>(v)}; }

TEST(PointToCell, LowerCorner) {
    EXPECT_EQ(point_to_cell({-1.0, -1.0}, LatentGrid({4, 4})), ix({0, 0}));
}

TEST(PointToCell, UpperBoundaryIsClosed) {
    EXPECT_EQ(point_to_cell({1.0, 1.0}, LatentGrid({4, 4})), ix({3, 3}));
}

TEST(PointToCell, HalfOpenInterior) {
    EXPECT_EQ(point_to_cell({0.0}, LatentGrid({4})), ix({2}));
    EXPECT_EQ(point_to_cell({-0.5}, LatentGrid({4})), ix({1}));
    EXPECT_EQ(point_to_cell({std::nextafter(-0.5, -1.0)}, LatentGrid({4})), ix({0}));
}

TEST(PointToCell, EveryPointLandsInItsOwnBox) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& subs : {std::vector<std::int64_t>{3, 7}, {32, 32}, {5, 2, 9}}) {
        const LatentGrid g(subs);
        for (int s = 0; s < 2000; ++s) {
            std::vector<double> p(g.dim());
            for (double& v : p) v = u(rng);
            const LatentPoint pt(p);
            const auto c = point_to_cell(pt, g);
            ASSERT_TRUE(g.valid(c));
            ASSERT_TRUE(cell_box(c, g).contains_half_open(pt.coords()));
        }
    }
}

TEST(PointToCell, CellsPartitionTheCube) {
    // Edge coordinates belong to exactly one cell's half-open box.
    const LatentGrid g({6, 3});
    for (std::int64_t i = 0; i <= 6; ++i) {
        for (std::int64_t j = 0; j <= 3; ++j) {
            const LatentPoint p{g.lower_edge(0, std::min<std::int64_t>(i, 5)) + (i == 6 ? g.width(0) : 0.0),
                                j == 3 ? 1.0 : g.lower_edge(1, j)};
            int owners = 0;
            for (CellId id = 0; id < g.cell_count(); ++id) {
                owners += cell_box(g.index_of(id), g).contains_half_open(p.coords()) ? 1 : 0;
            }
            EXPECT_EQ(owners, 1) << p[0] << "," << p[1];
        }
    }
}

TEST(PointToCell, RejectsWrongDimension) {
    EXPECT_THROW(point_to_cell({0.0}, LatentGrid({4, 4})), Error);
}

TEST(CellBox, Examples) {
    auto b = cell_box(ix({0}), LatentGrid({4}));
    EXPECT_EQ(b.lo, (LatentPoint{-1.0}));
    EXPECT_EQ(b.hi, (LatentPoint{-0.5}));
    b = cell_box(ix({0, 0}), LatentGrid({4, 4}));
    EXPECT_EQ(b.lo, (LatentPoint{-1.0, -1.0}));
    EXPECT_EQ(b.hi, (LatentPoint{-0.5, -0.5}));
    b = cell_box(ix({1, 1}), LatentGrid({2, 2}));
    EXPECT_EQ(b.lo, (LatentPoint{0.0, 0.0}));
    EXPECT_EQ(b.hi, (LatentPoint{1.0, 1.0}));
}

TEST(CellBox, AdjacentBoxesShareExactEdges) {
    const LatentGrid g({7});
    for (std::int64_t k = 0; k + 1 < 7; ++k) {
        EXPECT_EQ(cell_box(ix({k}), g).hi[0], cell_box(ix({k + 1}), g).lo[0]);
    }
    EXPECT_EQ(cell_box(ix({6}), g).hi[0], 1.0);
}

TEST(CellCorners, Examples) {
    const auto c = cell_corners(ix({0, 0}), LatentGrid({4, 4}));
    const std::vector<LatentPoint> want{{-1, -1}, {-1, -0.5}, {-0.5, -1}, {-0.5, -0.5}};
    EXPECT_EQ(c, want);
    EXPECT_EQ(cell_corners(ix({1}), LatentGrid({2})), (std::vector<LatentPoint>{{0.0}, {1.0}}));
    EXPECT_EQ(cell_corners(ix({1, 2, 0}), LatentGrid::uniform(3, 4)).size(), 8U);
}

TEST(Neighbors, Examples) {
    EXPECT_EQ(neighbors(ix({0, 0}), LatentGrid({4, 4})),
              (std::vector<CellIndex>{ix({0, 1}), ix({1, 0}), ix({1, 1})}));
    EXPECT_EQ(neighbors(ix({1, 2}), LatentGrid({4, 4})).size(), 8U);
    EXPECT_EQ(neighbors(ix({1}), LatentGrid({4})), (std::vector<CellIndex>{ix({0}), ix({2})}));
}

TEST(Neighbors, SymmetricAndChebyshevOne) {
    const LatentGrid g({5, 4, 3});
    for (CellId a = 0; a < g.cell_count(); ++a) {
        for (CellId b : neighbor_ids(a, g)) {
            const auto na = neighbor_ids(b, g);
            EXPECT_TRUE(std::binary_search(na.begin(), na.end(), a));
            std::int64_t cheb = 0;
            const auto ia = g.index_of(a), ib = g.index_of(b);
            for (std::size_t k = 0; k < 3; ++k) cheb = std::max(cheb, std::abs(ia.idx[k] - ib.idx[k]));
            EXPECT_EQ(cheb, 1);
        }
    }
}

TEST(Ball, ZeroRadiusTouchesCellsSharingThePoint) {
    const LatentGrid g({4, 4});
    EXPECT_EQ(cells_intersecting_ball({0.1, 0.1}, 0.0, g), (std::vector<CellIndex>{ix({2, 2})}));
    EXPECT_EQ(cells_intersecting_ball({0.0, 0.1}, 0.0, g), (std::vector<CellIndex>{ix({1, 2}), ix({2, 2})}));
    EXPECT_EQ(cells_intersecting_ball({0.0, 0.0}, 0.0, g).size(), 4U);
}

TEST(Ball, OneDimensionalExampleMatchesDenseSampling) {
    const LatentGrid g({4});
    const auto got = cells_intersecting_ball({0.25}, 0.3, g);
    EXPECT_EQ(got, (std::vector<CellIndex>{ix({1}), ix({2}), ix({3})}));

    // Oracle: step through the ball at 1e-4 and collect every closed box hit.
    std::set<CellIndex> sampled;
    for (int k = -3000; k <= 3000; ++k) {
        const double x = 0.25 + k * 1e-4;
        for (CellId id = 0; id < g.cell_count(); ++id) {
            if (cell_box(g.index_of(id), g).contains(std::vector<double>{x})) sampled.insert(g.index_of(id));
        }
    }
    EXPECT_EQ(got, std::vector<CellIndex>(sampled.begin(), sampled.end()));
}

TEST(Ball, CoveringBallReturnsAllCells) {
    const LatentGrid g({5, 3});
    EXPECT_EQ(cells_intersecting_ball({0.0, 0.0}, 2.0 * std::sqrt(2.0), g).size(), 15U);
}

TEST(Ball, MonteCarloAgainstClosestPoint) {
    // A cell is reported iff some sampled point of the ball lies in its box,
    // up to the sampling resolution; check both directions with a margin.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.2, 1.2), ur(0.0, 0.6);
    const LatentGrid g({9, 7});
    for (int trial = 0; trial < 300; ++trial) {
        const LatentPoint c{u(rng), u(rng)};
        const double r = ur(rng);
        const auto got = cells_intersecting_ball(c, r, g);
        for (CellId id = 0; id < g.cell_count(); ++id) {
            const auto idx = g.index_of(id);
            const double d = oracle::distance_to_box(c, cell_box(idx, g));
            const bool in = std::binary_search(got.begin(), got.end(), idx);
            if (d < r - 1e-9) EXPECT_TRUE(in);
            if (d > r + 1e-9) EXPECT_FALSE(in);
        }
    }
}

TEST(Clamp, Examples) {
    EXPECT_EQ(clamp_to_domain({1.2, -0.5}), (LatentPoint{1.0, -0.5}));
    EXPECT_EQ(clamp_to_domain({0.0, 0.0}), (LatentPoint{0.0, 0.0}));
    EXPECT_EQ(clamp_to_domain({-3.0, 3.0}), (LatentPoint{-1.0, 1.0}));
    EXPECT_THROW(clamp_to_domain({NAN}), Error);
}

TEST(Grid, RejectsNonPositiveSubdivisions) {
    EXPECT_THROW(LatentGrid({0, 4}), Error);
    EXPECT_THROW(LatentGrid(std::vector<std::int64_t>{}), Error);
}

TEST(Grid, FlatIdRoundTrip) {
    const LatentGrid g({3, 5, 2});
    for (CellId id = 0; id < g.cell_count(); ++id) EXPECT_EQ(g.flat_id(g.index_of(id)), id);
    EXPECT_EQ(g.flat_id(ix({0, 0, 1})), 1U);
    EXPECT_EQ(g.flat_id(ix({1, 0, 0})), 10U);
}

TEST(Grid, HalfDiagonal) {
    EXPECT_DOUBLE_EQ(LatentGrid({4}).half_diagonal(), 0.25);
    EXPECT_NEAR(LatentGrid({2, 2}).half_diagonal(), std::sqrt(2.0) / 2.0, 1e-15);
}

}  // namespace
}  // namespace lmorse
