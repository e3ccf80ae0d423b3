#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "skinrecon/error.hpp"
#include "skinrecon/geometry.hpp"

using namespace skinrecon;

TEST(Geometry, SingleCellLattice) {
    const auto g = build_regular_grid({0, 0}, 1, 1, 2e-3, 2e-3);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_DOUBLE_EQ(g[0].center.x, 1e-3);
    EXPECT_DOUBLE_EQ(g[0].center.y, 1e-3);
    EXPECT_DOUBLE_EQ(g[0].a, 1e-3);
    EXPECT_DOUBLE_EQ(g[0].b, 1e-3);
    EXPECT_TRUE(g.regular());
}

TEST(Geometry, CountsAndHalfExtents) {
    const auto g = build_regular_grid({0, 0}, 10, 10, 2e-3, 2e-3);
    EXPECT_EQ(g.size(), 100u);
    EXPECT_TRUE(g.regular());
    const auto h = build_regular_grid({0, 0}, 3, 2, 0.5e-3, 3e-3);
    ASSERT_EQ(h.size(), 6u);
    for (const auto& c : h.cells()) {
        EXPECT_DOUBLE_EQ(c.a, 0.25e-3);
        EXPECT_DOUBLE_EQ(c.b, 1.5e-3);
    }
}

TEST(Geometry, RowMajorOrdering) {
    const auto g = build_regular_grid({0, 0}, 3, 2, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(g[1].center.x, 1.5);
    EXPECT_DOUBLE_EQ(g[1].center.y, 0.5);
    EXPECT_DOUBLE_EQ(g[3].center.x, 0.5);
    EXPECT_DOUBLE_EQ(g[3].center.y, 1.5);
}

TEST(Geometry, RejectsBadDimensions) {
    EXPECT_THROW(build_regular_grid({0, 0}, 0, 1, 1, 1), Error);
    EXPECT_THROW(build_regular_grid({0, 0}, 1, 1, 0, 1), Error);
    EXPECT_THROW(build_regular_grid({0, 0}, 1, 1, 1, -1), Error);
    try {
        build_regular_grid({0, 0}, 1, 1, -1, 1);
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::invalid_argument);
    }
}

TEST(Geometry, TaxelLayoutSingle) {
    const Vec2 c[] = {{0, 0}};
    const auto g = grid_from_taxel_layout(c, 4e-6);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_NEAR(g[0].a, 1e-3, 1e-18);
    EXPECT_NEAR(g[0].b, 1e-3, 1e-18);
}

TEST(Geometry, TaxelLayoutTriangularModuleIsIrregular) {
    // Twelve taxels of a triangular module: rows of 5, 4 and 3 offset by half a pitch.
    std::vector<Vec2> c;
    const double pitch = 6e-3, rise = pitch * std::sqrt(3.0) / 2.0;
    for (int row = 0, n = 5; row < 3; ++row, --n)
        for (int i = 0; i < n; ++i) c.push_back({(i + 0.5 * row) * pitch, row * rise});
    ASSERT_EQ(c.size(), 12u);
    const auto g = grid_from_taxel_layout(c, 1.6e-5);
    EXPECT_EQ(g.size(), 12u);
    EXPECT_FALSE(g.regular());
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(g[k].center, c[k]);
}

TEST(Geometry, TaxelLayoutDetectsLattice) {
    std::vector<Vec2> c;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i) c.push_back({i * 2e-3, j * 2e-3});
    const auto g = grid_from_taxel_layout(c, 4e-6);
    ASSERT_TRUE(g.regular());
    EXPECT_EQ(g.lattice()->nx, 4u);
    EXPECT_EQ(g.lattice()->ny, 3u);
}

TEST(Geometry, DuplicateCentersRejected) {
    const Vec2 c[] = {{1e-3, 0}, {1e-3, 0}};
    EXPECT_THROW(grid_from_taxel_layout(c, 1e-6), Error);
    const Vec2 d[] = {{1e-3, 0}, {1e-3 + 1e-10, 0}};
    EXPECT_THROW(grid_from_taxel_layout(d, 1e-6), Error);
}

TEST(Geometry, NodeDelta) {
    const auto g = build_regular_grid({0, 0}, 4, 4, 1e-3, 1e-3);
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_EQ(node_delta(g, k, g, k), (Vec2{0, 0}));
        for (std::size_t l = 0; l < g.size(); ++l) {
            const auto a = node_delta(g, k, g, l), b = node_delta(g, l, g, k);
            EXPECT_EQ(a.x, -b.x);
            EXPECT_EQ(a.y, -b.y);
        }
    }
    const Vec2 c1[] = {{1e-3, 0}}, c0[] = {{0, 0}};
    const auto g1 = grid_from_taxel_layout(c1, 1e-6), g0 = grid_from_taxel_layout(c0, 1e-6);
    EXPECT_EQ(node_delta(g1, 0, g0, 0), (Vec2{1e-3, 0}));
    EXPECT_THROW(node_delta(g, 16, g, 0), Error);
}

TEST(Geometry, LatticeNeighboursAreExactSpacing) {
    // Spacings exactly representable in binary so neighbour offsets are exact.
    const auto g = build_regular_grid({-1.0, -2.0}, 6, 5, 0.25, 0.5);
    const auto& lat = *g.lattice();
    for (std::size_t j = 0; j < lat.ny; ++j)
        for (std::size_t i = 0; i + 1 < lat.nx; ++i) {
            const auto k = j * lat.nx + i;
            EXPECT_EQ(node_delta(g, k + 1, g, k), (Vec2{0.25, 0}));
        }
    for (std::size_t j = 0; j + 1 < lat.ny; ++j)
        for (std::size_t i = 0; i < lat.nx; ++i) {
            const auto k = j * lat.nx + i;
            EXPECT_EQ(node_delta(g, k + lat.nx, g, k), (Vec2{0, 0.5}));
        }
}

TEST(Geometry, SerializationRoundTripsBitExactly) {
    const auto g = build_regular_grid({-0.0123, 0.0071}, 7, 3, 1.7e-3, 2.3e-3, GridKind::traction);
    std::stringstream ss;
    write_grid(ss, g);
    const auto back = read_grid(ss);
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.hash(), g.hash());

    std::vector<Vec2> c{{0.1, 0.2}, {1.0 / 3.0, -2.0 / 7.0}, {1e-17, 5e-3}};
    const auto irregular = grid_from_taxel_layout(c, 1.1e-6);
    std::stringstream ss2;
    write_grid(ss2, irregular);
    EXPECT_EQ(read_grid(ss2), irregular);
}

TEST(Geometry, MalformedGridFileIsIoError) {
    std::stringstream ss("# skinrecon-grid v1\n0,1,2,3\n");
    try {
        read_grid(ss);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::io_error);
    }
}
