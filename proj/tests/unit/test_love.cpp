#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skinrecon/error.hpp"
#include "skinrecon/love.hpp"
#include "skinrecon/love_oracle.hpp"

using namespace skinrecon;

namespace {

const CellExtent kFig5{5e-3, 2e-3};  // 10 x 4 mm
constexpr double kP = 1e5;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double vmax(Vec3 v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

}  // namespace

TEST(Love, ZeroPressure) {
    ElastomerParams p;
    const auto u = love_displacement(0.0, kFig5, {1e-3, 2e-3, 1e-3}, p);
    EXPECT_EQ(u.x, 0.0);
    EXPECT_EQ(u.y, 0.0);
    EXPECT_EQ(u.z, 0.0);
}

TEST(Love, MirrorSymmetry) {
    ElastomerParams p;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> r(-1e-2, 1e-2), z(0, 3e-3);
    for (int i = 0; i < 200; ++i) {
        const double x = r(rng), y = r(rng), zz = i % 4 == 0 ? 0.0 : z(rng);
        const double u = love_displacement(kP, kFig5, {x, y, zz}, p).z;
        EXPECT_LE(rel(love_displacement(kP, kFig5, {-x, y, zz}, p).z, u), 1e-12);
        EXPECT_LE(rel(love_displacement(kP, kFig5, {x, -y, zz}, p).z, u), 1e-12);
    }
}

TEST(Love, Linearity) {
    ElastomerParams p;
    p.nu = 0.3;
    const Vec3 pt{2e-3, -1e-3, 5e-4};
    const auto a = love_displacement(1.0, kFig5, pt, p);
    const auto b = love_displacement(-3.5e4, kFig5, pt, p);
    EXPECT_LE(rel(b.x, -3.5e4 * a.x), 1e-14);
    EXPECT_LE(rel(b.y, -3.5e4 * a.y), 1e-14);
    EXPECT_LE(rel(b.z, -3.5e4 * a.z), 1e-14);
}

TEST(Love, NormalProfileMatchesQuadrature) {
    ElastomerParams p;
    for (int i = 0; i < 50; ++i) {
        const Vec3 pt{-1.5e-2 + 3e-2 * i / 49.0, 0.0, i % 2 ? 0.0 : p.h_n};
        const double q = love_displacement_quadrature(kP, kFig5, pt, p).z;
        const double c = love_displacement(kP, kFig5, pt, p).z;
        EXPECT_LE(rel(c, q), 1e-6) << pt.x << ' ' << pt.z;
    }
}

TEST(Love, FullVectorMatchesQuadrature) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> r(-1.2e-2, 1.2e-2);
    const double zs[] = {0.0, 1e-5, 3e-4, 2e-3};
    for (double nu : {0.5, 0.3, 0.0}) {
        ElastomerParams p;
        p.nu = nu;
        for (int i = 0; i < 8; ++i) {
            const Vec3 pt{r(rng), r(rng), zs[i % 4]};
            const auto q = love_displacement_quadrature(kP, kFig5, pt, p);
            const auto c = love_displacement(kP, kFig5, pt, p);
            const double s = vmax(q);
            EXPECT_LE(std::abs(c.x - q.x), 1e-8 * s);
            EXPECT_LE(std::abs(c.y - q.y), 1e-8 * s);
            EXPECT_LE(std::abs(c.z - q.z), 1e-8 * s);
        }
    }
}

TEST(Love, EdgesCornersAndCenterMatchQuadrature) {
    ElastomerParams p;
    p.nu = 0.25;
    const double a = kFig5.a, b = kFig5.b;
    const Vec3 pts[] = {{0, 0, 0}, {a, 0, 0}, {a, b, 0}, {-a, b, 0}, {0, -b, 0}, {a, b, 1e-3}, {0, 0, 2e-3}};
    for (const auto& pt : pts) {
        const auto q = love_displacement_quadrature(kP, kFig5, pt, p);
        const auto c = love_displacement(kP, kFig5, pt, p);
        const double s = vmax(q);
        EXPECT_LE(std::abs(c.x - q.x), 1e-8 * s) << pt.x << ' ' << pt.y << ' ' << pt.z;
        EXPECT_LE(std::abs(c.y - q.y), 1e-8 * s);
        EXPECT_LE(std::abs(c.z - q.z), 1e-8 * s);
    }
}

TEST(Love, PotentialDerivativesReproduceDisplacement) {
    const Vec3 pts[] = {{0, 0, 5e-4}, {1.5e-3, 0.5e-3, 1e-3}, {8e-3, 4e-3, 2e-3}};
    for (double nu : {0.5, 0.3}) {
        ElastomerParams p;
        p.nu = nu;
        for (const auto& pt : pts) {
            const auto fd = oracle::love_from_potentials(kP, kFig5, pt, p, 1e-6);
            const auto c = love_displacement(kP, kFig5, pt, p);
            const double s = vmax(c);
            EXPECT_LE(std::abs(c.x - fd.x), 1e-5 * s) << nu;
            EXPECT_LE(std::abs(c.y - fd.y), 1e-5 * s) << nu;
            EXPECT_LE(std::abs(c.z - fd.z), 1e-5 * s) << nu;
        }
    }
}

TEST(Love, PotentialOracleBasics) {
    const Vec3 pt{3e-3, 1e-3, 1e-3};
    const auto v1 = love_potential_oracle(1.0, kFig5, pt, Potential::V);
    const auto v2 = love_potential_oracle(2.0, kFig5, pt, Potential::V);
    EXPECT_GT(v1.value, 0.0);
    EXPECT_LE(rel(v2.value, 2.0 * v1.value), 1e-14);
    EXPECT_GT(love_potential_oracle(1.0, kFig5, {0, 0, 0}, Potential::V).value, 0.0);
    EXPECT_TRUE(std::isfinite(love_potential_oracle(1.0, kFig5, {0, 0, 0}, Potential::chi).value));
}

TEST(Love, OracleErrorEstimateWithinTolerance) {
    for (auto w : {Potential::chi, Potential::V}) {
        const auto r = love_potential_oracle(1.0, kFig5, {2e-3, 1e-3, 1e-3}, w, 1e-9);
        EXPECT_LE(r.error_estimate, 1e-9 * std::abs(r.value));
    }
}

TEST(Love, ColumnMatchesDisplacementDifference) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> r(-1e-2, 1e-2);
    for (double nu : {0.5, 0.3}) {
        ElastomerParams p;
        p.nu = nu;
        for (int i = 0; i < 200; ++i) {
            const Vec2 off = i % 20 == 0 ? Vec2{0, 0} : Vec2{r(rng), r(rng)};
            const double h = 1e-3 * (1 + i % 3);
            const auto col = love_influence_column(kFig5, off, h, p);
            const auto top = love_displacement(1.0, kFig5, {off.x, off.y, 0.0}, p);
            const auto bot = love_displacement(1.0, kFig5, {off.x, off.y, h}, p);
            const Vec3 ref{top.x - bot.x, top.y - bot.y, top.z - bot.z};
            const double s = vmax(ref);
            EXPECT_LE(std::abs(col.x - ref.x), 1e-10 * s);
            EXPECT_LE(std::abs(col.y - ref.y), 1e-10 * s);
            EXPECT_LE(std::abs(col.z - ref.z), 1e-10 * s);
            EXPECT_EQ(col.z, love_normal_coefficient(kFig5, off, h, p));
        }
    }
}

TEST(Love, CoincidentColumnFinite) {
    ElastomerParams p;
    const auto col = love_influence_column({1e-3, 1e-3}, {0, 0}, p.h_n, p);
    EXPECT_TRUE(std::isfinite(col.x) && std::isfinite(col.y) && std::isfinite(col.z));
    EXPECT_GT(col.z, 0.0);
}

TEST(Love, IncompressibleTangentialColumnIsDepthTermOnly) {
    ElastomerParams p;
    const Vec2 off{2e-3, -1e-3};
    const auto col = love_influence_column(kFig5, off, p.h_n, p);
    const auto surf = love_displacement(1.0, kFig5, {off.x, off.y, 0.0}, p);
    const auto deep = love_displacement(1.0, kFig5, {off.x, off.y, p.h_n}, p);
    EXPECT_EQ(surf.x, 0.0);
    EXPECT_EQ(surf.y, 0.0);
    EXPECT_LE(rel(col.x, -deep.x), 1e-14);
    EXPECT_LE(rel(col.y, -deep.y), 1e-14);
}

TEST(Love, TermSetInvariants) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> r(-1e-2, 1e-2), z(0, 3e-3);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 pt{r(rng), r(rng), i % 5 == 0 ? 0.0 : z(rng)};
        for (int edge : {1, -1}) {
            const auto t = love_terms(kFig5, pt, edge);
            for (int j = 0; j < 2; ++j) {
                EXPECT_GE(t.r_j0[j], t.beta_j0[j]);
                EXPECT_GE(t.beta_j0[j], 0.0);
                EXPECT_GE(t.r_0j[j], t.beta_0j[j]);
                EXPECT_GE(t.beta_0j[j], 0.0);
                EXPECT_LT(std::abs(t.psi_j0[j]), 1.0);
                EXPECT_LT(std::abs(t.psi_0j[j]), 1.0);
            }
        }
    }
    EXPECT_THROW(love_terms(kFig5, {0, 0, 0}, 0), Error);
}

TEST(Love, NoNonFiniteValuesOnSpecialPoints) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ext(0.1e-3, 8e-3);
    for (int i = 0; i < 20000; ++i) {
        ElastomerParams p;
        p.nu = (i % 3 == 0) ? 0.5 : 0.5 * std::abs(u(rng));
        const CellExtent c{ext(rng), ext(rng)};
        double x = 3 * c.a * u(rng), y = 3 * c.b * u(rng);
        switch (i % 6) {
            case 0: x = (u(rng) > 0 ? 1 : -1) * c.a; break;
            case 1: y = (u(rng) > 0 ? 1 : -1) * c.b; break;
            case 2: x = (u(rng) > 0 ? 1 : -1) * c.a; y = (u(rng) > 0 ? 1 : -1) * c.b; break;
            case 3: x = 0; y = 0; break;
            default: break;
        }
        const double z = (i / 6) % 2 ? 0.0 : p.h_n;
        const auto d = love_displacement(1e5, c, {x, y, z}, p);
        ASSERT_TRUE(std::isfinite(d.x) && std::isfinite(d.y) && std::isfinite(d.z)) << x << ' ' << y << ' ' << z;
        const auto col = love_influence_column(c, {x, y}, p.h_n, p);
        ASSERT_TRUE(std::isfinite(col.x) && std::isfinite(col.y) && std::isfinite(col.z));
    }
}

TEST(Love, ShrinkingCellApproachesPointLoadOffOrigin) {
    // Fixed total load; the discrepancy to the B-C resolved profile away
    // from the load shrinks monotonically as the cell halves.
    ElastomerParams p;
    const double F = 0.04;
    double prev = 1e300;
    for (double s : {1.0, 0.5, 0.25, 0.125}) {
        const CellExtent c{0.5e-3 * s, 0.2e-3 * s};
        const double area = 4 * c.a * c.b;
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = 1e-3 + 4e-3 * i / 40.0;
            const double love = F / area * love_normal_coefficient(c, {x, 0}, p.h_n, p);
            const double bc = F * bc_resolved_normal({x, 0}, p.h_n, p.E, area, PsiMode::constant);
            worst = std::max(worst, std::abs(love - bc));
        }
        EXPECT_LT(worst, prev);
        prev = worst;
    }
}

TEST(Love, RejectsBadArguments) {
    ElastomerParams p;
    EXPECT_THROW(love_displacement(1, {0, 1e-3}, {0, 0, 0}, p), Error);
    EXPECT_THROW(love_displacement(1, kFig5, {0, 0, -1e-3}, p), Error);
    EXPECT_THROW(love_influence_column(kFig5, {0, 0}, 0.0, p), Error);
}
