#pragma once

// Love's solution: displacements in an elastic half-space under a uniform
// normal pressure p acting on a rectangle [-a, a] x [-b, b] of the surface.
//
// Points are given relative to the cell center; z >= 0 is the depth below
// the loaded surface. The solution is obtained by differentiating the
// logarithmic potential chi = int int p log(z + r) and the Newtonian potential
// V = int int p / r over the cell, both of which have closed forms in terms
// of the auxiliary quantities collected in LoveTermSet.

#include <array>

#include "skinrecon/boussinesq.hpp"
#include "skinrecon/geometry.hpp"
#include "skinrecon/sensor.hpp"

namespace skinrecon {

/// Half-widths of a pressure cell.
struct CellExtent {
    double a = 0.0;
    double b = 0.0;
};

/// Auxiliary terms for one edge evaluation. Index 0 is j = 1 (upper sign,
/// the x' = +a or y' = +b side), index 1 is j = 2 (lower sign).
///
/// J, L, psi_j0, r_j0, beta_j0 are evaluated at the y' edge, K, psi_0j,
/// r_0j, beta_0j at the x' edge.
struct LoveTermSet {
    std::array<double, 2> J{}, K{}, L{};
    std::array<double, 2> psi_j0{}, psi_0j{};
    std::array<double, 2> r_j0{}, r_0j{};
    std::array<double, 2> beta_j0{}, beta_0j{};
    /// log((dy + r_20) / (dy + r_10)) and log((dx + r_02) / (dx + r_01)).
    double log_ratio_x = 0.0;
    double log_ratio_y = 0.0;
    /// atan2((a - x) dy, z r_10) + atan2((a + x) dy, z r_20).
    double atan_sum = 0.0;
};

/// Terms at the edge pair y' = edge * b, x' = edge * a (edge = +1 or -1).
LoveTermSet love_terms(CellExtent cell, Vec3 pt, int edge);

/// Displacement at pt under pressure p. Finite for every z >= 0, including
/// cell edges, corners and the center at the surface.
Vec3 love_displacement(double p, CellExtent cell, Vec3 pt, const ElastomerParams& params);

/// Effective displacement per unit pressure, (c_3k, c_3k+1, c_3k+2): the
/// value at the surface minus the value at depth h_c. `offset` is the
/// displacement node minus the cell center.
Vec3 love_influence_column(CellExtent cell, Vec2 offset, double h_c, const ElastomerParams& params);

/// z component of love_influence_column only.
double love_normal_coefficient(CellExtent cell, Vec2 offset, double h_c, const ElastomerParams& params);

}  // namespace skinrecon
