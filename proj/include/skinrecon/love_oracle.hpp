#pragma once

// Quadrature references for the Love solution. These integrate the potential
// densities and the point-load kernel directly over the cell, so they share
// nothing with the closed forms in love.hpp and serve as their oracle.

#include "skinrecon/love.hpp"

namespace skinrecon {

enum class Potential { chi, V };

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive polar quadrature (centered on the projection of pt) of
/// chi = int p log(z + r) or V = int p / r over the cell. Depth is floored at
/// 1e-9 m for chi. Throws oracle-failure if the estimated relative error
/// exceeds rel_tol.
QuadratureResult love_potential_oracle(double p, CellExtent cell, Vec3 pt, Potential which,
                                       double rel_tol = 1e-9);

/// Displacement obtained by integrating the concentrated-force solution for
/// general nu over the uniformly loaded cell. Same failure contract.
Vec3 love_displacement_quadrature(double p, CellExtent cell, Vec3 pt, const ElastomerParams& params,
                                  double rel_tol = 1e-9);

}  // namespace skinrecon
