#pragma once

// Boussinesq-Cerruti concentrated-force solution for an incompressible
// (nu = 0.5) elastic half-space, the effective influence coefficients of a
// layer of thickness h_c, and the approximate solution used where the exact
// coefficients are singular (coincident force and sensing node).

#include <array>
#include <limits>

#include "skinrecon/geometry.hpp"

namespace skinrecon {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(Vec3, Vec3) = default;
};

enum class PsiMode { constant, exact };

/// Marks a coefficient whose exact value is singular.
inline constexpr double kSingular = std::numeric_limits<double>::infinity();

/// 3x3 influence block, block[i][j] = displacement component i per unit
/// force component j (m/N), components ordered x, y, z.
struct BcCoefficientBlock {
    std::array<std::array<double, 3>, 3> block{};
    double operator()(int i, int j) const { return block[i][j]; }
};

/// Point-load displacement at offset r from the load (r.z >= 0 is depth).
/// Throws singular-point when |r| = 0.
Vec3 bc_point_displacement(Vec3 force, Vec3 r, double E);

/// Effective (surface minus depth h_c) coefficients for a node offset
/// (x_kl, y_kl). At zero offset the five singular entries carry kSingular.
BcCoefficientBlock bc_effective_block(Vec2 delta, double h_c, double E);

/// Correction factor of the approximate solution: x^-1 (0.2431 x - 0.1814)
/// in exact mode, 0.25 in constant mode.
double psi(double x, PsiMode mode);

/// Regularization depth sqrt(3 A / (2 pi)) for a loaded area A.
double bc_z0(double cell_area);

/// Approximate displacement below a distributed load F acting over cell_area.
Vec3 bc_approx_displacement(Vec3 force, double cell_area, double h_c, double E, PsiMode mode);

/// Whichever of the two candidates has the smaller magnitude; a kSingular
/// (or NaN) exact entry always loses.
double bc_resolved_coefficient(double exact, double approx);

/// Finite coefficient block: exact entries where they are well defined, the
/// min-|.| rule on the diagonal, and the approximate solution's (zero)
/// cross-coupling where an off-diagonal exact entry is singular.
BcCoefficientBlock bc_resolved_block(Vec2 delta, double h_c, double E, double cell_area, PsiMode mode);

/// The (z,z) entry of bc_resolved_block, without computing the other eight.
double bc_resolved_normal(Vec2 delta, double h_c, double E, double cell_area, PsiMode mode);

/// Radial distance at which the exact normal coefficient drops to the
/// approximate value (where the min-|.| rule switches). Diagnostic only.
double bc_switch_radius(double h_c, double E, double cell_area, PsiMode mode);

/// Throws unsupported-model unless nu == 0.5.
void require_incompressible(double nu);

}  // namespace skinrecon
