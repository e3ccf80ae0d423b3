#include "skinrecon/boussinesq.hpp"

#include <cmath>
#include <numbers>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

constexpr double kPi = std::numbers::pi;

double bc_prefactor(double E) { return 3.0 / (4.0 * kPi * E); }

// Exact effective (z,z) coefficient at planar distance r (r > 0).
double exact_normal(double r2, double h_c, double E) {
    const double rho_h2 = r2 + h_c * h_c;
    return bc_prefactor(E) * (1.0 / std::sqrt(r2) - (r2 + 2.0 * h_c * h_c) / (rho_h2 * std::sqrt(rho_h2)));
}

double approx_normal(double cell_area, double h_c, double E, PsiMode mode) {
    return bc_approx_displacement({0.0, 0.0, 1.0}, cell_area, h_c, E, mode).z;
}

}  // namespace

void require_incompressible(double nu) {
    if (nu != 0.5)
        fail(ErrorCategory::unsupported_model,
             "the Boussinesq-Cerruti model is only available for nu = 0.5 (got " + std::to_string(nu) + ")");
}

Vec3 bc_point_displacement(Vec3 F, Vec3 r, double E) {
    const double rho2 = r.x * r.x + r.y * r.y + r.z * r.z;
    if (rho2 == 0.0) fail(ErrorCategory::singular_point, "point-load displacement is singular at the load point");
    const double rho = std::sqrt(rho2);
    const double inv = 1.0 / rho;
    const double inv3 = inv / rho2;
    const double k = bc_prefactor(E);
    return {
        k * (F.x * (inv + r.x * r.x * inv3) + F.y * r.x * r.y * inv3 + F.z * r.x * r.z * inv3),
        k * (F.x * r.x * r.y * inv3 + F.y * (inv + r.y * r.y * inv3) + F.z * r.y * r.z * inv3),
        k * (F.x * r.x * r.z * inv3 + F.y * r.y * r.z * inv3 + F.z * (inv + r.z * r.z * inv3)),
    };
}

BcCoefficientBlock bc_effective_block(Vec2 d, double h_c, double E) {
    require(h_c > 0.0, "compressed thickness must be positive");
    const double x = d.x, y = d.y, h = h_c;
    const double r2 = x * x + y * y;
    const double rho_h2 = r2 + h * h;
    const double inv_h3 = 1.0 / (rho_h2 * std::sqrt(rho_h2));
    const double k = bc_prefactor(E);

    BcCoefficientBlock c;
    auto& m = c.block;
    // Entries that only involve the depth term are finite everywhere.
    m[0][2] = k * (-x * h * inv_h3);
    m[1][2] = k * (-y * h * inv_h3);
    m[2][0] = k * (-x * h * inv_h3);
    m[2][1] = k * (-y * h * inv_h3);

    if (r2 == 0.0) {
        m[0][0] = m[0][1] = m[1][0] = m[1][1] = m[2][2] = kSingular;
        return c;
    }
    const double r = std::sqrt(r2);
    const double inv_0 = 1.0 / r;
    const double inv_03 = inv_0 / r2;
    m[0][0] = k * ((2 * x * x + y * y) * inv_03 - (2 * x * x + y * y + h * h) * inv_h3);
    m[0][1] = k * (x * y * inv_03 - x * y * inv_h3);
    m[1][0] = m[0][1];
    m[1][1] = k * ((x * x + 2 * y * y) * inv_03 - (x * x + 2 * y * y + h * h) * inv_h3);
    m[2][2] = exact_normal(r2, h, E);
    return c;
}

double psi(double x, PsiMode mode) {
    if (mode == PsiMode::constant) return 0.25;
    if (!(x > 0.0)) fail(ErrorCategory::invalid_argument, "psi(x) needs x > 0 in exact mode");
    return (0.2431 * x - 0.1814) / x;
}

double bc_z0(double cell_area) {
    require(cell_area > 0.0, "loaded area must be positive");
    return std::sqrt(3.0 / (2.0 * kPi) * cell_area);
}

Vec3 bc_approx_displacement(Vec3 F, double cell_area, double h_c, double E, PsiMode mode) {
    const double z0 = bc_z0(cell_area);
    const double s = psi(h_c / z0, mode) / z0;
    const double tangential = 9.0 / (4.0 * kPi * E) * s;
    const double normal = 9.0 / (2.0 * kPi * E) * s;
    return {tangential * F.x, tangential * F.y, normal * F.z};
}

double bc_resolved_coefficient(double exact, double approx) {
    if (!std::isfinite(exact)) return approx;
    return std::abs(exact) <= std::abs(approx) ? exact : approx;
}

BcCoefficientBlock bc_resolved_block(Vec2 delta, double h_c, double E, double cell_area, PsiMode mode) {
    auto c = bc_effective_block(delta, h_c, E);
    const Vec3 diag = bc_approx_displacement({1.0, 1.0, 1.0}, cell_area, h_c, E, mode);
    auto& m = c.block;
    m[0][0] = bc_resolved_coefficient(m[0][0], diag.x);
    m[1][1] = bc_resolved_coefficient(m[1][1], diag.y);
    m[2][2] = bc_resolved_coefficient(m[2][2], diag.z);
    // The approximate solution has no x-y cross coupling.
    if (!std::isfinite(m[0][1])) m[0][1] = 0.0;
    if (!std::isfinite(m[1][0])) m[1][0] = 0.0;
    return c;
}

double bc_resolved_normal(Vec2 d, double h_c, double E, double cell_area, PsiMode mode) {
    const double r2 = d.x * d.x + d.y * d.y;
    const double approx = approx_normal(cell_area, h_c, E, mode);
    if (r2 == 0.0) return approx;
    return bc_resolved_coefficient(exact_normal(r2, h_c, E), approx);
}

double bc_switch_radius(double h_c, double E, double cell_area, PsiMode mode) {
    const double approx = approx_normal(cell_area, h_c, E, mode);
    // exact(r) - approx is +inf at r -> 0 and -approx < 0 for r -> inf.
    double lo = 1e-12 * h_c, hi = h_c;
    while (exact_normal(hi * hi, h_c, E) > approx) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (exact_normal(mid * mid, h_c, E) > approx ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace skinrecon
