#include "skinrecon/love_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 12;

struct Accumulator {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

// int_0^R h(rho) drho, split where the kernel changes scale (rho ~ z).
template <class H>
double radial(H&& h, double R, double z, double tol) {
    if (z > 0.0 && z < R) {
        return Kronrod::integrate(h, 0.0, z, kMaxDepth, tol) + Kronrod::integrate(h, z, R, kMaxDepth, tol);
    }
    return Kronrod::integrate(h, 0.0, R, kMaxDepth, tol);
}

// Signed integral over [0, U] x [0, W] (U, W of any sign) in polar
// coordinates about the origin, where the kernel may be singular.
template <class G>
void polar_corner(G&& g, double U, double W, double z, double weight, double tol, Accumulator& acc) {
    if (U == 0.0 || W == 0.0) return;
    const double su = U < 0.0 ? -1.0 : 1.0, sw = W < 0.0 ? -1.0 : 1.0;
    const double u = std::abs(U), w = std::abs(W);
    const double split = std::atan2(w, u);
    auto ray = [&](double theta, double rho_max) {
        const double c = su * std::cos(theta), s = sw * std::sin(theta);
        return radial([&](double rho) { return rho > 0.0 ? rho * g(rho * c, rho * s) : 0.0; }, rho_max, z, tol);
    };
    const double sign = weight * su * sw;
    double err = 0.0, l1 = 0.0;
    acc.value += sign * Kronrod::integrate([&](double t) { return ray(t, u / std::cos(t)); }, 0.0, split, kMaxDepth,
                                           tol, &err, &l1);
    acc.error += err;
    acc.l1 += l1;
    acc.value += sign * Kronrod::integrate([&](double t) { return ray(t, w / std::sin(t)); }, split,
                                           std::numbers::pi / 2.0, kMaxDepth, tol, &err, &l1);
    acc.error += err;
    acc.l1 += l1;
}

// int int f(xi, eta) over the cell, xi = x' - x and eta = y' - y, as a signed
// combination of four rectangles with a corner at the field point.
template <class F>
QuadratureResult integrate_cell(CellExtent c, Vec3 pt, double rel_tol, F&& f) {
    Accumulator acc;
    const double tol = rel_tol * 1e-2;
    const double xs[2] = {c.a - pt.x, -c.a - pt.x};
    const double ys[2] = {c.b - pt.y, -c.b - pt.y};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            polar_corner(f, xs[i], ys[j], pt.z, (i == j) ? 1.0 : -1.0, tol, acc);
    const double rel = acc.l1 > 0.0 ? acc.error / acc.l1 : 0.0;
    if (!std::isfinite(acc.value) || rel > rel_tol)
        fail(ErrorCategory::oracle_failure,
             "cell quadrature did not converge (achieved relative error " + sci(rel) + ", requested " + sci(rel_tol) + ")");
    return {acc.value, acc.error};
}

}  // namespace

QuadratureResult love_potential_oracle(double p, CellExtent cell, Vec3 pt, Potential which, double rel_tol) {
    require(cell.a > 0.0 && cell.b > 0.0, "pressure cell half-extents must be positive");
    require(pt.z >= 0.0, "depth must be non-negative");
    QuadratureResult r;
    if (which == Potential::V) {
        const double z2 = pt.z * pt.z;
        r = integrate_cell(cell, pt, rel_tol, [z2](double xi, double eta) {
            return 1.0 / std::sqrt(xi * xi + eta * eta + z2);
        });
    } else {
        const double z = std::max(pt.z, 1e-9);
        r = integrate_cell(cell, {pt.x, pt.y, z}, rel_tol, [z](double xi, double eta) {
            return std::log(z + std::sqrt(xi * xi + eta * eta + z * z));
        });
    }
    r.value *= p;
    r.error_estimate *= std::abs(p);
    return r;
}

Vec3 love_displacement_quadrature(double p, CellExtent cell, Vec3 pt, const ElastomerParams& params,
                                  double rel_tol) {
    require(cell.a > 0.0 && cell.b > 0.0, "pressure cell half-extents must be positive");
    require(pt.z >= 0.0, "depth must be non-negative");
    const double nu = params.nu;
    const double z = pt.z;
    const double k = p * (1.0 + nu) / (2.0 * std::numbers::pi * params.E);

    // Field point minus source point is (-xi, -eta, z).
    auto ux = [&](double xi, double eta) {
        const double rho = std::sqrt(xi * xi + eta * eta + z * z);
        return -xi * z / (rho * rho * rho) + (1.0 - 2.0 * nu) * xi / (rho * (rho + z));
    };
    auto uy = [&](double xi, double eta) {
        const double rho = std::sqrt(xi * xi + eta * eta + z * z);
        return -eta * z / (rho * rho * rho) + (1.0 - 2.0 * nu) * eta / (rho * (rho + z));
    };
    auto uz = [&](double xi, double eta) {
        const double rho = std::sqrt(xi * xi + eta * eta + z * z);
        return z * z / (rho * rho * rho) + 2.0 * (1.0 - nu) / rho;
    };

    // The tangential kernels vanish identically on an incompressible surface.
    auto tangential = [&](auto&& f) {
        if (z == 0.0 && nu == 0.5) return 0.0;
        return integrate_cell(cell, pt, rel_tol, f).value;
    };
    return {k * tangential(ux), k * tangential(uy), k * integrate_cell(cell, pt, rel_tol, uz).value};
}

}  // namespace skinrecon
