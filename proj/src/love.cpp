#include "skinrecon/love.hpp"

#include <cmath>
#include <numbers>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

// A product w * f(.) where f diverges as w -> 0 is taken at its limit, 0,
// once |w| is below this fraction of the problem's length scale.
constexpr double kRemovable = 1e-14;

struct Scale {
    double tiny;
    Scale(CellExtent c, Vec3 pt)
        : tiny(kRemovable * (c.a + c.b + std::abs(pt.x) + std::abs(pt.y) + pt.z)) {}
    bool vanishes(double w) const { return std::abs(w) <= tiny; }
};

// r + t where r^2 = t^2 + q2, without cancellation for t < 0.
double r_plus(double t, double r, double q2) {
    if (t >= 0.0) return r + t;
    const double d = r - t;
    return d > 0.0 ? q2 / d : 0.0;
}

double w_log(const Scale& s, double w, double arg) {
    return s.vanishes(w) ? 0.0 : w * std::log(arg);
}

// w * log((1 + psi) / (1 - psi)) with psi = t / (r + beta), r^2 = t^2 + beta^2.
double w_log_ratio(const Scale& s, double w, double t, double r, double beta) {
    if (s.vanishes(w)) return 0.0;
    const double b2 = beta * beta;
    return w * (std::log(r_plus(t, r, b2) + beta) - std::log(r_plus(-t, r, b2) + beta));
}

// beta + t for beta^2 = t^2 + z^2.
double beta_plus(double t, double beta, double z) { return r_plus(t, beta, z * z); }

struct EdgeTerms {
    double r, beta, psi;
};

EdgeTerms edge_terms(double across, double along, double z) {
    const double beta = std::sqrt(across * across + z * z);
    const double r = std::sqrt(across * across + along * along + z * z);
    const double den = r + beta;
    return {r, beta, den > 0.0 ? along / den : 0.0};
}

// L_j at y' edge: xi = +-a - x (signed), eta = y' - y.
double l_term(const Scale& s, double xi, double eta, double z, const EdgeTerms& e) {
    const double log_part = w_log(s, eta, r_plus(xi, e.r, eta * eta + z * z)) - eta;
    const double ratio_part = w_log_ratio(s, xi, eta, e.r, e.beta);
    const double atan_part = s.vanishes(z) ? 0.0 : 2.0 * z * std::atan2(z * e.psi, beta_plus(xi, e.beta, z));
    return log_part + ratio_part + atan_part;
}

// J_j (and K_j with x and y exchanged): `across` is the signed offset to the
// edge orthogonal to the integration direction, `along` the offset along it.
double j_term(const Scale& s, double across, double along, double z, const EdgeTerms& e) {
    const double log_part = w_log(s, along, z + e.r) - along;
    const double ratio_part = w_log_ratio(s, z, along, e.r, e.beta);
    const double m = std::abs(across);
    const double atan_part = s.vanishes(m) ? 0.0 : 2.0 * m * std::atan2(m * e.psi, z + e.beta);
    return log_part + ratio_part + atan_part;
}

// Pieces of u^z for one y' edge: L_1 - L_2 and the arctangent sum.
struct NormalEdge {
    double l_diff;
    double atan_sum;
};

NormalEdge normal_edge(const Scale& s, CellExtent c, Vec3 pt, int edge) {
    const double eta = edge * c.b - pt.y;
    const double xi1 = c.a - pt.x;
    const double xi2 = -c.a - pt.x;
    const auto e1 = edge_terms(xi1, eta, pt.z);
    const auto e2 = edge_terms(xi2, eta, pt.z);
    NormalEdge out;
    out.l_diff = l_term(s, xi1, eta, pt.z, e1) - l_term(s, xi2, eta, pt.z, e2);
    out.atan_sum = std::atan2(xi1 * eta, pt.z * e1.r) - std::atan2(xi2 * eta, pt.z * e2.r);
    return out;
}

// Bracketed u^z sum per unit pressure, without the (1 + nu) / (2 pi E) factor.
double normal_bracket(CellExtent c, Vec3 pt, double nu) {
    const Scale s(c, pt);
    const auto hi = normal_edge(s, c, pt, +1);
    const auto lo = normal_edge(s, c, pt, -1);
    double v = 2.0 * (1.0 - nu) * (hi.l_diff - lo.l_diff);
    if (!s.vanishes(pt.z)) v += pt.z * (hi.atan_sum - lo.atan_sum);
    return v;
}

double prefactor(const ElastomerParams& p) { return (1.0 + p.nu) / (2.0 * std::numbers::pi * p.E); }

void check_args(CellExtent c, double z) {
    require(c.a > 0.0 && c.b > 0.0, "pressure cell half-extents must be positive");
    require(z >= 0.0, "depth must be non-negative");
}

}  // namespace

LoveTermSet love_terms(CellExtent c, Vec3 pt, int edge) {
    check_args(c, pt.z);
    require(edge == 1 || edge == -1, "edge selector must be +1 or -1");
    const Scale s(c, pt);
    const double z = pt.z;
    const double eta = edge * c.b - pt.y;  // y' - y
    const double xi = edge * c.a - pt.x;   // x' - x
    const std::array<double, 2> xi_j{c.a - pt.x, -c.a - pt.x};
    const std::array<double, 2> eta_j{c.b - pt.y, -c.b - pt.y};

    LoveTermSet t;
    for (int j = 0; j < 2; ++j) {
        const auto ey = edge_terms(xi_j[j], eta, z);
        t.r_j0[j] = ey.r;
        t.beta_j0[j] = ey.beta;
        t.psi_j0[j] = ey.psi;
        t.J[j] = j_term(s, xi_j[j], eta, z, ey);
        t.L[j] = l_term(s, xi_j[j], eta, z, ey);

        const auto ex = edge_terms(eta_j[j], xi, z);
        t.r_0j[j] = ex.r;
        t.beta_0j[j] = ex.beta;
        t.psi_0j[j] = ex.psi;
        t.K[j] = j_term(s, eta_j[j], xi, z, ex);
    }
    if (!s.vanishes(z)) {
        const auto lp = [&](double w, double r, double beta) { return std::log(r_plus(w, r, beta * beta)); };
        t.log_ratio_x = lp(eta, t.r_j0[1], t.beta_j0[1]) - lp(eta, t.r_j0[0], t.beta_j0[0]);
        t.log_ratio_y = lp(xi, t.r_0j[1], t.beta_0j[1]) - lp(xi, t.r_0j[0], t.beta_0j[0]);
    }
    t.atan_sum = normal_edge(s, c, pt, edge).atan_sum;
    return t;
}

Vec3 love_displacement(double p, CellExtent c, Vec3 pt, const ElastomerParams& params) {
    check_args(c, pt.z);
    const Scale s(c, pt);
    const auto hi = love_terms(c, pt, +1);
    const auto lo = love_terms(c, pt, -1);
    const double nu = params.nu;
    const double k = p * prefactor(params);

    double bx = (1.0 - 2.0 * nu) * ((hi.J[1] - hi.J[0]) - (lo.J[1] - lo.J[0]));
    double by = (1.0 - 2.0 * nu) * ((hi.K[1] - hi.K[0]) - (lo.K[1] - lo.K[0]));
    if (!s.vanishes(pt.z)) {
        bx += pt.z * (hi.log_ratio_x - lo.log_ratio_x);
        by += pt.z * (hi.log_ratio_y - lo.log_ratio_y);
    }
    return {-k * bx, -k * by, k * normal_bracket(c, pt, nu)};
}

Vec3 love_influence_column(CellExtent c, Vec2 offset, double h_c, const ElastomerParams& params) {
    require(h_c > 0.0, "compressed thickness must be positive");
    const Vec3 top{offset.x, offset.y, 0.0};
    const Vec3 bottom{offset.x, offset.y, h_c};
    const auto t_hi = love_terms(c, top, +1), t_lo = love_terms(c, top, -1);
    const auto b_hi = love_terms(c, bottom, +1), b_lo = love_terms(c, bottom, -1);
    const double nu = params.nu;
    const double k = prefactor(params);

    const auto jd = [](const LoveTermSet& t) { return t.J[1] - t.J[0]; };
    const auto kd = [](const LoveTermSet& t) { return t.K[1] - t.K[0]; };
    const double cx = (1.0 - 2.0 * nu) * ((jd(t_hi) - jd(b_hi)) - (jd(t_lo) - jd(b_lo))) -
                      h_c * (b_hi.log_ratio_x - b_lo.log_ratio_x);
    const double cy = (1.0 - 2.0 * nu) * ((kd(t_hi) - kd(b_hi)) - (kd(t_lo) - kd(b_lo))) -
                      h_c * (b_hi.log_ratio_y - b_lo.log_ratio_y);
    return {-k * cx, -k * cy, love_normal_coefficient(c, offset, h_c, params)};
}

double love_normal_coefficient(CellExtent c, Vec2 offset, double h_c, const ElastomerParams& params) {
    require(h_c > 0.0, "compressed thickness must be positive");
    return prefactor(params) *
           (normal_bracket(c, {offset.x, offset.y, 0.0}, params.nu) -
            normal_bracket(c, {offset.x, offset.y, h_c}, params.nu));
}

}  // namespace skinrecon
