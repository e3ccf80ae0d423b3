#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "skinrecon/love_oracle.hpp"

namespace oracle {

using HP = boost::multiprecision::cpp_bin_float_50;
using skinrecon::Vec2;
using skinrecon::Vec3;

namespace {

std::array<HP, 3> point_hp(const std::array<HP, 3>& F, const std::array<HP, 3>& r, const HP& E) {
    const HP rho = sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const HP k = HP(3) / (HP(4) * boost::math::constants::pi<HP>() * E);
    // u_i = k sum_j F_j (delta_ij / rho + r_i r_j / rho^3)
    std::array<HP, 3> u{};
    for (int i = 0; i < 3; ++i) {
        HP s = 0;
        for (int j = 0; j < 3; ++j) s += F[j] * ((i == j ? HP(1) / rho : HP(0)) + r[i] * r[j] / (rho * rho * rho));
        u[i] = k * s;
    }
    return u;
}

}  // namespace

Vec3 point_displacement_hp(Vec3 F, Vec3 r, double E) {
    const auto u = point_hp({HP(F.x), HP(F.y), HP(F.z)}, {HP(r.x), HP(r.y), HP(r.z)}, HP(E));
    return {static_cast<double>(u[0]), static_cast<double>(u[1]), static_cast<double>(u[2])};
}

std::array<std::array<double, 3>, 3> effective_block_hp(Vec2 d, double h, double E) {
    std::array<std::array<double, 3>, 3> out{};
    for (int j = 0; j < 3; ++j) {
        std::array<HP, 3> F{HP(0), HP(0), HP(0)};
        F[j] = 1;
        // The field point is the displacement node; the force sits at depth 0.
        const auto top = point_hp(F, {HP(d.x), HP(d.y), HP(0)}, HP(E));
        const auto bottom = point_hp(F, {HP(d.x), HP(d.y), HP(h)}, HP(E));
        for (int i = 0; i < 3; ++i) out[i][j] = static_cast<double>(top[i] - bottom[i]);
    }
    return out;
}

double approx_normal_hp(double Fz, double area, double h, double E, bool exact_psi) {
    const HP pi = boost::math::constants::pi<HP>();
    const HP z0 = sqrt(HP(3) * HP(area) / (HP(2) * pi));
    const HP x = HP(h) / z0;
    const HP psi = exact_psi ? (HP("0.2431") * x - HP("0.1814")) / x : HP("0.25");
    return static_cast<double>(HP(9) / (HP(2) * pi * HP(E)) * HP(Fz) / z0 * psi);
}

double thickness_bisection(double delta_c, double k, double h_n) {
    auto residual = [&](double h) { return k * (h_n - h) / (h * h_n) - delta_c; };
    double lo = h_n * 1e-300, hi = h_n;
    if (residual(hi) >= 0.0) return hi;
    for (int i = 0; i < 2000 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Vec3 love_from_potentials(double p, skinrecon::CellExtent cell, Vec3 pt, const skinrecon::ElastomerParams& params,
                          double step) {
    using skinrecon::Potential;
    auto pot = [&](Potential w, double x, double y, double z) {
        return skinrecon::love_potential_oracle(p, cell, {x, y, z}, w, 1e-10).value;
    };
    auto d = [&](Potential w, int axis) {
        Vec3 a = pt, b = pt;
        (axis == 0 ? a.x : axis == 1 ? a.y : a.z) += step;
        (axis == 0 ? b.x : axis == 1 ? b.y : b.z) -= step;
        return (pot(w, a.x, a.y, a.z) - pot(w, b.x, b.y, b.z)) / (2.0 * step);
    };
    const double nu = params.nu;
    const double k = (1.0 + nu) / (2.0 * boost::math::constants::pi<double>() * params.E);
    const double z = pt.z;
    Vec3 u;
    u.x = -k * ((1.0 - 2.0 * nu) * d(Potential::chi, 0) + z * d(Potential::V, 0));
    u.y = -k * ((1.0 - 2.0 * nu) * d(Potential::chi, 1) + z * d(Potential::V, 1));
    u.z = k * (2.0 * (1.0 - nu) * pot(Potential::V, pt.x, pt.y, z) - z * d(Potential::V, 2));
    return u;
}

Eigen::VectorXd nnls_brute_force(const Eigen::MatrixXd& C, const Eigen::VectorXd& d) {
    const int n = int(C.cols());
    Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
    double best_res = d.squaredNorm();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        Eigen::MatrixXd Cs(C.rows(), Eigen::Index(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) Cs.col(Eigen::Index(j)) = C.col(idx[j]);
        const Eigen::VectorXd xs = Cs.colPivHouseholderQr().solve(d);
        if (xs.minCoeff() < 0.0) continue;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (std::size_t j = 0; j < idx.size(); ++j) x(idx[j]) = xs(Eigen::Index(j));
        const double res = (C * x - d).squaredNorm();
        if (res < best_res) {
            best_res = res;
            best = x;
        }
    }
    return best;
}

bool grid_feasible(const skinrecon::InequalitySystem<double>& sys, double shift) {
    // Scaled lattice X = 100 x, so each row reads a . X >= c. For each X the
    // rows are swept over the whole Y line at once: Z must lie in
    // [ceil(max lower), floor(min upper)], and ceil/floor commute with max/min.
    struct Row {
        double ax, ay, az, c;
    };
    std::vector<Row> zrows, flat;
    for (const auto& r : sys.rows) {
        const double norm = std::sqrt(r.a[0] * r.a[0] + r.a[1] * r.a[1] + r.a[2] * r.a[2]);
        const Row q{r.a[0], r.a[1], r.a[2], 100.0 * (r.b + shift * norm)};
        (q.az != 0.0 ? zrows : flat).push_back(q);
    }
    constexpr int N = 1000;
    constexpr int M = 2 * N + 1;
    std::vector<double> ys(M), lo(M), hi(M), slack(M);
    for (int i = 0; i < M; ++i) ys[std::size_t(i)] = i - N;
    for (int X = -N; X <= N; ++X) {
        std::fill(lo.begin(), lo.end(), double(-N));
        std::fill(hi.begin(), hi.end(), double(N));
        std::fill(slack.begin(), slack.end(), 0.0);
        for (const auto& r : flat) {
            const double base = r.ax * X - r.c;
            for (int i = 0; i < M; ++i) slack[std::size_t(i)] = std::min(slack[std::size_t(i)], base + r.ay * ys[std::size_t(i)]);
        }
        for (const auto& r : zrows) {
            const double inv = 1.0 / r.az, base = (r.c - r.ax * X) * inv, step = -r.ay * inv;
            if (r.az > 0.0)
                for (int i = 0; i < M; ++i) lo[std::size_t(i)] = std::max(lo[std::size_t(i)], base + step * ys[std::size_t(i)]);
            else
                for (int i = 0; i < M; ++i) hi[std::size_t(i)] = std::min(hi[std::size_t(i)], base + step * ys[std::size_t(i)]);
        }
        for (int i = 0; i < M; ++i)
            if (slack[std::size_t(i)] >= 0.0 && std::ceil(lo[std::size_t(i)]) <= std::floor(hi[std::size_t(i)])) return true;
    }
    return false;
}

std::optional<bool> grid_feasibility_verdict(const skinrecon::InequalitySystem<double>& sys, double margin) {
    if (grid_feasible(sys, margin)) return true;
    if (!grid_feasible(sys, -margin)) return false;
    return std::nullopt;
}

skinrecon::InequalitySystem<double> random_box_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), bound(-10, 30), count(3, 6);
    skinrecon::InequalitySystem<double> s;
    s.variables = 3;
    for (int i = 0; i < 3; ++i) {
        skinrecon::Inequality<double> lo{{0, 0, 0}, -10}, hi{{0, 0, 0}, -10};
        lo.a[std::size_t(i)] = 1;
        hi.a[std::size_t(i)] = -1;
        s.rows.push_back(lo);
        s.rows.push_back(hi);
    }
    const int extra = count(rng);
    for (int k = 0; k < extra; ++k) {
        skinrecon::Inequality<double> r;
        do {
            r.a = {double(coef(rng)), double(coef(rng)), double(coef(rng))};
        } while (r.a[0] == 0 && r.a[1] == 0 && r.a[2] == 0);
        r.b = bound(rng);
        s.rows.push_back(r);
    }
    return s;
}

}  // namespace oracle
