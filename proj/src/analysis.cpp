#include "skinrecon/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "skinrecon/error.hpp"

namespace skinrecon {

ComparisonTable compare_models(double p, CellExtent cell, const ElastomerParams& params, const CompareOptions& opts) {
    require(cell.a > 0.0 && cell.b > 0.0, "cell half-extents must be positive");
    require(opts.samples >= 2 && opts.half_span > 0.0, "comparison needs at least two samples over a positive span");
    params.validate();
    require_incompressible(params.nu);

    ComparisonTable t;
    const double area = 4.0 * cell.a * cell.b;
    t.force = p * area;
    const double h = params.h_n;
    const std::size_t n = opts.samples;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -opts.half_span + 2.0 * opts.half_span * double(i) / double(n - 1);
        const Vec2 d{x, 0.0};
        t.x.push_back(x);
        t.love.push_back(p * love_normal_coefficient(cell, d, h, params));
        t.bc_const.push_back(t.force * bc_resolved_normal(d, h, params.E, area, PsiMode::constant));
        t.bc_exact.push_back(t.force * bc_resolved_normal(d, h, params.E, area, PsiMode::exact));
    }
    // The resolved B-C curve is flat inside the switch radius, so ties go to
    // the sample nearest the load.
    auto peak = [&](const std::vector<double>& v, double& value, double& where) {
        value = *std::max_element(v.begin(), v.end());
        where = opts.half_span;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] == value && std::abs(t.x[i]) < std::abs(where)) where = t.x[i];
    };
    peak(t.love, t.peak_love, t.peak_x_love);
    peak(t.bc_const, t.peak_bc_const, t.peak_x_bc_const);
    peak(t.bc_exact, t.peak_bc_exact, t.peak_x_bc_exact);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(t.x[i]) < opts.exclusion_radius) continue;
        t.max_discrepancy_const = std::max(t.max_discrepancy_const, std::abs(t.love[i] - t.bc_const[i]));
        t.max_discrepancy_exact = std::max(t.max_discrepancy_exact, std::abs(t.love[i] - t.bc_exact[i]));
    }
    return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, "slope fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, "slope fit needs positive data");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= double(x.size());
    my /= double(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    require(sxx > 0.0, "slope fit needs distinct x values");
    return sxy / sxx;
}

double BenchmarkTable::exponent(ModelKind m) const {
    for (const auto& [model, e] : exponents)
        if (model == m) return e;
    fail(ErrorCategory::invalid_argument, "model was not benchmarked");
}

BenchmarkTable benchmark(const ElastomerParams& params, const BenchmarkOptions& opts) {
    require(!opts.models.empty() && !opts.sizes.empty(), "benchmark needs models and sizes");
    require(opts.repetitions >= 1, "benchmark needs at least one repetition");
    require(std::is_sorted(opts.sizes.begin(), opts.sizes.end()), "benchmark sizes must be ascending");
    using clock = std::chrono::steady_clock;

    BenchmarkTable table;
    AssemblyOptions ao;
    ao.psi = opts.psi;
    ao.threads = 1;
    for (const ModelKind model : opts.models) {
        std::vector<double> ns, ts;
        for (const std::size_t n : opts.sizes) {
            const auto side = std::size_t(std::llround(std::sqrt(double(n))));
            if (side * side != n)
                fail(ErrorCategory::invalid_argument, "benchmark size " + std::to_string(n) + " is not a perfect square");
            const double half = opts.spacing * double(side) / 2.0;
            const auto grid = std::make_shared<const Grid>(
                build_regular_grid({-half, -half}, side, side, opts.spacing, opts.spacing));

            BenchmarkRow row{model, n, 0.0, {}};
            for (int r = 0; r < opts.repetitions; ++r) {
                int loops = 0;
                const auto t0 = clock::now();
                double ms = 0.0;
                do {
                    const auto C = assemble(model, grid, grid, params, ao);
                    ++loops;
                    ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                } while (ms < opts.min_sample_ms);
                row.samples_ms.push_back(ms / loops);
            }
            auto s = row.samples_ms;
            std::sort(s.begin(), s.end());
            row.median_ms = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
            ns.push_back(double(n));
            ts.push_back(row.median_ms);
            table.rows.push_back(std::move(row));
        }
        table.exponents.emplace_back(model, ns.size() >= 2 ? loglog_slope(ns, ts) : 0.0);
    }

    auto median_of = [&](ModelKind m, std::size_t n) {
        for (const auto& r : table.rows)
            if (r.model == m && r.size == n) return r.median_ms;
        return -1.0;
    };
    for (const std::size_t n : opts.sizes) {
        const double love = median_of(ModelKind::love, n), bc = median_of(ModelKind::bc, n);
        if (love > 0.0 && bc > 0.0) table.love_bc_ratio.emplace_back(n, love / bc);
    }
    return table;
}

}  // namespace skinrecon
