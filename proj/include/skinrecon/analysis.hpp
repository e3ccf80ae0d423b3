#pragma once

// Model comparison along a line and assembly-time benchmarks.

#include <string>
#include <vector>

#include "skinrecon/influence.hpp"
#include "skinrecon/love.hpp"

namespace skinrecon {

struct CompareOptions {
    double half_span = 5e-3;   ///< samples cover x in [-half_span, half_span], y = 0
    std::size_t samples = 201;  ///< odd counts include x = 0
    /// Samples with |x| below this are left out of the discrepancy figures.
    double exclusion_radius = 0.0;
};

/// Effective normal displacement (surface minus depth h_n) along y = 0 under
/// a pressure p over the cell [-a, a] x [-b, b] for Love, and under the
/// equivalent force p * 2a * 2b at the origin, spread over area 2a * 2b, for
/// B-C with both psi modes.
struct ComparisonTable {
    std::vector<double> x;
    std::vector<double> love;
    std::vector<double> bc_const;
    std::vector<double> bc_exact;
    double force = 0.0;
    double max_discrepancy_const = 0.0;
    double max_discrepancy_exact = 0.0;
    double peak_love = 0.0, peak_bc_const = 0.0, peak_bc_exact = 0.0;
    double peak_x_love = 0.0, peak_x_bc_const = 0.0, peak_x_bc_exact = 0.0;
};

ComparisonTable compare_models(double p, CellExtent cell, const ElastomerParams& params,
                               const CompareOptions& opts = {});

struct BenchmarkOptions {
    std::vector<ModelKind> models{ModelKind::bc, ModelKind::love};
    std::vector<std::size_t> sizes{25, 100, 400, 1600};  ///< cell counts, perfect squares, ascending
    int repetitions = 3;
    double spacing = 2e-3;
    PsiMode psi = PsiMode::constant;
    /// Each timed sample repeats the assembly until at least this long has
    /// elapsed, so tiny grids are not dominated by clock resolution.
    double min_sample_ms = 20.0;
};

struct BenchmarkRow {
    ModelKind model;
    std::size_t size;
    double median_ms;
    std::vector<double> samples_ms;
};

struct BenchmarkTable {
    std::vector<BenchmarkRow> rows;
    /// Log-log least-squares slope of median time against cell count.
    std::vector<std::pair<ModelKind, double>> exponents;
    /// Love / B-C median ratio per size (empty unless both models ran).
    std::vector<std::pair<std::size_t, double>> love_bc_ratio;

    double exponent(ModelKind m) const;
};

/// Serial square same-grid normal-only assembly on a sqrt(n) x sqrt(n)
/// lattice for every (model, size).
BenchmarkTable benchmark(const ElastomerParams& params, const BenchmarkOptions& opts = {});

/// Slope of the least-squares line through (log x, log y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace skinrecon
