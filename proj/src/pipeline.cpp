#include "skinrecon/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string_view shape_name(IndenterShape s) noexcept {
    return s == IndenterShape::hemisphere ? "hemisphere" : "cylinder";
}

IndenterShape parse_shape(std::string_view s) {
    if (s == "hemisphere") return IndenterShape::hemisphere;
    if (s == "cylinder") return IndenterShape::cylinder;
    fail(ErrorCategory::invalid_argument, "unknown indenter shape '" + std::string(s) + "'");
}

void IndenterSpec::validate() const {
    require(diameter > 0.0 && std::isfinite(diameter), "indenter diameter must be positive");
    require(std::isfinite(center.x) && std::isfinite(center.y), "indenter center must be finite");
    require(force > 0.0, "indenter force must be positive");
    if (force > max_force)
        fail(ErrorCategory::invalid_argument, "indenter force exceeds the " + std::to_string(max_force) + " N guard");
}

FieldVector synth_contact(const IndenterSpec& spec, GridPtr traction) {
    spec.validate();
    require(traction != nullptr, "synthetic contact needs a traction grid");
    const Grid& g = *traction;
    const double R = spec.diameter / 2.0;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(Eigen::Index(g.size()));
    double load = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double r = std::hypot(g[k].center.x - spec.center.x, g[k].center.y - spec.center.y);
        if (r >= R) continue;
        const double s = r / R;
        const double v = spec.shape == IndenterShape::cylinder ? 1.0 : std::sqrt(1.0 - s * s);
        p(Eigen::Index(k)) = v;
        load += v * g[k].area();
    }
    if (!(load > 0.0))
        fail(ErrorCategory::invalid_argument, "indenter footprint does not cover any traction cell");
    p *= spec.force / load;
    return make_field(std::move(traction), 1, std::move(p));
}

FieldVector pressure_to_unknowns(const FieldVector& pressure, ModelKind model) {
    pressure.validate();
    require(pressure.components == 1, "pressure field must have one component");
    if (model == ModelKind::love) return pressure;
    FieldVector f = pressure;
    for (std::size_t k = 0; k < f.nodes(); ++k) f.values(Eigen::Index(k)) *= (*f.grid)[k].area();
    return f;
}

FieldVector readings_to_displacements(const std::vector<TaxelReading>& readings, GridPtr grid,
                                      const ElastomerParams& params) {
    require(grid != nullptr, "readings need a taxel grid");
    const std::size_t n = grid->size();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index(n));
    std::vector<bool> seen(n, false);
    for (const auto& r : readings) {
        if (r.taxel_index >= n)
            fail(ErrorCategory::invalid_reading, "reading for taxel " + std::to_string(r.taxel_index) +
                                                     " but the grid has " + std::to_string(n) + " cells");
        d(Eigen::Index(r.taxel_index)) = reading_to_displacement(r, params);
        seen[r.taxel_index] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!seen[k]) fail(ErrorCategory::invalid_reading, "no reading for taxel " + std::to_string(k));
    return make_field(std::move(grid), 1, std::move(d));
}

std::string_view constraint_name(ConstraintMode c) noexcept { return c == ConstraintMode::free ? "free" : "nonneg"; }

ConstraintMode parse_constraint(std::string_view s) {
    if (s == "free") return ConstraintMode::free;
    if (s == "nonneg") return ConstraintMode::nonneg;
    fail(ErrorCategory::invalid_argument, "unknown constraint mode '" + std::string(s) + "' (expected free or nonneg)");
}

Reconstructor::Reconstructor(GridPtr traction, GridPtr displacement, const ElastomerParams& params,
                             const ReconstructOptions& opts)
    : opts_(opts) {
    AssemblyOptions ao;
    ao.normal_only = true;
    ao.psi = opts.psi;
    ao.threads = opts.threads;
    const auto t0 = std::chrono::steady_clock::now();
    auto cached = assemble_cached(opts.cache_dir, opts.model, std::move(traction), std::move(displacement), params, ao);
    matrix_ = std::move(cached.matrix);
    cache_ = cached.outcome;
    cache_path_ = std::move(cached.path);
    assembly_ms_ = elapsed_ms(t0);
    if (opts.constraint == ConstraintMode::free) inverse_ = precompute_inverse(*matrix_, opts.svd_tolerance);
}

SolveReport Reconstructor::solve(const FieldVector& displacements) const {
    displacements.validate();
    const InfluenceMatrix& C = *matrix_;
    require(displacements.components == 1, "reconstruction expects a normal displacement field");
    require(displacements.grid == C.displacement_grid() || *displacements.grid == *C.displacement_grid(),
            "displacement field is not on the reconstruction grid");

    SolveReport rep;
    rep.constraint = opts_.constraint;
    rep.model = opts_.model;
    rep.psi = opts_.psi;
    rep.params = C.params();
    rep.cache = cache_;
    rep.timings.assembly_ms = assembly_ms_;

    const auto t0 = std::chrono::steady_clock::now();
    if (opts_.constraint == ConstraintMode::free) {
        rep.tractions = apply_inverse(*inverse_, displacements);
        rep.rank = inverse_->rank;
        rep.timings.inversion_ms = inverse_->inversion_ms;
    } else {
        const auto r = nnls_solve(C.entries(), displacements.values, opts_.nnls);
        rep.tractions = FieldVector{C.traction_grid(), 1, r.x};
        rep.nnls_iterations = r.iterations;
    }
    auto D = apply_forward(C, rep.tractions);
    rep.timings.online_ms = elapsed_ms(t0);
    rep.residual_norm = (D.values - displacements.values).norm();
    rep.reconstructed_displacements = std::move(D);
    return rep;
}

SolveReport reconstruct(const FieldVector& displacements, GridPtr traction, const ElastomerParams& params,
                        const ReconstructOptions& opts) {
    displacements.validate();
    if (!traction) traction = std::make_shared<const Grid>(displacements.grid->with_kind(GridKind::traction));
    return Reconstructor(std::move(traction), displacements.grid, params, opts).solve(displacements);
}

FieldVector resample(const SolveReport& report, GridPtr grid, unsigned threads) {
    report.tractions.validate();
    require(grid != nullptr, "resampling needs a target grid");
    require(report.tractions.components == 1, "resampling expects normal tractions");
    AssemblyOptions ao;
    ao.normal_only = true;
    ao.psi = report.psi;
    ao.threads = threads;
    const auto C = assemble(report.model, report.tractions.grid, std::move(grid), report.params, ao);
    return apply_forward(C, report.tractions);
}

FieldVector love_forward(const FieldVector& pressure, GridPtr grid, const ElastomerParams& params, unsigned threads) {
    AssemblyOptions ao;
    ao.threads = threads;
    const auto C = assemble(ModelKind::love, pressure.grid, std::move(grid), params, ao);
    return apply_forward(C, pressure);
}

}  // namespace skinrecon
