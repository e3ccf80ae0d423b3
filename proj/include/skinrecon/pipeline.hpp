#pragma once

// End-to-end reconstruction: synthetic contacts, readings ingestion,
// inversion (free or non-negative) and resampling onto other grids.

#include <optional>
#include <string>
#include <vector>

#include "skinrecon/influence.hpp"
#include "skinrecon/nnls.hpp"

namespace skinrecon {

enum class IndenterShape { hemisphere, cylinder };

std::string_view shape_name(IndenterShape s) noexcept;
IndenterShape parse_shape(std::string_view s);

struct IndenterSpec {
    IndenterShape shape = IndenterShape::hemisphere;
    double diameter = 12e-3;  ///< m
    Vec2 center;
    double force = 1.0;  ///< N
    double max_force = 3.0;

    void validate() const;
};

/// Pressure per traction cell (Pa). The footprint is the disc of radius d/2:
/// a cylinder loads every covered cell uniformly, a hemisphere with the
/// profile sqrt(1 - (r/R)^2). Cells count as covered when their center lies
/// inside the disc. The field is scaled so that sum p * area = force.
/// Throws invalid-argument when no cell is covered.
FieldVector synth_contact(const IndenterSpec& spec, GridPtr traction);

/// Converts a pressure field to the unknowns of `model`: pressures for Love,
/// nodal forces p * area for B-C.
FieldVector pressure_to_unknowns(const FieldVector& pressure, ModelKind model);

/// Normal displacement field from readings, one reading per cell of `grid`
/// (indexed by taxel_index; the last reading for an index wins). Throws
/// invalid-reading when a cell has no reading or an index is out of range.
FieldVector readings_to_displacements(const std::vector<TaxelReading>& readings, GridPtr grid,
                                      const ElastomerParams& params);

enum class ConstraintMode { free, nonneg };

std::string_view constraint_name(ConstraintMode c) noexcept;
ConstraintMode parse_constraint(std::string_view s);

struct ReconstructOptions {
    ModelKind model = ModelKind::love;
    ConstraintMode constraint = ConstraintMode::free;
    PsiMode psi = PsiMode::constant;
    std::string cache_dir;
    double svd_tolerance = 1e-10;
    NnlsOptions nnls;
    unsigned threads = 0;
};

struct Timings {
    double assembly_ms = 0.0;
    double inversion_ms = 0.0;
    double online_ms = 0.0;
};

struct SolveReport {
    FieldVector tractions;  ///< pressures (Love) or forces (B-C)
    std::optional<FieldVector> reconstructed_displacements;
    double residual_norm = 0.0;
    ConstraintMode constraint = ConstraintMode::free;
    ModelKind model = ModelKind::love;
    PsiMode psi = PsiMode::constant;
    ElastomerParams params;
    Timings timings;
    Eigen::Index rank = 0;
    int nnls_iterations = 0;
    CacheOutcome cache = CacheOutcome::disabled;
};

/// Offline part (assembly, pseudo-inverse) done once in the constructor;
/// solve() is the online part. In free mode solve() is a matrix-vector
/// product and never factorizes.
class Reconstructor {
public:
    Reconstructor(GridPtr traction, GridPtr displacement, const ElastomerParams& params,
                  const ReconstructOptions& opts);

    /// `displacements` must be a normal (1-component) field on the
    /// displacement grid.
    SolveReport solve(const FieldVector& displacements) const;

    const InfluenceMatrix& matrix() const noexcept { return *matrix_; }
    const std::optional<InverseOperator>& inverse() const noexcept { return inverse_; }
    CacheOutcome cache_outcome() const noexcept { return cache_; }
    const std::string& cache_path() const noexcept { return cache_path_; }

private:
    ReconstructOptions opts_;
    std::shared_ptr<const InfluenceMatrix> matrix_;
    std::optional<InverseOperator> inverse_;
    CacheOutcome cache_ = CacheOutcome::disabled;
    std::string cache_path_;
    double assembly_ms_ = 0.0;
};

/// One-shot reconstruction. `traction` defaults to the displacement grid
/// (square problem).
SolveReport reconstruct(const FieldVector& displacements, GridPtr traction, const ElastomerParams& params,
                        const ReconstructOptions& opts);

/// Normal displacements produced by the report's tractions on another grid,
/// using the report's model and psi mode.
FieldVector resample(const SolveReport& report, GridPtr grid, unsigned threads = 0);

/// Normal effective displacements of a known pressure field under Love's model.
FieldVector love_forward(const FieldVector& pressure, GridPtr grid, const ElastomerParams& params,
                         unsigned threads = 0);

}  // namespace skinrecon
