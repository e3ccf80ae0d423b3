#pragma once

// Influence matrices C (D = C Q) for either elastic model over an arbitrary
// pair of traction and displacement grids, the precomputed pseudo-inverse
// used for online reconstruction, and the on-disk matrix cache.
//
// Layouts. Displacement rows are node-major: row 3k + i is component i of
// node k in the full layout, row k in the normal-only layout. Unknowns are
// forces (N) per traction node for the Boussinesq-Cerruti model (3 per node,
// or 1 when normal-only) and pressures (Pa) per traction cell for Love (one
// per cell in both layouts).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "skinrecon/boussinesq.hpp"
#include "skinrecon/geometry.hpp"
#include "skinrecon/sensor.hpp"

namespace skinrecon {

enum class ModelKind { bc, love };

std::string_view model_name(ModelKind m) noexcept;
ModelKind parse_model(std::string_view s);     // "bc" | "love"
std::string_view psi_name(PsiMode m) noexcept;  // "const" | "exact"
PsiMode parse_psi(std::string_view s);

/// Values bound to a grid, `components` per cell (1 or 3), node-major.
struct FieldVector {
    GridPtr grid;
    int components = 1;
    Eigen::VectorXd values;

    std::size_t nodes() const { return grid ? grid->size() : 0; }
    /// Throws invalid-argument unless values.size() == nodes() * components.
    void validate() const;
};

FieldVector make_field(GridPtr grid, int components, Eigen::VectorXd values);

struct AssemblyOptions {
    bool normal_only = true;
    PsiMode psi = PsiMode::constant;
    /// Worker threads for row-parallel assembly; 0 picks the hardware count.
    unsigned threads = 0;
};

class InfluenceMatrix {
public:
    InfluenceMatrix(Eigen::MatrixXd entries, ModelKind model, bool normal_only, PsiMode psi, GridPtr traction,
                    GridPtr displacement, ElastomerParams params, double assembly_ms = 0.0);

    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    ModelKind model() const noexcept { return model_; }
    bool normal_only() const noexcept { return normal_only_; }
    PsiMode psi() const noexcept { return psi_; }
    const GridPtr& traction_grid() const noexcept { return traction_; }
    const GridPtr& displacement_grid() const noexcept { return displacement_; }
    const ElastomerParams& params() const noexcept { return params_; }
    double assembly_ms() const noexcept { return assembly_ms_; }

    Eigen::Index rows() const noexcept { return entries_.rows(); }
    Eigen::Index cols() const noexcept { return entries_.cols(); }
    /// Components per traction node (3 for full B-C, otherwise 1).
    int traction_components() const noexcept;
    /// Components per displacement node.
    int displacement_components() const noexcept { return normal_only_ ? 1 : 3; }

private:
    Eigen::MatrixXd entries_;
    ModelKind model_;
    bool normal_only_;
    PsiMode psi_;
    GridPtr traction_;
    GridPtr displacement_;
    ElastomerParams params_;
    double assembly_ms_;
};

/// Builds C. The effective displacement uses h_c = params.h_n.
/// Throws unsupported-model for model = bc with nu != 0.5.
InfluenceMatrix assemble(ModelKind model, GridPtr traction, GridPtr displacement, const ElastomerParams& params,
                         const AssemblyOptions& opts = {});

struct InverseOperator {
    Eigen::MatrixXd pinv;
    double svd_tolerance = 1e-10;
    Eigen::Index rank = 0;
    double sigma_max = 0.0;
    double sigma_min_kept = 0.0;
    double inversion_ms = 0.0;
    GridPtr traction;
    int traction_components = 1;
    Eigen::Index source_rows = 0;
};

/// SVD pseudo-inverse; singular values below tol * sigma_max are dropped.
/// Throws numerical-failure if C has non-finite entries or the SVD fails.
InverseOperator precompute_inverse(const Eigen::MatrixXd& C, double tol = 1e-10);
InverseOperator precompute_inverse(const InfluenceMatrix& C, double tol = 1e-10);

/// D = C Q. Throws invalid-argument on a dimension mismatch.
FieldVector apply_forward(const InfluenceMatrix& C, const FieldVector& Q);

/// Q = pinv D. Pure matrix-vector product.
FieldVector apply_inverse(const InverseOperator& op, const FieldVector& D);

/// Number of matrix factorizations performed in this process so far
/// (SVDs and least-squares decompositions). Used to check that the online
/// path never factorizes.
std::uint64_t factorization_count() noexcept;
void note_factorization() noexcept;

// Matrix cache.

/// Identifies a matrix by model, layout, psi mode, grid hashes and params hash.
struct CacheKey {
    ModelKind model = ModelKind::bc;
    bool normal_only = true;
    PsiMode psi = PsiMode::constant;
    std::uint64_t traction_hash = 0;
    std::uint64_t displacement_hash = 0;
    std::uint64_t params_hash = 0;

    std::string file_name() const;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

CacheKey cache_key(ModelKind model, const Grid& traction, const Grid& displacement, const ElastomerParams& params,
                   const AssemblyOptions& opts);

/// Two text header lines followed by the raw doubles (native byte order),
/// row-major.
void save_matrix(const std::string& path, const InfluenceMatrix& C);

/// Reads a cache file and checks it against `expected`. Returns nullopt when
/// the header does not match; throws io-error on a truncated or malformed file.
std::optional<Eigen::MatrixXd> load_matrix(const std::string& path, const CacheKey& expected);

enum class CacheOutcome { disabled, hit, miss, mismatch };

struct CachedAssembly {
    std::shared_ptr<const InfluenceMatrix> matrix;
    CacheOutcome outcome = CacheOutcome::disabled;
    std::string path;
};

/// assemble() through the cache directory (empty = no cache). A stale or
/// corrupt file is reported as `mismatch` and overwritten.
CachedAssembly assemble_cached(const std::string& cache_dir, ModelKind model, GridPtr traction,
                               GridPtr displacement, const ElastomerParams& params, const AssemblyOptions& opts = {});

}  // namespace skinrecon
