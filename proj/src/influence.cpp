#include "skinrecon/influence.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "skinrecon/error.hpp"
#include "skinrecon/love.hpp"
#include "text_util.hpp"

namespace skinrecon {

namespace {

std::atomic<std::uint64_t> g_factorizations{0};

constexpr std::string_view kMatrixMagic = "# skinrecon-matrix v1";

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

// Fills rows [row0, row1) of C. Each row depends only on one displacement
// node, so workers never share output.
using RowFiller = void (*)(Eigen::MatrixXd&, const Grid&, const Grid&, const ElastomerParams&, PsiMode,
                           std::size_t node);

void bc_normal_row(Eigen::MatrixXd& C, const Grid& tract, const Grid& disp, const ElastomerParams& p, PsiMode psi,
                   std::size_t k) {
    const double h = p.h_n;
    for (std::size_t l = 0; l < tract.size(); ++l)
        C(Eigen::Index(k), Eigen::Index(l)) =
            bc_resolved_normal(node_delta(disp, k, tract, l), h, p.E, tract[l].area(), psi);
}

void bc_full_rows(Eigen::MatrixXd& C, const Grid& tract, const Grid& disp, const ElastomerParams& p, PsiMode psi,
                  std::size_t k) {
    for (std::size_t l = 0; l < tract.size(); ++l) {
        const auto b = bc_resolved_block(node_delta(disp, k, tract, l), p.h_n, p.E, tract[l].area(), psi);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) C(Eigen::Index(3 * k + i), Eigen::Index(3 * l + j)) = b(i, j);
    }
}

void love_normal_row(Eigen::MatrixXd& C, const Grid& tract, const Grid& disp, const ElastomerParams& p, PsiMode,
                     std::size_t k) {
    for (std::size_t n = 0; n < tract.size(); ++n) {
        const Cell& c = tract[n];
        C(Eigen::Index(k), Eigen::Index(n)) =
            love_normal_coefficient({c.a, c.b}, node_delta(disp, k, tract, n), p.h_n, p);
    }
}

void love_full_rows(Eigen::MatrixXd& C, const Grid& tract, const Grid& disp, const ElastomerParams& p, PsiMode,
                    std::size_t k) {
    for (std::size_t n = 0; n < tract.size(); ++n) {
        const Cell& c = tract[n];
        const Vec3 col = love_influence_column({c.a, c.b}, node_delta(disp, k, tract, n), p.h_n, p);
        C(Eigen::Index(3 * k), Eigen::Index(n)) = col.x;
        C(Eigen::Index(3 * k + 1), Eigen::Index(n)) = col.y;
        C(Eigen::Index(3 * k + 2), Eigen::Index(n)) = col.z;
    }
}

RowFiller row_filler(ModelKind model, bool normal_only) {
    if (model == ModelKind::bc) return normal_only ? bc_normal_row : bc_full_rows;
    return normal_only ? love_normal_row : love_full_rows;
}

Eigen::Index traction_unknowns(ModelKind model, bool normal_only, const Grid& tract) {
    const auto n = Eigen::Index(tract.size());
    return (model == ModelKind::bc && !normal_only) ? 3 * n : n;
}

}  // namespace

std::string_view model_name(ModelKind m) noexcept { return m == ModelKind::bc ? "bc" : "love"; }

ModelKind parse_model(std::string_view s) {
    if (s == "bc") return ModelKind::bc;
    if (s == "love") return ModelKind::love;
    fail(ErrorCategory::invalid_argument, "unknown model '" + std::string(s) + "' (expected bc or love)");
}

std::string_view psi_name(PsiMode m) noexcept { return m == PsiMode::constant ? "const" : "exact"; }

PsiMode parse_psi(std::string_view s) {
    if (s == "const" || s == "constant") return PsiMode::constant;
    if (s == "exact") return PsiMode::exact;
    fail(ErrorCategory::invalid_argument, "unknown psi mode '" + std::string(s) + "' (expected const or exact)");
}

void FieldVector::validate() const {
    require(grid != nullptr, "field vector has no grid");
    require(components == 1 || components == 3, "field vector must have 1 or 3 components per node");
    if (values.size() != Eigen::Index(grid->size()) * components)
        fail(ErrorCategory::invalid_argument, "field vector has " + std::to_string(values.size()) +
                                                  " values, grid needs " +
                                                  std::to_string(grid->size() * components));
}

FieldVector make_field(GridPtr grid, int components, Eigen::VectorXd values) {
    FieldVector f{std::move(grid), components, std::move(values)};
    f.validate();
    return f;
}

InfluenceMatrix::InfluenceMatrix(Eigen::MatrixXd entries, ModelKind model, bool normal_only, PsiMode psi,
                                 GridPtr traction, GridPtr displacement, ElastomerParams params, double assembly_ms)
    : entries_(std::move(entries)),
      model_(model),
      normal_only_(normal_only),
      psi_(psi),
      traction_(std::move(traction)),
      displacement_(std::move(displacement)),
      params_(params),
      assembly_ms_(assembly_ms) {
    require(traction_ && displacement_, "influence matrix needs both grids");
    const Eigen::Index rows = Eigen::Index(displacement_->size()) * displacement_components();
    const Eigen::Index cols = traction_unknowns(model_, normal_only_, *traction_);
    if (entries_.rows() != rows || entries_.cols() != cols)
        fail(ErrorCategory::invalid_argument, "influence matrix is " + std::to_string(entries_.rows()) + "x" +
                                                  std::to_string(entries_.cols()) + ", grids need " +
                                                  std::to_string(rows) + "x" + std::to_string(cols));
    if (!entries_.allFinite()) fail(ErrorCategory::numerical_failure, "influence matrix has non-finite entries");
}

int InfluenceMatrix::traction_components() const noexcept {
    return (model_ == ModelKind::bc && !normal_only_) ? 3 : 1;
}

InfluenceMatrix assemble(ModelKind model, GridPtr traction, GridPtr displacement, const ElastomerParams& params,
                         const AssemblyOptions& opts) {
    require(traction && displacement, "assembly needs both grids");
    params.validate();
    if (model == ModelKind::bc) require_incompressible(params.nu);
    const auto t0 = std::chrono::steady_clock::now();

    const std::size_t K = displacement->size();
    const Eigen::Index rows = Eigen::Index(K) * (opts.normal_only ? 1 : 3);
    Eigen::MatrixXd C(rows, traction_unknowns(model, opts.normal_only, *traction));
    const RowFiller fill = row_filler(model, opts.normal_only);

    unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::size_t>(workers, K));
    auto run = [&](std::size_t first, std::size_t last) {
        for (std::size_t k = first; k < last; ++k) fill(C, *traction, *displacement, params, opts.psi, k);
    };
    if (workers <= 1) {
        run(0, K);
    } else {
        // Coefficient evaluation does not throw for validated inputs, so the
        // workers need no exception plumbing.
        std::vector<std::jthread> pool;
        const std::size_t chunk = (K + workers - 1) / workers;
        for (std::size_t first = 0; first < K; first += chunk)
            pool.emplace_back(run, first, std::min(K, first + chunk));
    }
    return InfluenceMatrix(std::move(C), model, opts.normal_only, opts.psi, std::move(traction),
                           std::move(displacement), params, elapsed_ms(t0));
}

std::uint64_t factorization_count() noexcept { return g_factorizations.load(); }
void note_factorization() noexcept { ++g_factorizations; }

InverseOperator precompute_inverse(const Eigen::MatrixXd& C, double tol) {
    require(C.rows() > 0 && C.cols() > 0, "cannot invert an empty matrix");
    require(tol >= 0.0 && tol < 1.0, "singular-value cutoff must be in [0, 1)");
    if (!C.allFinite()) fail(ErrorCategory::numerical_failure, "matrix has non-finite entries");
    const auto t0 = std::chrono::steady_clock::now();

    note_factorization();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) fail(ErrorCategory::numerical_failure, "SVD did not converge");
    const Eigen::VectorXd& s = svd.singularValues();

    InverseOperator op;
    op.svd_tolerance = tol;
    op.sigma_max = s.size() ? s(0) : 0.0;
    if (!(op.sigma_max > 0.0)) fail(ErrorCategory::numerical_failure, "matrix is identically zero");
    const double cutoff = tol * op.sigma_max;
    Eigen::VectorXd inv_s = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) {
            inv_s(i) = 1.0 / s(i);
            op.sigma_min_kept = s(i);
            ++op.rank;
        }
    }
    op.pinv = svd.matrixV() * inv_s.asDiagonal() * svd.matrixU().transpose();
    op.source_rows = C.rows();
    op.inversion_ms = elapsed_ms(t0);
    return op;
}

InverseOperator precompute_inverse(const InfluenceMatrix& C, double tol) {
    auto op = precompute_inverse(C.entries(), tol);
    op.traction = C.traction_grid();
    op.traction_components = C.traction_components();
    return op;
}

FieldVector apply_forward(const InfluenceMatrix& C, const FieldVector& Q) {
    Q.validate();
    if (Q.values.size() != C.cols())
        fail(ErrorCategory::invalid_argument, "traction vector has " + std::to_string(Q.values.size()) +
                                                  " entries, matrix has " + std::to_string(C.cols()) + " columns");
    return {C.displacement_grid(), C.displacement_components(), C.entries() * Q.values};
}

FieldVector apply_inverse(const InverseOperator& op, const FieldVector& D) {
    if (D.values.size() != op.pinv.cols())
        fail(ErrorCategory::invalid_argument, "displacement vector has " + std::to_string(D.values.size()) +
                                                  " entries, operator expects " + std::to_string(op.pinv.cols()));
    return {op.traction, op.traction_components, op.pinv * D.values};
}

// Cache.

std::string CacheKey::file_name() const {
    detail::Fnv1a h;
    h.add(traction_hash);
    h.add(displacement_hash);
    h.add(params_hash);
    return std::string(model_name(model)) + (normal_only ? "-normal-" : "-full-") + std::string(psi_name(psi)) +
           "-" + hex(h.value()) + ".mat";
}

CacheKey cache_key(ModelKind model, const Grid& traction, const Grid& displacement, const ElastomerParams& params,
                   const AssemblyOptions& opts) {
    // Psi only enters the B-C coefficients.
    const PsiMode psi = model == ModelKind::bc ? opts.psi : PsiMode::constant;
    return {model, opts.normal_only, psi, traction.hash(), displacement.hash(), params.hash()};
}

namespace {

std::string header_line(const CacheKey& k, Eigen::Index rows, Eigen::Index cols) {
    return "# model=" + std::string(model_name(k.model)) + " normal_only=" + (k.normal_only ? "1" : "0") +
           " psi=" + std::string(psi_name(k.psi)) + " rows=" + std::to_string(rows) + " cols=" + std::to_string(cols) +
           " tract=" + hex(k.traction_hash) + " disp=" + hex(k.displacement_hash) + " params=" + hex(k.params_hash);
}

}  // namespace

void save_matrix(const std::string& path, const InfluenceMatrix& C) {
    const CacheKey key = cache_key(C.model(), *C.traction_grid(), *C.displacement_grid(), C.params(),
                                   {C.normal_only(), C.psi(), 1});
    // Write to a sibling file and rename so readers never see a partial file.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) fail(ErrorCategory::io_error, "cannot write matrix cache '" + tmp + "'");
        os << kMatrixMagic << '\n' << header_line(key, C.rows(), C.cols()) << '\n';
        const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = C.entries();
        os.write(reinterpret_cast<const char*>(rm.data()), std::streamsize(rm.size() * sizeof(double)));
        if (!os) fail(ErrorCategory::io_error, "failed writing matrix cache '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(ErrorCategory::io_error, "cannot move matrix cache into place: " + ec.message());
}

std::optional<Eigen::MatrixXd> load_matrix(const std::string& path, const CacheKey& expected) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorCategory::io_error, "cannot open matrix cache '" + path + "'");
    std::string magic, header;
    if (!std::getline(is, magic) || magic != kMatrixMagic)
        fail(ErrorCategory::io_error, "'" + path + "' is not a matrix cache file");
    if (!std::getline(is, header)) fail(ErrorCategory::io_error, "matrix cache '" + path + "' has no header");
    const auto rows = detail::parse_int<long long>(detail::header_value(header, "rows"), "rows");
    const auto cols = detail::parse_int<long long>(detail::header_value(header, "cols"), "cols");
    if (rows <= 0 || cols <= 0) fail(ErrorCategory::io_error, "matrix cache '" + path + "' has bad dimensions");
    if (header != header_line(expected, rows, cols)) return std::nullopt;

    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(rows, cols);
    is.read(reinterpret_cast<char*>(rm.data()), std::streamsize(rm.size() * sizeof(double)));
    if (is.gcount() != std::streamsize(rm.size() * sizeof(double)) || is.peek() != std::char_traits<char>::eof())
        fail(ErrorCategory::io_error, "matrix cache '" + path + "' has the wrong payload size");
    return Eigen::MatrixXd(rm);
}

CachedAssembly assemble_cached(const std::string& cache_dir, ModelKind model, GridPtr traction,
                               GridPtr displacement, const ElastomerParams& params, const AssemblyOptions& opts) {
    CachedAssembly out;
    if (cache_dir.empty()) {
        out.matrix = std::make_shared<const InfluenceMatrix>(assemble(model, traction, displacement, params, opts));
        return out;
    }
    require(traction && displacement, "assembly needs both grids");
    const CacheKey key = cache_key(model, *traction, *displacement, params, opts);
    const std::filesystem::path path = std::filesystem::path(cache_dir) / key.file_name();
    out.path = path.string();

    if (std::filesystem::exists(path)) {
        std::optional<Eigen::MatrixXd> m;
        try {
            m = load_matrix(out.path, key);
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::io_error) throw;
        }
        if (m) {
            try {
                out.matrix = std::make_shared<const InfluenceMatrix>(std::move(*m), model, opts.normal_only,
                                                                     key.psi, traction, displacement, params, 0.0);
                out.outcome = CacheOutcome::hit;
                return out;
            } catch (const Error&) {
                // Wrong shape or non-finite payload: fall through and rebuild.
            }
        }
        out.outcome = CacheOutcome::mismatch;
    } else {
        out.outcome = CacheOutcome::miss;
    }

    out.matrix = std::make_shared<const InfluenceMatrix>(assemble(model, traction, displacement, params, opts));
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (ec) fail(ErrorCategory::io_error, "cannot create cache directory '" + cache_dir + "': " + ec.message());
    save_matrix(out.path, *out.matrix);
    return out;
}

}  // namespace skinrecon
