// skinrecon: command-line front end for contact reconstruction on capacitive
// skin. Run `skinrecon --help` or `skinrecon <subcommand> --help`.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skinrecon/analysis.hpp"
#include "skinrecon/config.hpp"
#include "skinrecon/error.hpp"
#include "skinrecon/field_io.hpp"
#include "skinrecon/fme.hpp"
#include "skinrecon/influence.hpp"
#include "skinrecon/pipeline.hpp"
#include "skinrecon/sensor.hpp"

namespace sr = skinrecon;
using nlohmann::json;

namespace {

// Flags shared by every subcommand. Not all of them apply everywhere; the
// ones that do not are accepted and ignored so scripts can pass a fixed set.
struct Common {
    std::string model = "love";
    std::string constraint = "free";
    std::string psi = "const";
    std::string grid;
    std::string traction_grid;
    std::string params;
    std::string cache_dir;
    std::string out;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--model", c.model, "Elastic model: bc or love")->check(CLI::IsMember({"bc", "love"}));
    app->add_option("--constraint", c.constraint, "Traction constraint: free or nonneg")
        ->check(CLI::IsMember({"free", "nonneg"}));
    app->add_option("--psi", c.psi, "Psi mode for the B-C approximate solution: const or exact")
        ->check(CLI::IsMember({"const", "exact"}));
    app->add_option("--grid", c.grid, "Displacement (taxel) grid file");
    app->add_option("--traction-grid", c.traction_grid, "Traction grid file (default: same as --grid)");
    app->add_option("--params", c.params, "JSON parameter file");
    app->add_option("--cache-dir", c.cache_dir, "Directory for cached influence matrices");
    app->add_option("--out", c.out, "Output file");
    app->add_option("--seed", c.seed, "Seed for randomized inputs");
    app->add_option("--threads", c.threads, "Assembly threads (0 = all cores)");
}

struct Setup {
    sr::ElastomerParams params;
    sr::GridPtr displacement;
    sr::GridPtr traction;
};

// Resolves parameters and grids: explicit grid files win over grid specs in
// the params file.
Setup setup(const Common& c, bool need_grid) {
    Setup s;
    sr::ParamsFile pf;
    if (!c.params.empty()) pf = sr::load_params_file(c.params);
    s.params = pf.params;
    if (!c.grid.empty())
        s.displacement = std::make_shared<const sr::Grid>(sr::load_grid(c.grid).with_kind(sr::GridKind::displacement));
    else if (pf.displacement_grid)
        s.displacement = std::make_shared<const sr::Grid>(pf.displacement_grid->build(sr::GridKind::displacement));
    if (!c.traction_grid.empty())
        s.traction = std::make_shared<const sr::Grid>(sr::load_grid(c.traction_grid).with_kind(sr::GridKind::traction));
    else if (pf.traction_grid)
        s.traction = std::make_shared<const sr::Grid>(pf.traction_grid->build(sr::GridKind::traction));
    else if (s.displacement)
        s.traction = std::make_shared<const sr::Grid>(s.displacement->with_kind(sr::GridKind::traction));
    if (need_grid && !s.displacement)
        sr::fail(sr::ErrorCategory::invalid_argument, "no grid given (use --grid or a grid in --params)");
    return s;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string cache_outcome_name(sr::CacheOutcome o) {
    switch (o) {
        case sr::CacheOutcome::disabled: return "disabled";
        case sr::CacheOutcome::hit: return "hit";
        case sr::CacheOutcome::miss: return "miss";
        case sr::CacheOutcome::mismatch: return "mismatch";
    }
    return "unknown";
}

// --- grid -----------------------------------------------------------------

struct GridCmd {
    std::vector<double> origin{0.0, 0.0};
    std::size_t nx = 10, ny = 10;
    double dx = 2e-3, dy = 2e-3;
    bool centered = false;
    std::string kind = "displacement";
};

int run_grid(const Common& c, const GridCmd& g) {
    sr::require(!c.out.empty(), "grid needs --out");
    sr::Vec2 origin{g.origin[0], g.origin[1]};
    if (g.centered) origin = {-g.dx * double(g.nx) / 2.0, -g.dy * double(g.ny) / 2.0};
    const auto kind = g.kind == "traction" ? sr::GridKind::traction : sr::GridKind::displacement;
    const auto grid = sr::build_regular_grid(origin, g.nx, g.ny, g.dx, g.dy, kind);
    sr::save_grid(c.out, grid);
    emit({{"cells", grid.size()}, {"hash", hex(grid.hash())}, {"out", c.out}});
    return 0;
}

// --- assemble -------------------------------------------------------------

int run_assemble(const Common& c, bool full) {
    const auto s = setup(c, true);
    sr::AssemblyOptions ao;
    ao.normal_only = !full;
    ao.psi = sr::parse_psi(c.psi);
    ao.threads = c.threads;
    const auto model = sr::parse_model(c.model);
    const auto cached = sr::assemble_cached(c.cache_dir, model, s.traction, s.displacement, s.params, ao);
    if (cached.outcome == sr::CacheOutcome::mismatch)
        std::cerr << "warning: stale matrix cache at " << cached.path << ", re-assembled\n";
    if (!c.out.empty()) sr::save_matrix(c.out, *cached.matrix);
    const auto& C = *cached.matrix;
    emit({{"model", sr::model_name(model)},
          {"normal_only", !full},
          {"rows", C.rows()},
          {"cols", C.cols()},
          {"assembly_ms", C.assembly_ms()},
          {"cache", cache_outcome_name(cached.outcome)},
          {"cache_path", cached.path},
          {"out", c.out}});
    return 0;
}

// --- reconstruct ----------------------------------------------------------

struct ReconCmd {
    std::string readings;
    std::string displacements;
    std::string out_displacements;
    bool tolerant = false;
    double svd_tol = 1e-10;
};

json report_json(const sr::SolveReport& r) {
    return {{"model", sr::model_name(r.model)},
            {"constraint", sr::constraint_name(r.constraint)},
            {"psi", sr::psi_name(r.psi)},
            {"residual_norm", r.residual_norm},
            {"rank", r.rank},
            {"nnls_iterations", r.nnls_iterations},
            {"cache", cache_outcome_name(r.cache)},
            {"timings_ms",
             {{"assembly", r.timings.assembly_ms}, {"inversion", r.timings.inversion_ms}, {"online", r.timings.online_ms}}},
            {"max_traction", r.tractions.values.maxCoeff()},
            {"min_traction", r.tractions.values.minCoeff()}};
}

int run_reconstruct(const Common& c, const ReconCmd& rc) {
    const auto s = setup(c, true);
    sr::require(rc.readings.empty() != rc.displacements.empty(), "give exactly one of --readings or --displacements");
    sr::FieldVector D;
    if (!rc.readings.empty()) {
        const auto policy = rc.tolerant ? sr::NegativePolicy::tolerant : sr::NegativePolicy::strict;
        D = sr::readings_to_displacements(sr::load_readings(rc.readings, policy), s.displacement, s.params);
    } else {
        D = sr::load_field(rc.displacements, s.displacement);
    }
    sr::ReconstructOptions ro;
    ro.model = sr::parse_model(c.model);
    ro.constraint = sr::parse_constraint(c.constraint);
    ro.psi = sr::parse_psi(c.psi);
    ro.cache_dir = c.cache_dir;
    ro.svd_tolerance = rc.svd_tol;
    ro.threads = c.threads;
    const sr::Reconstructor rec(s.traction, s.displacement, s.params, ro);
    if (rec.cache_outcome() == sr::CacheOutcome::mismatch)
        std::cerr << "warning: stale matrix cache at " << rec.cache_path() << ", re-assembled\n";
    const auto rep = rec.solve(D);
    if (!c.out.empty())
        sr::save_field(c.out, rep.tractions, ro.model == sr::ModelKind::bc ? "force_N" : "pressure_Pa");
    if (!rc.out_displacements.empty()) sr::save_field(rc.out_displacements, *rep.reconstructed_displacements, "uz_m");
    emit(report_json(rep));
    return 0;
}

// --- resample -------------------------------------------------------------

struct ResampleCmd {
    std::string tractions;
};

int run_resample(const Common& c, const ResampleCmd& rc) {
    const auto s = setup(c, true);
    sr::require(!rc.tractions.empty(), "resample needs --tractions");
    sr::require(!c.out.empty(), "resample needs --out");
    sr::require(!c.traction_grid.empty() || s.traction != nullptr, "resample needs --traction-grid");
    sr::SolveReport rep;
    rep.model = sr::parse_model(c.model);
    rep.psi = sr::parse_psi(c.psi);
    rep.params = s.params;
    rep.tractions = sr::load_field(rc.tractions, s.traction);
    const auto D = sr::resample(rep, s.displacement, c.threads);
    sr::save_field(c.out, D, "uz_m");
    emit({{"cells", D.nodes()}, {"max_uz", D.values.maxCoeff()}, {"out", c.out}});
    return 0;
}

// --- compare --------------------------------------------------------------

struct CompareCmd {
    double pressure = 1e5;
    double width = 1e-3;
    double height = 0.4e-3;
    sr::CompareOptions opts;
};

int run_compare(const Common& c, const CompareCmd& cc) {
    const auto s = setup(c, false);
    const auto t = sr::compare_models(cc.pressure, {cc.width / 2.0, cc.height / 2.0}, s.params, cc.opts);
    if (!c.out.empty()) {
        std::ofstream os(c.out);
        if (!os) sr::fail(sr::ErrorCategory::io_error, "cannot open '" + c.out + "' for writing");
        os << "# x_m love_uz_m bc_const_uz_m bc_exact_uz_m\n";
        os.precision(17);
        for (std::size_t i = 0; i < t.x.size(); ++i)
            os << t.x[i] << ' ' << t.love[i] << ' ' << t.bc_const[i] << ' ' << t.bc_exact[i] << '\n';
    }
    emit({{"force_N", t.force},
          {"peak_love", t.peak_love},
          {"peak_x_love", t.peak_x_love},
          {"peak_bc_const", t.peak_bc_const},
          {"peak_x_bc_const", t.peak_x_bc_const},
          {"peak_bc_exact", t.peak_bc_exact},
          {"peak_x_bc_exact", t.peak_x_bc_exact},
          {"max_discrepancy_const", t.max_discrepancy_const},
          {"max_discrepancy_exact", t.max_discrepancy_exact},
          {"out", c.out}});
    return 0;
}

// --- fme-demo -------------------------------------------------------------

struct FmeCmd {
    std::size_t vars = 4;
    std::size_t rows = 12;
    bool rational = false;
    std::size_t bound_n = 100;
    std::size_t bound_p = 100;
};

int run_fme(const Common& c, const FmeCmd& f) {
    sr::require(f.vars >= 1 && f.rows >= 1, "fme-demo needs at least one variable and one row");
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> coef(-9, 9);
    sr::InequalitySystem<double> sys;
    sys.variables = f.vars;
    for (std::size_t i = 0; i < f.rows; ++i) {
        sr::Inequality<double> r;
        for (std::size_t j = 0; j < f.vars; ++j) r.a.push_back(coef(rng));
        r.b = coef(rng);
        sys.rows.push_back(std::move(r));
    }
    const auto trace = f.rational ? sr::fme_feasibility(sr::to_rational(sys)) : sr::fme_feasibility(sys);

    json steps = json::array();
    std::size_t n = f.rows;
    for (std::size_t p = 0; p < trace.row_counts.size(); ++p) {
        const auto bound = sr::fme_worst_case_count(n, p);
        steps.push_back({{"step", p}, {"rows", trace.row_counts[p]}, {"worst_case", bound.str()}});
    }
    const sr::BigInt big = boost::multiprecision::numerator(sr::fme_worst_case_count(f.bound_n, f.bound_p)) /
                           boost::multiprecision::denominator(sr::fme_worst_case_count(f.bound_n, f.bound_p));
    emit({{"variables", f.vars},
          {"rows", f.rows},
          {"arithmetic", f.rational ? "rational" : "double"},
          {"feasible", trace.feasible},
          {"steps", steps},
          {"bound", {{"n", f.bound_n}, {"p", f.bound_p}, {"digits", sr::decimal_digits(big)},
                     {"leading", sr::leading_digits(big, 6)}}}});
    return 0;
}

// --- benchmark ------------------------------------------------------------

struct BenchCmd {
    std::vector<std::string> models{"bc", "love"};
    std::vector<std::size_t> sizes{25, 100, 400, 1600};
    int reps = 3;
};

int run_benchmark(const Common& c, const BenchCmd& b) {
    const auto s = setup(c, false);
    sr::BenchmarkOptions bo;
    bo.models.clear();
    for (const auto& m : b.models) bo.models.push_back(sr::parse_model(m));
    bo.sizes = b.sizes;
    bo.repetitions = b.reps;
    bo.psi = sr::parse_psi(c.psi);
    const auto t = sr::benchmark(s.params, bo);
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"model", sr::model_name(r.model)}, {"n", r.size}, {"median_ms", r.median_ms},
                        {"samples_ms", r.samples_ms}});
    json exps = json::object();
    for (const auto& [m, e] : t.exponents) exps[std::string(sr::model_name(m))] = e;
    json ratio = json::array();
    for (const auto& [n, r] : t.love_bc_ratio) ratio.push_back({{"n", n}, {"love_over_bc", r}});
    const json out{{"rows", rows}, {"exponents", exps}, {"love_bc_ratio", ratio}};
    if (!c.out.empty()) {
        std::ofstream os(c.out);
        if (!os) sr::fail(sr::ErrorCategory::io_error, "cannot open '" + c.out + "' for writing");
        os << out.dump(2) << '\n';
    }
    emit(out);
    return 0;
}

// --- synth ----------------------------------------------------------------

struct SynthCmd {
    std::string shape = "hemisphere";
    double diameter = 12e-3;
    std::vector<double> center{0.0, 0.0};
    double force = 1.0;
    double noise = 0.0;
    std::string out_pressure;
    std::string out_readings;
};

int run_synth(const Common& c, const SynthCmd& sc) {
    const auto s = setup(c, true);
    sr::IndenterSpec spec;
    spec.shape = sr::parse_shape(sc.shape);
    spec.diameter = sc.diameter;
    spec.center = {sc.center[0], sc.center[1]};
    spec.force = sc.force;
    const auto P = sr::synth_contact(spec, s.traction);
    auto D = sr::love_forward(P, s.displacement, s.params, c.threads);
    if (sc.noise > 0.0) {
        std::mt19937_64 rng(c.seed);
        std::normal_distribution<double> n(0.0, sc.noise);
        for (Eigen::Index i = 0; i < D.values.size(); ++i) D.values(i) += n(rng);
    }
    if (!sc.out_pressure.empty()) sr::save_field(sc.out_pressure, P, "pressure_Pa");
    if (!c.out.empty()) sr::save_field(c.out, D, "uz_m");
    if (!sc.out_readings.empty()) {
        std::vector<sr::TaxelReading> readings;
        for (std::size_t k = 0; k < D.nodes(); ++k) {
            const double uz = std::max(0.0, D.values(Eigen::Index(k)));
            readings.push_back({k, sr::capacitance_change(s.params.h_n - uz, s.params), std::nullopt});
        }
        std::ofstream os(sc.out_readings);
        if (!os) sr::fail(sr::ErrorCategory::io_error, "cannot open '" + sc.out_readings + "' for writing");
        sr::write_readings(os, readings);
    }
    emit({{"shape", sc.shape},
          {"force_N", sc.force},
          {"max_pressure_Pa", P.values.maxCoeff()},
          {"max_uz_m", D.values.maxCoeff()},
          {"out", c.out}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contact pressure reconstruction for capacitive robot skin"};
    app.require_subcommand(1);

    std::map<std::string, Common> common;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, common[name]);
        return s;
    };

    GridCmd grid_cmd;
    auto* grid = sub("grid", "Write a regular grid file");
    grid->add_option("--origin", grid_cmd.origin, "Lower-left corner x y (m)")->expected(2);
    grid->add_option("--nx", grid_cmd.nx, "Cells along x");
    grid->add_option("--ny", grid_cmd.ny, "Cells along y");
    grid->add_option("--dx", grid_cmd.dx, "Spacing along x (m)");
    grid->add_option("--dy", grid_cmd.dy, "Spacing along y (m)");
    grid->add_flag("--centered", grid_cmd.centered, "Center the grid on the origin");
    grid->add_option("--kind", grid_cmd.kind, "traction or displacement")
        ->check(CLI::IsMember({"traction", "displacement"}));

    bool full = false;
    auto* assemble = sub("assemble", "Assemble (or load from cache) an influence matrix");
    assemble->add_flag("--full", full, "Full 3-component layout instead of normal-only");

    ReconCmd recon_cmd;
    auto* reconstruct = sub("reconstruct", "Reconstruct tractions from readings or displacements");
    reconstruct->add_option("--readings", recon_cmd.readings, "Readings file (idx,dC[,t])");
    reconstruct->add_option("--displacements", recon_cmd.displacements, "Normal displacement field file");
    reconstruct->add_option("--out-displacements", recon_cmd.out_displacements,
                            "Write the displacements reproduced by the tractions");
    reconstruct->add_flag("--tolerant", recon_cmd.tolerant, "Clamp negative readings to zero instead of failing");
    reconstruct->add_option("--svd-tol", recon_cmd.svd_tol, "Relative singular-value cutoff");

    ResampleCmd resample_cmd;
    auto* resample = sub("resample", "Displacements of a traction field on another grid");
    resample->add_option("--tractions", resample_cmd.tractions, "Traction field on --traction-grid")->required();

    CompareCmd compare_cmd;
    auto* compare = sub("compare", "Love vs B-C normal displacement along y = 0");
    compare->add_option("--pressure", compare_cmd.pressure, "Uniform pressure (Pa)");
    compare->add_option("--width", compare_cmd.width, "Cell size along x, 2a (m)");
    compare->add_option("--height", compare_cmd.height, "Cell size along y, 2b (m)");
    compare->add_option("--span", compare_cmd.opts.half_span, "Half-length of the sample line (m)");
    compare->add_option("--samples", compare_cmd.opts.samples, "Number of samples");
    compare->add_option("--exclude", compare_cmd.opts.exclusion_radius,
                        "Leave |x| below this out of the discrepancy (m)");

    FmeCmd fme_cmd;
    auto* fme = sub("fme-demo", "Fourier-Motzkin row growth on a random system");
    fme->add_option("--vars", fme_cmd.vars, "Variables");
    fme->add_option("--rows", fme_cmd.rows, "Inequalities");
    fme->add_flag("--rational", fme_cmd.rational, "Exact rational arithmetic");
    fme->add_option("--bound-n", fme_cmd.bound_n, "n for the reported worst-case bound");
    fme->add_option("--bound-p", fme_cmd.bound_p, "p for the reported worst-case bound");

    BenchCmd bench_cmd;
    auto* bench = sub("benchmark", "Time influence-matrix assembly against grid size");
    bench->add_option("--models", bench_cmd.models, "Models to time")
        ->delimiter(',')
        ->check(CLI::IsMember({"bc", "love"}));
    bench->add_option("--sizes", bench_cmd.sizes, "Cell counts (perfect squares, ascending)")->delimiter(',');
    bench->add_option("--reps", bench_cmd.reps, "Repetitions per size");

    SynthCmd synth_cmd;
    auto* synth = sub("synth", "Synthetic indenter contact and its Love displacements");
    synth->add_option("--shape", synth_cmd.shape, "hemisphere or cylinder")
        ->check(CLI::IsMember({"hemisphere", "cylinder"}));
    synth->add_option("--diameter", synth_cmd.diameter, "Indenter diameter (m)");
    synth->add_option("--center", synth_cmd.center, "Indenter center x y (m)")->expected(2);
    synth->add_option("--force", synth_cmd.force, "Total normal force (N)");
    synth->add_option("--noise", synth_cmd.noise, "Gaussian displacement noise sigma (m), seeded by --seed");
    synth->add_option("--out-pressure", synth_cmd.out_pressure, "Write the pressure field");
    synth->add_option("--out-readings", synth_cmd.out_readings,
                      "Write capacitance readings, negative displacements clamped to zero "
                      "(needs eps_r and taxel_area in --params)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (grid->parsed()) return run_grid(common["grid"], grid_cmd);
        if (assemble->parsed()) return run_assemble(common["assemble"], full);
        if (reconstruct->parsed()) return run_reconstruct(common["reconstruct"], recon_cmd);
        if (resample->parsed()) return run_resample(common["resample"], resample_cmd);
        if (compare->parsed()) return run_compare(common["compare"], compare_cmd);
        if (fme->parsed()) return run_fme(common["fme-demo"], fme_cmd);
        if (bench->parsed()) return run_benchmark(common["benchmark"], bench_cmd);
        if (synth->parsed()) return run_synth(common["synth"], synth_cmd);
    } catch (const sr::Error& e) {
        std::cerr << "error[" << sr::category_name(e.category()) << "]: " << e.what() << '\n';
        return sr::exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
