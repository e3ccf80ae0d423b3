#include "skinrecon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "skinrecon/error.hpp"
#include "text_util.hpp"

namespace skinrecon {

namespace {

constexpr double kDuplicateTolerance = 1e-9;  // m

// Distinct sorted coordinates, merging values closer than tol.
std::vector<double> distinct(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    return out;
}

bool uniform_spacing(const std::vector<double>& v, double& step) {
    if (v.size() < 2) return true;
    step = v[1] - v[0];
    for (std::size_t i = 2; i < v.size(); ++i)
        if (std::abs((v[i] - v[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step)) + 1e-12) return false;
    return true;
}

std::optional<Lattice> detect_lattice(std::span<const Vec2> centers, double side) {
    std::vector<double> xs, ys;
    xs.reserve(centers.size());
    ys.reserve(centers.size());
    for (auto c : centers) {
        xs.push_back(c.x);
        ys.push_back(c.y);
    }
    const auto ux = distinct(std::move(xs), kDuplicateTolerance);
    const auto uy = distinct(std::move(ys), kDuplicateTolerance);
    if (ux.size() * uy.size() != centers.size()) return std::nullopt;
    double dx = side, dy = side;
    if (!uniform_spacing(ux, dx) || !uniform_spacing(uy, dy)) return std::nullopt;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        const auto i = k % ux.size();
        const auto j = k / ux.size();
        if (std::abs(centers[k].x - ux[i]) > kDuplicateTolerance ||
            std::abs(centers[k].y - uy[j]) > kDuplicateTolerance)
            return std::nullopt;
    }
    return Lattice{ux.size(), uy.size(), dx, dy};
}

}  // namespace

Grid::Grid(std::vector<Cell> cells, GridKind kind, std::optional<Lattice> lattice)
    : cells_(std::move(cells)), kind_(kind), lattice_(lattice) {
    require(!cells_.empty(), "grid must contain at least one cell");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const auto& c = cells_[k];
        if (!(c.a > 0.0) || !(c.b > 0.0) || !std::isfinite(c.a) || !std::isfinite(c.b))
            fail(ErrorCategory::invalid_argument, "cell " + std::to_string(k) + " has non-positive half-extent");
        if (!std::isfinite(c.center.x) || !std::isfinite(c.center.y))
            fail(ErrorCategory::invalid_argument, "cell " + std::to_string(k) + " has non-finite center");
    }
    if (lattice_) require(lattice_->nx * lattice_->ny == cells_.size(), "lattice shape does not match cell count");
}

const Cell& Grid::cell(std::size_t k) const {
    if (k >= cells_.size())
        fail(ErrorCategory::invalid_argument,
             "cell index " + std::to_string(k) + " out of range (size " + std::to_string(cells_.size()) + ")");
    return cells_[k];
}

std::uint64_t Grid::hash() const noexcept {
    detail::Fnv1a h;
    h.add(static_cast<std::uint64_t>(cells_.size()));
    for (const auto& c : cells_) {
        h.add(c.center.x);
        h.add(c.center.y);
        h.add(c.a);
        h.add(c.b);
    }
    return h.value();
}

Grid build_regular_grid(Vec2 origin, std::size_t nx, std::size_t ny, double dx, double dy, GridKind kind) {
    require(nx >= 1 && ny >= 1, "grid needs nx >= 1 and ny >= 1");
    require(dx > 0.0 && dy > 0.0, "grid spacing must be positive");
    std::vector<Cell> cells;
    cells.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            cells.push_back(Cell{{origin.x + (static_cast<double>(i) + 0.5) * dx,
                                  origin.y + (static_cast<double>(j) + 0.5) * dy},
                                 dx / 2.0,
                                 dy / 2.0});
    return Grid(std::move(cells), kind, Lattice{nx, ny, dx, dy});
}

Grid grid_from_taxel_layout(std::span<const Vec2> centers, double cell_area, GridKind kind) {
    require(!centers.empty(), "taxel layout is empty");
    require(cell_area > 0.0, "taxel cell area must be positive");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (std::hypot(centers[i].x - centers[j].x, centers[i].y - centers[j].y) < kDuplicateTolerance)
                fail(ErrorCategory::invalid_argument,
                     "taxels " + std::to_string(i) + " and " + std::to_string(j) + " share a center");
    const double half = std::sqrt(cell_area) / 2.0;
    std::vector<Cell> cells;
    cells.reserve(centers.size());
    for (auto c : centers) cells.push_back(Cell{c, half, half});
    return Grid(std::move(cells), kind, detect_lattice(centers, 2.0 * half));
}

Vec2 node_delta(const Grid& disp, std::size_t k, const Grid& tract, std::size_t l) {
    return disp.cell(k).center - tract.cell(l).center;
}

std::string_view kind_name(GridKind k) noexcept {
    return k == GridKind::traction ? "traction" : "displacement";
}

void write_grid(std::ostream& os, const Grid& g) {
    using detail::format_double;
    os << "# skinrecon-grid v1 kind=" << kind_name(g.kind()) << " cells=" << g.size() << "\n";
    if (const auto& lat = g.lattice())
        os << "# lattice nx=" << lat->nx << " ny=" << lat->ny << " dx=" << format_double(lat->dx)
           << " dy=" << format_double(lat->dy) << "\n";
    os << "# index,x_m,y_m,a_m,b_m\n";
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& c = g[k];
        os << k << ',' << format_double(c.center.x) << ',' << format_double(c.center.y) << ','
           << format_double(c.a) << ',' << format_double(c.b) << '\n';
    }
}

Grid read_grid(std::istream& is) {
    using namespace detail;
    GridKind kind = GridKind::displacement;
    std::optional<Lattice> lattice;
    std::vector<Cell> cells;
    std::string line;
    while (std::getline(is, line)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            if (auto v = header_value(t, "kind"); !v.empty()) {
                if (v == "traction") kind = GridKind::traction;
                else if (v == "displacement") kind = GridKind::displacement;
                else fail(ErrorCategory::io_error, "unknown grid kind '" + std::string(v) + "'");
            }
            if (t.find("# lattice") == 0) {
                lattice = Lattice{parse_int<std::size_t>(header_value(t, "nx"), "nx"),
                                  parse_int<std::size_t>(header_value(t, "ny"), "ny"),
                                  parse_double(header_value(t, "dx"), "dx"),
                                  parse_double(header_value(t, "dy"), "dy")};
            }
            continue;
        }
        const auto f = split(t, ',');
        if (f.size() != 5) fail(ErrorCategory::io_error, "grid record needs 5 fields: '" + std::string(t) + "'");
        const auto idx = parse_int<std::size_t>(f[0], "cell index");
        if (idx != cells.size())
            fail(ErrorCategory::io_error, "grid records must be in index order (got " + std::to_string(idx) + ")");
        cells.push_back(Cell{{parse_double(f[1], "x"), parse_double(f[2], "y")},
                             parse_double(f[3], "a"),
                             parse_double(f[4], "b")});
    }
    return Grid(std::move(cells), kind, lattice);
}

void save_grid(const std::string& path, const Grid& g) {
    std::ofstream os(path);
    if (!os) fail(ErrorCategory::io_error, "cannot open '" + path + "' for writing");
    write_grid(os, g);
}

Grid load_grid(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(ErrorCategory::io_error, "cannot open grid file '" + path + "'");
    return read_grid(is);
}

}  // namespace skinrecon
