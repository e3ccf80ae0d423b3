#pragma once

// Virtual grids over the 2D chart of the skin surface.
//
// A grid is an ordered, immutable list of rectangular cells. Traction grids
// carry forces/pressures, displacement grids carry sensed deflections. All
// lengths are meters.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skinrecon {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

/// Rectangular cell with half-widths a (along x) and b (along y).
struct Cell {
    Vec2 center;
    double a = 0.0;
    double b = 0.0;

    double area() const { return 4.0 * a * b; }
    friend bool operator==(const Cell&, const Cell&) = default;
};

enum class GridKind { traction, displacement };

struct Lattice {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    friend bool operator==(const Lattice&, const Lattice&) = default;
};

class Grid {
public:
    /// Validates every cell (a > 0, b > 0, finite center). Throws invalid-argument.
    Grid(std::vector<Cell> cells, GridKind kind, std::optional<Lattice> lattice = std::nullopt);

    std::size_t size() const noexcept { return cells_.size(); }
    const Cell& cell(std::size_t k) const;  // bounds-checked
    const Cell& operator[](std::size_t k) const noexcept { return cells_[k]; }
    std::span<const Cell> cells() const noexcept { return cells_; }
    GridKind kind() const noexcept { return kind_; }
    bool regular() const noexcept { return lattice_.has_value(); }
    const std::optional<Lattice>& lattice() const noexcept { return lattice_; }

    /// Same cells, different role tag.
    Grid with_kind(GridKind kind) const { return Grid(cells_, kind, lattice_); }

    /// FNV-1a over the bit patterns of every cell; kind is not hashed, so a
    /// traction and displacement grid with identical geometry hash equal.
    std::uint64_t hash() const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<Cell> cells_;
    GridKind kind_;
    std::optional<Lattice> lattice_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// nx*ny cells of size dx*dy, row-major (x index fastest), first center at
/// origin + (dx/2, dy/2).
Grid build_regular_grid(Vec2 origin, std::size_t nx, std::size_t ny, double dx, double dy,
                        GridKind kind = GridKind::displacement);

/// One square cell of the given area per taxel center, input order preserved.
/// Centers closer than 1e-9 m are rejected. The lattice flag is set when the
/// centers happen to form a complete row-major lattice.
Grid grid_from_taxel_layout(std::span<const Vec2> centers, double cell_area,
                            GridKind kind = GridKind::displacement);

/// center(disp, k) - center(tract, l).
Vec2 node_delta(const Grid& disp, std::size_t k, const Grid& tract, std::size_t l);

/// Grid layout file: '#' header lines, then "index,x_m,y_m,a_m,b_m" records.
/// Doubles are written in shortest round-trip form, so read(write(g)) == g.
void write_grid(std::ostream& os, const Grid& g);
Grid read_grid(std::istream& is);
void save_grid(const std::string& path, const Grid& g);
Grid load_grid(const std::string& path);

std::string_view kind_name(GridKind k) noexcept;

}  // namespace skinrecon
