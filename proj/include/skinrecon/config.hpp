#pragma once

// JSON parameter files. Every key is optional; unknown keys are rejected.
//
//   {
//     "E": 2.1e5, "nu": 0.5, "h_n": 0.002, "eps0": 8.85e-12,
//     "eps_r": 3.5, "taxel_area": 1.6e-5,
//     "grid":              {"origin": [-0.015, -0.015], "nx": 15, "ny": 15, "dx": 0.002, "dy": 0.002},
//     "traction_grid":     { ...same fields... },
//     "displacement_grid": { ...same fields... }
//   }
//
// "grid" sets both grids; the specific keys override it.

#include <optional>
#include <string>

#include "skinrecon/geometry.hpp"
#include "skinrecon/sensor.hpp"

namespace skinrecon {

struct GridSpec {
    Vec2 origin;
    std::size_t nx = 1;
    std::size_t ny = 1;
    double dx = 2e-3;
    double dy = 2e-3;

    Grid build(GridKind kind) const { return build_regular_grid(origin, nx, ny, dx, dy, kind); }
};

struct ParamsFile {
    ElastomerParams params;
    std::optional<GridSpec> traction_grid;
    std::optional<GridSpec> displacement_grid;
};

/// Throws invalid-argument on a malformed document or bad value.
ParamsFile parse_params_json(const std::string& text);
ParamsFile load_params_file(const std::string& path);

}  // namespace skinrecon
