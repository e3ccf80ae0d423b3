#include "skinrecon/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
    if (!j.is_number()) fail(ErrorCategory::invalid_argument, std::string("'") + key + "' must be a number");
    return j.get<double>();
}

std::size_t count(const json& j, const char* key) {
    if (!j.is_number_integer() || j.get<long long>() < 1)
        fail(ErrorCategory::invalid_argument, std::string("'") + key + "' must be a positive integer");
    return j.get<std::size_t>();
}

GridSpec grid_spec(const json& j, const std::string& name) {
    if (!j.is_object()) fail(ErrorCategory::invalid_argument, "'" + name + "' must be an object");
    GridSpec g;
    for (const auto& [key, v] : j.items()) {
        if (key == "origin") {
            if (!v.is_array() || v.size() != 2)
                fail(ErrorCategory::invalid_argument, "'" + name + ".origin' must be [x, y]");
            g.origin = {number(v[0], "origin"), number(v[1], "origin")};
        } else if (key == "nx") {
            g.nx = count(v, "nx");
        } else if (key == "ny") {
            g.ny = count(v, "ny");
        } else if (key == "dx") {
            g.dx = number(v, "dx");
        } else if (key == "dy") {
            g.dy = number(v, "dy");
        } else {
            fail(ErrorCategory::invalid_argument, "unknown key '" + name + "." + key + "'");
        }
    }
    require(g.dx > 0.0 && g.dy > 0.0, "'" + name + "' spacing must be positive");
    return g;
}

}  // namespace

ParamsFile parse_params_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCategory::invalid_argument, std::string("params file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorCategory::invalid_argument, "params file must be a JSON object");

    ParamsFile out;
    std::optional<GridSpec> both;
    auto& p = out.params;
    for (const auto& [key, v] : doc.items()) {
        if (key == "E") p.E = number(v, "E");
        else if (key == "nu") p.nu = number(v, "nu");
        else if (key == "h_n") p.h_n = number(v, "h_n");
        else if (key == "eps0") p.eps0 = number(v, "eps0");
        else if (key == "eps_r") p.eps_r = number(v, "eps_r");
        else if (key == "taxel_area") p.taxel_area = number(v, "taxel_area");
        else if (key == "grid") both = grid_spec(v, key);
        else if (key == "traction_grid") out.traction_grid = grid_spec(v, key);
        else if (key == "displacement_grid") out.displacement_grid = grid_spec(v, key);
        else fail(ErrorCategory::invalid_argument, "unknown key '" + key + "' in params file");
    }
    if (both) {
        if (!out.traction_grid) out.traction_grid = both;
        if (!out.displacement_grid) out.displacement_grid = both;
    }
    p.validate();
    return out;
}

ParamsFile load_params_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(ErrorCategory::io_error, "cannot open params file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_params_json(ss.str());
}

}  // namespace skinrecon
