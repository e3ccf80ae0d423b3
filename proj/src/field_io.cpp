#include "skinrecon/field_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "skinrecon/error.hpp"
#include "text_util.hpp"

namespace skinrecon {

void write_field(std::ostream& os, const FieldVector& f, std::string_view label) {
    using detail::format_double;
    f.validate();
    const Grid& g = *f.grid;
    os << "# skinrecon-field v1 label=" << label << " components=" << f.components << " cells=" << g.size()
       << '\n';
    os << "# x_m y_m value" << (f.components == 3 ? "_x value_y value_z" : "") << " index\n";
    const std::size_t row = g.lattice() ? g.lattice()->nx : 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        os << format_double(g[k].center.x) << ' ' << format_double(g[k].center.y);
        for (int c = 0; c < f.components; ++c)
            os << ' ' << format_double(f.values(Eigen::Index(k) * f.components + c));
        os << ' ' << k << '\n';
        if (row && (k + 1) % row == 0 && k + 1 < g.size()) os << '\n';
    }
}

void save_field(const std::string& path, const FieldVector& f, std::string_view label) {
    std::ofstream os(path);
    if (!os) fail(ErrorCategory::io_error, "cannot open '" + path + "' for writing");
    write_field(os, f, label);
    if (!os) fail(ErrorCategory::io_error, "failed writing '" + path + "'");
}

FieldVector read_field(std::istream& is, GridPtr grid) {
    using namespace detail;
    require(grid != nullptr, "field needs a grid");
    int components = 0;
    std::vector<double> values;
    std::size_t next = 0;
    std::string line;
    while (std::getline(is, line)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            if (auto v = header_value(t, "components"); !v.empty()) components = parse_int<int>(v, "components");
            continue;
        }
        const auto tok = tokens(t);
        if (tok.size() != 4 && tok.size() != 6)
            fail(ErrorCategory::io_error, "field record needs 4 or 6 columns: '" + std::string(t) + "'");
        const int c = int(tok.size()) - 3;
        if (components == 0) components = c;
        if (c != components) fail(ErrorCategory::io_error, "inconsistent component count in field file");
        const auto idx = parse_int<std::size_t>(tok.back(), "cell index");
        if (idx != next || idx >= grid->size())
            fail(ErrorCategory::io_error, "field record " + std::to_string(idx) + " does not match grid cell " +
                                              std::to_string(next));
        const Vec2 p{parse_double(tok[0], "x"), parse_double(tok[1], "y")};
        const Vec2 q = (*grid)[idx].center;
        if (std::abs(p.x - q.x) > 1e-12 + 1e-9 * std::abs(q.x) || std::abs(p.y - q.y) > 1e-12 + 1e-9 * std::abs(q.y))
            fail(ErrorCategory::io_error, "field record " + std::to_string(idx) + " is not at the grid cell center");
        for (int i = 0; i < c; ++i) values.push_back(parse_double(tok[std::size_t(2 + i)], "value"));
        ++next;
    }
    if (next != grid->size())
        fail(ErrorCategory::io_error, "field has " + std::to_string(next) + " records, grid has " +
                                          std::to_string(grid->size()) + " cells");
    return make_field(std::move(grid), components, Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size())));
}

FieldVector load_field(const std::string& path, GridPtr grid) {
    std::ifstream is(path);
    if (!is) fail(ErrorCategory::io_error, "cannot open field file '" + path + "'");
    return read_field(is, std::move(grid));
}

}  // namespace skinrecon
