#include "skinrecon/sensor.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "skinrecon/error.hpp"
#include "text_util.hpp"

namespace skinrecon {

void ElastomerParams::validate() const {
    require(E > 0.0 && std::isfinite(E), "Young's modulus must be positive");
    require(nu >= 0.0 && nu <= 0.5, "Poisson ratio must lie in [0, 0.5]");
    require(h_n > 0.0 && std::isfinite(h_n), "nominal thickness must be positive");
    require(eps0 > 0.0, "dielectric constant must be positive");
    if (eps_r) require(*eps_r > 0.0, "relative permittivity must be positive");
    if (taxel_area) require(*taxel_area > 0.0, "taxel area must be positive");
}

double ElastomerParams::permittivity_area() const {
    if (!eps_r || !taxel_area)
        fail(ErrorCategory::invalid_argument,
             "capacitance ingestion needs eps_r and taxel_area in the parameters");
    return eps0 * *eps_r * *taxel_area;
}

std::uint64_t ElastomerParams::hash() const noexcept {
    detail::Fnv1a h;
    h.add(E);
    h.add(nu);
    h.add(h_n);
    h.add(eps0);
    h.add(eps_r.value_or(-1.0));
    h.add(taxel_area.value_or(-1.0));
    return h.value();
}

TaxelReading ingest_reading(TaxelReading r, NegativePolicy policy) {
    if (!std::isfinite(r.delta_c))
        fail(ErrorCategory::invalid_reading, "taxel " + std::to_string(r.taxel_index) + ": non-finite reading");
    if (r.delta_c < 0.0) {
        if (policy == NegativePolicy::strict)
            fail(ErrorCategory::invalid_reading,
                 "taxel " + std::to_string(r.taxel_index) + ": negative capacitance change");
        r.delta_c = 0.0;
    }
    return r;
}

double thickness_from_reading(const TaxelReading& r, const ElastomerParams& p) {
    if (!(r.delta_c >= 0.0))
        fail(ErrorCategory::invalid_reading,
             "taxel " + std::to_string(r.taxel_index) + ": capacitance change must be >= 0");
    const double k = p.permittivity_area();
    // h_c = k h_n / (k + dC h_n)
    return k * p.h_n / (k + r.delta_c * p.h_n);
}

double reading_to_displacement(const TaxelReading& r, const ElastomerParams& p) {
    const double k = p.permittivity_area();
    if (!(r.delta_c >= 0.0))
        fail(ErrorCategory::invalid_reading,
             "taxel " + std::to_string(r.taxel_index) + ": capacitance change must be >= 0");
    // h_n - h_c written without the subtraction, which cancels for small dC.
    const double dch = r.delta_c * p.h_n;
    return p.h_n * dch / (k + dch);
}

double capacitance_change(double h_c, const ElastomerParams& p) {
    require(h_c > 0.0, "compressed thickness must be positive");
    return p.permittivity_area() * (p.h_n - h_c) / (h_c * p.h_n);
}

std::vector<TaxelReading> read_readings(std::istream& is, NegativePolicy policy) {
    using namespace detail;
    std::vector<TaxelReading> out;
    std::string line;
    while (std::getline(is, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto f = split(t, ',');
        if (f.size() < 2 || f.size() > 3)
            fail(ErrorCategory::io_error, "reading record needs 2 or 3 fields: '" + std::string(t) + "'");
        TaxelReading r;
        r.taxel_index = parse_int<std::size_t>(f[0], "taxel index");
        r.delta_c = parse_double(f[1], "delta_c");
        if (f.size() == 3 && !f[2].empty()) r.timestamp = parse_double(f[2], "timestamp");
        out.push_back(ingest_reading(r, policy));
    }
    return out;
}

std::vector<TaxelReading> load_readings(const std::string& path, NegativePolicy policy) {
    std::ifstream is(path);
    if (!is) fail(ErrorCategory::io_error, "cannot open readings file '" + path + "'");
    return read_readings(is, policy);
}

void write_readings(std::ostream& os, const std::vector<TaxelReading>& readings) {
    os << "# taxel_index,delta_c_F,timestamp_s\n";
    for (const auto& r : readings) {
        os << r.taxel_index << ',' << detail::format_double(r.delta_c);
        if (r.timestamp) os << ',' << detail::format_double(*r.timestamp);
        os << '\n';
    }
}

}  // namespace skinrecon
