#pragma once

// Capacitive taxel model: a parallel-plate capacitor whose elastomer
// dielectric thins under load,
//
//   dC = eps0 * eps_r * A * (h_n - h_c) / (h_c * h_n).
//
// Inverting it gives the compressed thickness h_c and hence the normal
// surface displacement h_n - h_c of each taxel.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace skinrecon {

struct ElastomerParams {
    double E = 2.1e5;     ///< Young's modulus, Pa
    double nu = 0.5;      ///< Poisson ratio
    double h_n = 2e-3;    ///< nominal elastomer thickness, m
    double eps0 = 8.8541878128e-12;  ///< vacuum permittivity, F/m
    /// Relative permittivity and taxel area are hardware-specific; they must be
    /// supplied before capacitance readings can be ingested.
    std::optional<double> eps_r;
    std::optional<double> taxel_area;  ///< m^2

    /// Throws invalid-argument when an invariant is violated.
    void validate() const;

    /// eps0 * eps_r * A in F*m. Throws invalid-argument if eps_r or A is unset.
    double permittivity_area() const;

    std::uint64_t hash() const noexcept;

    friend bool operator==(const ElastomerParams&, const ElastomerParams&) = default;
};

struct TaxelReading {
    std::size_t taxel_index = 0;
    double delta_c = 0.0;  ///< capacitance change, F
    std::optional<double> timestamp;  ///< s
};

enum class NegativePolicy {
    strict,    ///< negative dC is an invalid-reading error
    tolerant,  ///< negative dC is clamped to zero
};

/// Applies the negative-dC policy. Non-finite values are always rejected.
TaxelReading ingest_reading(TaxelReading r, NegativePolicy policy);

/// Compressed thickness h_c in (0, h_n]. Throws invalid-reading for dC < 0.
double thickness_from_reading(const TaxelReading& r, const ElastomerParams& p);

/// Normal displacement h_n - h_c, in [0, h_n).
double reading_to_displacement(const TaxelReading& r, const ElastomerParams& p);

/// Forward capacitance model: dC for a given compressed thickness.
double capacitance_change(double h_c, const ElastomerParams& p);

/// Readings file: "taxel_index,delta_c_F[,timestamp_s]" per line, '#' comments.
/// The policy is applied while reading.
std::vector<TaxelReading> read_readings(std::istream& is, NegativePolicy policy);
std::vector<TaxelReading> load_readings(const std::string& path, NegativePolicy policy);
void write_readings(std::ostream& os, const std::vector<TaxelReading>& readings);

}  // namespace skinrecon
