#pragma once

// Plain-text field files for plotting tools: one record per cell,
//
//   x_m y_m value [value value] index
//
// with a blank line between lattice rows on regular grids.

#include <iosfwd>
#include <string>

#include "skinrecon/influence.hpp"

namespace skinrecon {

void write_field(std::ostream& os, const FieldVector& f, std::string_view label = "value");
void save_field(const std::string& path, const FieldVector& f, std::string_view label = "value");

/// Reads a field and binds it to `grid`. Record positions must match the grid
/// centers and indices must run 0..N-1. Throws io-error otherwise.
FieldVector read_field(std::istream& is, GridPtr grid);
FieldVector load_field(const std::string& path, GridPtr grid);

}  // namespace skinrecon
