#pragma once

#include <string>

#include "edgecons/csv.hpp"

namespace edgecons {

/// Static SVG with three stacked panels: position traces, velocity traces
/// and |z_T| on a log axis (with the envelope overlay when the table has an
/// `envelope` column). Each curve is one <polyline>; classes are
/// "trace position", "trace velocity", "norm" and "envelope".
/// Throws Error(InvalidArgument) with "no samples" for an empty table.
std::string render_trajectory_svg(const CsvTable& table);

}  // namespace edgecons
