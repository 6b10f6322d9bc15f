#pragma once

#include <iosfwd>

#include "spinstar/model.hpp"

namespace spinstar::cli {

/// CSV with header "t,fidelity" and one row per grid point.
void write_trace(std::ostream& out, const FidelityTrace& trace);

/// Throws ValidationError for a malformed header, row, or non-increasing t.
FidelityTrace read_trace(std::istream& in);

}  // namespace spinstar::cli
