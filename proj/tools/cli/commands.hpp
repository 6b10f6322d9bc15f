#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spinstar::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // usage, I/O, invalid files, failed verification
inline constexpr int kExitInfeasible = 2;  // no design exists for the requested (M, eta)

// Largest star the --full simulation accepts. The structured arrowhead
// solver keeps O(N) doubles, roughly 40 bytes per edge node (~4 MB here).
inline constexpr long long kMaxFullEdges = 100'000;

/// Time grid for `simulate`. With an explicit t_max this is `steps` uniform
/// points on [0, t_max]. Without one the spacing is tau / k, k chosen so the
/// grid reaches about 1.2 tau and tau itself is a grid point.
std::vector<double> simulation_grid(double tau, std::optional<double> t_max, std::size_t steps);

/// Runs one command line (args excludes the program name).
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinstar::cli
