#pragma once

#include <string>
#include <string_view>

#include "spinstar/errors.hpp"
#include "spinstar/switchboard.hpp"

namespace spinstar::cli {

inline constexpr int kDesignSchemaVersion = 1;

// A design file that could not be read; what() names the offending field.
class DesignFileError : public Error {
 public:
  using Error::Error;
};

/// JSON document holding a routed design. Every real number is written with
/// 17 significant digits so parse_design(serialize_design(x)) == x exactly.
std::string serialize_design(const RoutingState& state);

RoutingState parse_design(std::string_view text);

RoutingState read_design_file(const std::string& path);
void write_design_file(const std::string& path, const RoutingState& state);

}  // namespace spinstar::cli
