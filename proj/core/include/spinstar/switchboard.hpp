#pragma once

#include "spinstar/designer.hpp"
#include "spinstar/model.hpp"

namespace spinstar {

// A design routed between two edge nodes. Only valid to change between
// transfers, while the excitation is localized on a node.
struct RoutingState {
  DesignSolution base;
  NodeIndex source = 1;
  NodeIndex target = 2;
  StarSpec realized_spec;
};

/// The design's default route 1 -> 2.
RoutingState route(const DesignSolution& solution);

/// Swaps the potentials of the current and new target. Retargeting to the
/// current target returns the state unchanged.
RoutingState retarget(const RoutingState& state, NodeIndex new_target);

/// Same swap mechanism applied to the source node.
RoutingState reroute_source(const RoutingState& state, NodeIndex new_source);

/// Adds `delta` to every potential; transfer magnitudes are unchanged.
StarSpec apply_offset(const StarSpec& spec, double delta);

}  // namespace spinstar
