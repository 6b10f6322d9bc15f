#include "spinstar/switchboard.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spinstar/errors.hpp"

namespace spinstar {
namespace {

void check_edge(const StarSpec& spec, NodeIndex node) {
  if (node < 1 || node > static_cast<NodeIndex>(spec.edge_count)) {
    throw ValidationError("node " + std::to_string(node) + " is not an edge node in 1.." +
                          std::to_string(spec.edge_count));
  }
}

}  // namespace

RoutingState route(const DesignSolution& solution) {
  RoutingState state;
  state.base = solution;
  state.source = 1;
  state.target = 2;
  state.realized_spec = solution.realized;
  return state;
}

RoutingState retarget(const RoutingState& state, NodeIndex new_target) {
  check_edge(state.realized_spec, new_target);
  if (new_target == state.source) {
    throw ValidationError("new target must differ from the source node");
  }
  RoutingState next = state;
  std::swap(next.realized_spec.potentials[state.target], next.realized_spec.potentials[new_target]);
  next.target = new_target;
  return next;
}

RoutingState reroute_source(const RoutingState& state, NodeIndex new_source) {
  check_edge(state.realized_spec, new_source);
  if (new_source == state.target) {
    throw ValidationError("new source must differ from the target node");
  }
  RoutingState next = state;
  std::swap(next.realized_spec.potentials[state.source], next.realized_spec.potentials[new_source]);
  next.source = new_source;
  return next;
}

StarSpec apply_offset(const StarSpec& spec, double delta) {
  if (!std::isfinite(delta)) throw ValidationError("offset must be finite");
  StarSpec shifted = spec;
  for (double& lambda : shifted.potentials) lambda += delta;
  return shifted;
}

}  // namespace spinstar
