#pragma once

#include <string>
#include <vector>

#include "sigmatree/ball.hpp"
#include "sigmatree/lifting.hpp"
#include "sigmatree/witness.hpp"

namespace sigmatree {

struct DotStyle {
  std::vector<EdgeId> marked;  // drawn red, in their own orientation
  std::vector<EdgeId> spine;   // drawn blue
};

/// One ball; vertices are labeled `type@depth`.
std::string ball_dot(const Ball& ball, const TypedGraph& g, const DotStyle& style = {});

/// Both balls side by side, with the vertex map as dashed edges between them.
/// `down_style` applies to the down ball.
std::string pair_dot(const Ptp& ptp, const MappedBallPair& pair, const DotStyle& down_style = {});

/// Vertices and edges of the lifts; vertices where lifts branch are filled.
std::string lift_dot(const Ptp& ptp, const MappedBallPair& pair, const LiftTree& tree);

/// The two lifted rays of a witness with apex and probes highlighted.
std::string witness_dot(const Ptp& ptp, const WitnessSearch& ws);

}  // namespace sigmatree
