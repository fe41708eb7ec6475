#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "sigmatree/ball.hpp"
#include "sigmatree/end_spec.hpp"

namespace sigmatree {

struct TranslatedEdge {
  EdgeId edge;                 // marked down edge pointing toward E
  std::int32_t busemann = 0;   // of its source
  /// Positions i < j along tau with equal (vertex type, class) at step i
  /// and step j; j - i is a period of the type sequence.
  std::optional<std::pair<std::int32_t, std::int32_t>> repeat;
};

/// Repeats of (type, class) along a ray occur within this many steps.
std::int32_t pigeonhole_bound(const Ptp& ptp);

/// A concretely marked down edge pointing toward the end of `tau` whose
/// source has busemann value < r. Throws BallTooShallow when r >= the ball
/// radius or no such edge is in the ball.
TranslatedEdge translated_marked_edge(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r);

struct DisconnectionWitness {
  EdgeId first;            // the collapsing pair (up edges)
  EdgeId second;
  VertexId apex;           // their common source
  EdgeId image;            // common down image
  RayInstance ray1;        // lifts of the geodesic from the image toward E, starting with first / second
  RayInstance ray2;
  VertexId probe1;         // first vertex of each lift whose image has busemann >= 0
  VertexId probe2;
  std::int32_t lag = 0;
  std::int32_t apex_busemann = 0;
  bool verified = false;
};

/// A witness together with the balls it lives in.
struct WitnessSearch {
  MappedBallPair pair;
  RayInstance tau;   // from the down base toward E, to the full radius
  DisconnectionWitness witness;
};

/// Constructs a disconnection witness for E inside balls of radius `depth`.
/// Throws Error(NotFaced) if no collapsing pair faces E, Error(Inconclusive)
/// if partial marks leave that open, Error(InvalidInput) if the hypotheses
/// fail or lag < 0, and BallTooShallow if `depth` is not enough.
WitnessSearch disconnection_witness(const Ptp& ptp, const EndSpec& end, std::int32_t lag, std::int32_t depth,
                                    std::int32_t omega_cap = 4);

/// Recomputes every witness invariant from the balls. Throws
/// Error(InvalidInput) if the witness references anything outside them.
bool verify_witness(const MappedBallPair& pair, const DisconnectionWitness& w, const RayInstance& tau);

}  // namespace sigmatree
