#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sigmatree/ball.hpp"
#include "sigmatree/end_spec.hpp"

namespace sigmatree {

struct LiftTree {
  std::vector<EdgeId> root_edges;  // up edges over the first ray edge that start the lifts
  /// branching[t][i]: continuations of partial lift i (in canonical order)
  /// across ray edge t. Empty for t = 0 when an initial edge was given.
  std::vector<std::vector<std::int64_t>> branching;
  std::vector<RayInstance> lifts;  // canonical order: breadth-first, instance index

  std::size_t count() const noexcept { return lifts.size(); }
};

/// Enumerates the lifts of the first `depth` edges of `ray` (a path in
/// pair.down from its base) to geodesic paths in pair.up.
///
/// With `initial`, every lift starts with that edge, which must map to the
/// first ray edge. Without it, lifts start at the up base with any edge over
/// the first ray edge. Throws Error(InvalidInput) on a bad initial edge or
/// depth, Error(Consistency) when a partial lift cannot continue (q is not
/// locally surjective there), BallTooShallow when a lift leaves the
/// materialized ball, and Error(ResourceLimit) beyond `max_lifts`.
LiftTree lift_ray(const MappedBallPair& pair, const RayInstance& ray, std::optional<EdgeId> initial,
                  std::size_t depth, std::size_t max_lifts = 1 << 20);

/// True when q^-1(E) is a single end, i.e. no collapsing pair faces E.
/// Throws Error(Inconclusive) when partial marks leave this undetermined and
/// Error(InvalidInput) when q is not locally surjective.
bool q_fiber_singleton(const Ptp& ptp, const EndSpec& end);

/// Largest number of continuations seen while lifting `depth` steps of E
/// from an up vertex over E's base. Equals 1 whenever q_fiber_singleton(E).
std::int64_t max_lift_branching(const Ptp& ptp, const EndSpec& end, std::int32_t depth, std::int32_t omega_cap = 4);

}  // namespace sigmatree
