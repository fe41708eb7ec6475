#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sigmatree/ball.hpp"

namespace sigmatree {

/// Two distinct up edges with a common source and the same image.
struct CollapsingPair {
  VertexId apex;
  EdgeId first;
  EdgeId second;
  EdgeId image;  // down edge, oriented away from the image of apex
};

/// Collapsing pairs found by scanning the star of every expanded up vertex.
/// For each apex and image edge only the first two preimages are reported.
std::vector<CollapsingPair> concrete_collapsing_pairs(const MappedBallPair& pair);

/// Down edges that are images of concrete collapsing pairs, ascending.
std::vector<EdgeId> concrete_marked_edges(const MappedBallPair& pair);

struct Cone {
  VertexId vertex;                   // depth-R down vertex u
  bool faced = false;                // a marked edge outside S_u points toward u
  std::optional<EdgeId> witness;     // such an edge when faced
};

struct ConeReport {
  std::int32_t depth = 0;
  bool truncated = false;            // some OMEGA star was capped; negatives are not exhaustive
  std::size_t marked_edges = 0;
  std::vector<Cone> cones;           // ascending by vertex id
  std::size_t unfaced = 0;
  /// Down vertices of depth <= R that no marked edge points toward.
  std::vector<VertexId> unfaced_vertices;
};

/// Facing of every depth-`depth` cone of pair.down, using only concrete
/// collapsing pairs of pair.up. `extra_marks` (down edge ids of the same
/// down ball) are merged in; use it to pool marks from several up bases.
ConeReport brute_face_scan(const MappedBallPair& pair, std::int32_t depth,
                           const std::vector<EdgeId>& extra_marks = {});

/// True iff the subgraph of pair.up induced on the preimages of HB_r(tau)
/// is nonempty and connected.
bool brute_connectivity_check(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r);

/// True iff up vertices a and b lie in different components of that
/// induced subgraph (or either lies outside it).
bool separated(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r, VertexId a, VertexId b);

/// Whole-PTP oracle run: balls around each downstairs type with marks pooled
/// over every upstairs type above it, sized from `depth` plus a margin.
struct OracleRun {
  TypeIndex down_type;
  std::int32_t radius = 0;
  ConeReport report;
};

struct OracleOptions {
  std::int32_t depth = 4;
  std::int32_t omega_cap = 4;
  std::size_t budget = 4'000'000;
  std::int32_t margin = -1;  // < 0: derive from the clean levels
};

std::vector<OracleRun> run_oracle(const Ptp& ptp, const OracleOptions& options);

}  // namespace sigmatree
