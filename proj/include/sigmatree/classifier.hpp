#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmatree/end_spec.hpp"
#include "sigmatree/ptp.hpp"

namespace sigmatree {

enum class MarkStatus { Unmarked, FullyMarked, PartiallyMarked };

const char* to_string(MarkStatus s);

/// Marks on downstairs classes. A class d is marked when it is the image of
/// a collapsing pair at some vertex of type from(d), oriented away from that
/// vertex.
struct MarkedSet {
  std::vector<MarkStatus> status;  // per downstairs class

  MarkStatus at(ClassIndex d) const { return status.at(d.pos()); }
  bool any_partial() const;
};

MarkedSet marked_classes(const Ptp& ptp);

/// Which marks count when deriving clean pairs and viability.
enum class MarkPolicy {
  FullOnly,   // PartiallyMarked treated as unmarked (upper bound on unfaced ends)
  Any,        // PartiallyMarked treated as marked (lower bound)
};

/// A pair (from(c), c) is clean when a vertex of that type whose parent-ward
/// edge has class c heads a subtree in which no marked edge points
/// parent-ward. Pairs are named by c.
struct CleanSet {
  std::vector<bool> clean;            // per downstairs class
  std::vector<std::int32_t> level;    // per class: depth of the nearest parent-ward mark, -1 if clean
  std::int32_t rounds = 0;            // deletion rounds until stable

  bool contains(ClassIndex c) const { return clean.at(c.pos()); }
  /// Largest finite level, or 0.
  std::int32_t max_level() const;
};

CleanSet clean_pairs(const Ptp& ptp, const MarkedSet& marked, MarkPolicy policy = MarkPolicy::Any);

/// Nodes are unmarked downstairs classes (the class of the last ray edge).
struct ViabilityGraph {
  std::vector<ClassIndex> nodes;
  std::vector<std::pair<ClassIndex, ClassIndex>> steps;
  std::vector<bool> start;  // per node: the class is clean, so a ray may begin with it
};

enum class ClassificationKind { AllFaced, UniqueCandidate, Inconclusive };

const char* to_string(ClassificationKind k);

struct Classification {
  ClassificationKind kind = ClassificationKind::Inconclusive;
  std::optional<EndSpec> candidate;            // UniqueCandidate only
  std::string reason;                          // Inconclusive only
  bool multiple_unfaced_ends = false;          // two or more unfaced ends exist
  std::vector<std::vector<ClassIndex>> cycles; // evidence cycles, canonical rotations
  ViabilityGraph graph;
  CleanSet clean;
};

/// Classifies the ends of the downstairs tree by facing. Partial marks are
/// bracketed: the verdict is reported only when counting them as marked and
/// as unmarked lead to the same answer.
Classification classify_ends(const Ptp& ptp);

/// Classification under a fixed policy, without bracketing.
Classification classify_ends(const Ptp& ptp, const MarkedSet& marked, MarkPolicy policy);

/// Number of depth-R cones around a vertex of `base_type` that no marked
/// edge outside the cone points into, predicted from the viability digraph.
/// Saturates at INT64_MAX.
std::int64_t unfaced_cone_count(const Ptp& ptp, TypeIndex base_type, std::int32_t depth,
                                MarkPolicy policy = MarkPolicy::FullOnly);

enum class Facing { Faced, Unfaced, Inconclusive };

const char* to_string(Facing f);

/// Whether some collapsing pair faces the end.
Facing faced(const Ptp& ptp, const EndSpec& end);

enum class Sigma1 { Empty, AtMostOne, Unknown };

const char* to_string(Sigma1 s);

struct Verdict {
  ApplicabilityReport applicability;
  MarkedSet marked;
  Classification classification;
  Sigma1 sigma1 = Sigma1::Unknown;
  /// Two unfaced ends under the hypotheses that allow at most one.
  bool consistency_violation = false;
  std::vector<std::string> notes;
};

Verdict sigma_verdict(const Ptp& ptp, bool fn_stabilizers_assumed);

/// DOT rendering of the viability digraph; clean nodes are doubly circled.
std::string viability_dot(const Ptp& ptp, const Classification& c);

}  // namespace sigmatree
