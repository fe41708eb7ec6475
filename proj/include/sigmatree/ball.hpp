#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sigmatree/end_spec.hpp"
#include "sigmatree/ptp.hpp"

namespace sigmatree {

using VertexId = Index<struct VertexTag>;
using EdgeId = Index<struct EdgeTag>;

/// A directed edge instance of a ball. Instances come in reverse pairs.
struct BallEdge {
  ClassIndex cls;
  std::int32_t index = 0;  // instance number within its class at `source`
  VertexId source;
  VertexId target;
  EdgeId reverse;
};

struct BallVertex {
  TypeIndex type;
  std::int32_t depth = 0;
  VertexId parent;                 // invalid at the base
  std::int32_t child_begin = 0;    // children occupy ids [child_begin, child_end)
  std::int32_t child_end = 0;
  bool expanded = false;           // full star materialized
  ClassIndex down_class;           // class of the parent -> this edge, at the parent
  std::int32_t down_index = 0;     // its instance number at the parent
  ClassIndex parent_class;         // class of this -> parent edge (instance 0)
};

/// A finite rooted subtree of a tree described by a TypedGraph, grown
/// breadth-first from a base vertex.
///
/// Ids are dense and assigned in creation order, so parents precede their
/// children and siblings are contiguous. Vertex w > 0 owns two edge ids:
/// 2(w-1) runs parent -> w and 2(w-1)+1 runs w -> parent. At a non-base
/// vertex the parent-ward edge is instance 0 of its class.
class Ball {
 public:
  VertexId base() const { return VertexId(0); }
  std::int32_t radius() const noexcept { return radius_; }
  std::int32_t omega_cap() const noexcept { return omega_cap_; }
  /// Some OMEGA star was cut down to omega_cap instances.
  bool truncated() const noexcept { return truncated_; }
  /// Every vertex of depth < radius is expanded (no pruning was applied).
  bool complete() const noexcept { return complete_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return vertices_.empty() ? 0 : 2 * (vertices_.size() - 1); }
  bool contains(VertexId v) const noexcept { return v.valid() && v.pos() < vertices_.size(); }
  bool contains(EdgeId e) const noexcept { return e.valid() && static_cast<std::size_t>(e.value) < edge_count(); }

  const BallVertex& vertex(VertexId v) const { return vertices_.at(v.pos()); }
  BallEdge edge(EdgeId e) const;
  static EdgeId reverse(EdgeId e) { return EdgeId(e.value ^ 1); }

  /// Edge from `v` to its parent; invalid at the base.
  EdgeId parent_edge(VertexId v) const { return v.value == 0 ? EdgeId() : EdgeId(2 * (v.value - 1) + 1); }
  /// Edge from the parent of `v` down to `v`.
  EdgeId child_edge(VertexId v) const { return EdgeId(2 * (v.value - 1)); }
  /// All materialized edges leaving `v`: the parent-ward edge first, then
  /// children in (class, index) order.
  std::vector<EdgeId> out_edges(VertexId v) const;
  /// The instance (cls, index) leaving `v`, if materialized.
  std::optional<EdgeId> find_out_edge(VertexId v, ClassIndex cls, std::int32_t index) const;

  /// True when `a` lies on the path from the base to `v` (a == v allowed).
  bool is_ancestor(VertexId a, VertexId v) const {
    return tin_.at(a.pos()) <= tin_.at(v.pos()) && tout_.at(v.pos()) <= tout_.at(a.pos());
  }
  VertexId ancestor_at_depth(VertexId v, std::int32_t depth) const;
  std::int32_t distance(VertexId u, VertexId v) const;

 private:
  friend class BallBuilder;
  void finalize();

  std::vector<BallVertex> vertices_;
  std::vector<std::int32_t> tin_, tout_;
  std::int32_t radius_ = 0;
  std::int32_t omega_cap_ = 1;
  bool truncated_ = false;
  bool complete_ = true;
};

/// A finite geodesic edge path in a ball.
struct RayInstance {
  std::vector<VertexId> vertices;  // vertices.size() == edges.size() + 1 unless empty
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
};

/// Concrete realization of q on a ball of the upstairs tree.
struct MappedBallPair {
  Ball up;
  Ball down;
  std::vector<VertexId> vmap;      // per up vertex
  std::vector<EdgeId> image_edge;  // per up vertex w > 0: image of the edge parent -> w

  VertexId image(VertexId up_vertex) const { return vmap.at(up_vertex.pos()); }
  EdgeId image(EdgeId up_edge) const {
    auto e = image_edge.at(static_cast<std::size_t>(up_edge.value / 2 + 1));
    return (up_edge.value & 1) ? Ball::reverse(e) : e;
  }
};

struct ExpansionOptions {
  std::int32_t radius = 0;
  std::int32_t omega_cap = 4;
  std::size_t budget = 4'000'000;  // per ball, vertices
  /// When set, an up vertex is expanded only if its image satisfies the
  /// predicate (the base is always expanded). Unexpanded vertices stay leaves.
  std::function<bool(VertexId down_vertex)> corridor;
  /// Expand only the first up vertex (in breadth-first order) for each
  /// distinct local situation (entering edge image, entering class). Every
  /// situation reachable in the full ball is still reached, at minimal depth,
  /// so the set of concrete collapsing-pair images is unchanged.
  bool dedup = false;
};

/// Ball of the downstairs tree around a vertex of `type`.
Ball expand_down(const Ptp& ptp, TypeIndex type, std::int32_t radius, std::size_t budget = 4'000'000);

/// Ball of the upstairs tree around a vertex of `base_type` together with
/// the downstairs ball of the same radius and the concrete map between them.
/// Throws Error(ResourceLimit) when a ball exceeds the budget.
MappedBallPair expand_pair(const Ptp& ptp, TypeIndex base_type, const ExpansionOptions& options);

/// The unique simple path from u to v. Throws Error(InvalidInput) if either
/// vertex is outside the ball.
RayInstance geodesic(const Ball& ball, VertexId u, VertexId v);

/// Follows `steps` from the base. Throws BallTooShallow when a step leaves
/// the materialized part of the ball.
RayInstance follow_steps(const Ball& ball, std::span<const Step> steps);

/// Ray of `length` steps from the base along `end`.
RayInstance ray_toward(const Ball& ball, const EndSpec& end, std::size_t length);

/// Busemann value m - d(p, tau(m)) where tau(m) is the last vertex of tau on
/// the geodesic from the base to p. tau must start at the base.
std::int32_t busemann(const Ball& ball, const RayInstance& tau, VertexId p);

/// Busemann values of every vertex, indexed by vertex id.
std::vector<std::int32_t> busemann_all(const Ball& ball, const RayInstance& tau);

/// Vertices with busemann value >= r, ascending by id.
std::vector<VertexId> horoball_filter(const Ball& ball, const RayInstance& tau, std::int32_t r);

}  // namespace sigmatree
