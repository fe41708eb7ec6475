#include "sigmatree/lifting.hpp"

#include <algorithm>

#include "sigmatree/classifier.hpp"
#include "sigmatree/error.hpp"

namespace sigmatree {

LiftTree lift_ray(const MappedBallPair& pair, const RayInstance& ray, std::optional<EdgeId> initial,
                  std::size_t depth, std::size_t max_lifts) {
  if (depth > ray.length())
    throw Error(ErrorKind::InvalidInput, "lift depth " + std::to_string(depth) + " exceeds the ray length " +
                std::to_string(ray.length()));
  if (!ray.vertices.empty() && ray.vertices.front() != pair.down.base())
    throw Error(ErrorKind::InvalidInput, "the ray must start at the downstairs base");
  const Ball& up = pair.up;
  LiftTree tree;
  if (depth == 0) {
    tree.lifts.push_back(RayInstance{{initial ? up.edge(*initial).source : up.base()}, {}});
    return tree;
  }

  auto continuations = [&](VertexId u, std::optional<EdgeId> came_by, EdgeId target) {
    const auto& uv = up.vertex(u);
    if (!uv.expanded)
      throw BallTooShallow("lift leaves the materialized up ball at depth " + std::to_string(uv.depth),
                           uv.depth + 1);
    std::vector<EdgeId> out;
    for (auto e : up.out_edges(u)) {
      if (came_by && e == Ball::reverse(*came_by)) continue;
      if (pair.image(e) == target) out.push_back(e);
    }
    if (out.empty() && up.truncated())
      throw Error(ErrorKind::Inconclusive, "a partial lift has no continuation inside the capped OMEGA stars");
    if (out.empty())
      throw Error(ErrorKind::Consistency, "a partial lift has no continuation; q is not locally surjective here");
    return out;
  };

  std::vector<RayInstance> frontier;
  if (initial) {
    if (!up.contains(*initial)) throw Error(ErrorKind::InvalidInput, "initial edge is not in the up ball");
    if (pair.image(*initial) != ray.edges.front())
      throw Error(ErrorKind::InvalidInput, "initial edge does not map to the first ray edge");
    const auto be = up.edge(*initial);
    tree.root_edges.push_back(*initial);
    frontier.push_back(RayInstance{{be.source, be.target}, {*initial}});
    tree.branching.emplace_back();
  } else {
    const auto roots = continuations(up.base(), std::nullopt, ray.edges.front());
    tree.root_edges = roots;
    tree.branching.push_back({static_cast<std::int64_t>(roots.size())});
    for (auto e : roots) frontier.push_back(RayInstance{{up.base(), up.edge(e).target}, {e}});
  }

  for (std::size_t t = 1; t < depth; ++t) {
    std::vector<RayInstance> next;
    std::vector<std::int64_t> counts;
    for (const auto& partial : frontier) {
      const auto cont = continuations(partial.vertices.back(), partial.edges.back(), ray.edges[t]);
      counts.push_back(static_cast<std::int64_t>(cont.size()));
      for (auto e : cont) {
        auto extended = partial;
        extended.edges.push_back(e);
        extended.vertices.push_back(up.edge(e).target);
        next.push_back(std::move(extended));
      }
      if (next.size() > max_lifts)
        throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(max_lifts) + " lifts");
    }
    tree.branching.push_back(std::move(counts));
    frontier = std::move(next);
  }
  tree.lifts = std::move(frontier);
  return tree;
}

bool q_fiber_singleton(const Ptp& ptp, const EndSpec& end) {
  if (!local_properties(ptp).locally_surjective)
    throw Error(ErrorKind::InvalidInput, "q is not locally surjective; lifts need not exist");
  switch (faced(ptp, end)) {
    case Facing::Faced: return false;
    case Facing::Unfaced: return true;
    case Facing::Inconclusive: break;
  }
  throw Error(ErrorKind::Inconclusive, "a partially marked class decides whether " + format_end(ptp, end) +
              " is faced");
}

std::int64_t max_lift_branching(const Ptp& ptp, const EndSpec& end, std::int32_t depth, std::int32_t omega_cap) {
  TypeIndex up_type;
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t) {
    const TypeIndex cand(static_cast<std::int32_t>(t));
    if (ptp.image_type(cand) == end.base_type) {
      up_type = cand;
      break;
    }
  }
  if (!up_type.valid()) throw Error(ErrorKind::InvalidInput, "no upstairs type lies over the base of the end");
  const auto steps = end.steps(static_cast<std::size_t>(depth));
  // Only vertices over the ray matter; expand the up ball along it.
  const auto down = expand_down(ptp, end.base_type, depth);
  const auto ray = follow_steps(down, steps);
  std::vector<bool> on_ray(down.vertex_count(), false);
  for (auto v : ray.vertices) on_ray[v.pos()] = true;
  ExpansionOptions opt;
  opt.radius = depth;
  opt.omega_cap = omega_cap;
  opt.corridor = [&](VertexId v) { return on_ray[v.pos()]; };
  const auto pair = expand_pair(ptp, up_type, opt);
  const auto tree = lift_ray(pair, follow_steps(pair.down, steps), std::nullopt, steps.size());
  std::int64_t best = 0;
  for (const auto& level : tree.branching)
    for (auto b : level) best = std::max(best, b);
  return best;
}

}  // namespace sigmatree
