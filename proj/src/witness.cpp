#include "sigmatree/witness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sigmatree/classifier.hpp"
#include "sigmatree/error.hpp"
#include "sigmatree/oracle.hpp"

namespace sigmatree {

std::int32_t pigeonhole_bound(const Ptp& ptp) {
  return static_cast<std::int32_t>(ptp.downstairs().class_count()) + 1;
}

namespace {

/// The edge leaving x toward the end of tau, if determined inside the ball.
/// Vertices past the tip of tau have no determined direction.
std::optional<EdgeId> toward_end(const Ball& ball, const RayInstance& tau, const std::vector<bool>& on_ray,
                                 VertexId x) {
  const auto tip = tau.vertices.back();
  if (x == tip) return std::nullopt;
  if (on_ray[x.pos()]) return tau.edges[static_cast<std::size_t>(ball.vertex(x).depth)];
  if (ball.is_ancestor(tip, x)) return std::nullopt;
  return ball.parent_edge(x);
}

std::vector<bool> ray_mask(const Ball& ball, const RayInstance& tau) {
  std::vector<bool> on(ball.vertex_count(), false);
  for (auto v : tau.vertices) on[v.pos()] = true;
  return on;
}

}  // namespace

TranslatedEdge translated_marked_edge(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r) {
  const Ball& down = pair.down;
  if (r >= down.radius())
    throw BallTooShallow("ball too shallow: radius " + std::to_string(down.radius()) + " does not exceed r = " +
                         std::to_string(r), r + 1);
  if (tau.vertices.empty() || tau.edges.empty()) throw Error(ErrorKind::InvalidInput, "tau must have an edge");
  const auto beta = busemann_all(down, tau);
  const auto on_ray = ray_mask(down, tau);
  std::set<std::int32_t> marks;
  for (auto e : concrete_marked_edges(pair)) marks.insert(e.value);

  TranslatedEdge out;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> seen;
  for (std::size_t i = 0; i < tau.edges.size(); ++i) {
    const auto be = down.edge(tau.edges[i]);
    const std::pair<std::int32_t, std::int32_t> key{down.vertex(be.source).type.value, be.cls.value};
    const auto [it, fresh] = seen.emplace(key, static_cast<std::int32_t>(i));
    if (!fresh) {
      out.repeat = std::make_pair(it->second, static_cast<std::int32_t>(i));
      break;
    }
  }

  for (std::size_t i = 0; i < down.vertex_count(); ++i) {
    const VertexId x(static_cast<std::int32_t>(i));
    if (beta[i] >= r) continue;
    const auto e = toward_end(down, tau, on_ray, x);
    if (!e || !marks.count(e->value)) continue;
    out.edge = *e;
    out.busemann = beta[i];
    return out;
  }
  throw BallTooShallow("no marked edge toward the end with busemann < " + std::to_string(r) + " inside radius " +
                       std::to_string(down.radius()),
                       down.radius() + (out.repeat ? out.repeat->second - out.repeat->first : down.radius()));
}

namespace {

/// Follows down edges from the target of `start`, always taking the first
/// up edge (in out-edge order) over the next down edge.
RayInstance lift_path(const MappedBallPair& pair, EdgeId start, const std::vector<EdgeId>& rest) {
  const Ball& up = pair.up;
  RayInstance r;
  r.vertices.push_back(up.edge(start).source);
  r.edges.push_back(start);
  r.vertices.push_back(up.edge(start).target);
  for (auto f : rest) {
    const auto u = r.vertices.back();
    if (!up.vertex(u).expanded)
      throw BallTooShallow("lift leaves the up ball at depth " + std::to_string(up.vertex(u).depth),
                           up.vertex(u).depth + 1);
    std::optional<EdgeId> next;
    for (auto e : up.out_edges(u)) {
      if (e == Ball::reverse(r.edges.back())) continue;
      if (pair.image(e) == f) {
        next = e;
        break;
      }
    }
    if (!next && up.truncated())
      throw Error(ErrorKind::Inconclusive, "lift has no continuation inside the capped OMEGA stars");
    if (!next) throw Error(ErrorKind::Consistency, "lift has no continuation; q is not locally surjective here");
    r.edges.push_back(*next);
    r.vertices.push_back(up.edge(*next).target);
  }
  return r;
}

std::optional<VertexId> first_probe(const MappedBallPair& pair, const std::vector<std::int32_t>& beta,
                                    const RayInstance& ray) {
  for (auto v : ray.vertices)
    if (beta[pair.image(v).pos()] >= 0) return v;
  return std::nullopt;
}

}  // namespace

WitnessSearch disconnection_witness(const Ptp& ptp, const EndSpec& end, std::int32_t lag, std::int32_t depth,
                                    std::int32_t omega_cap) {
  if (lag < 0) throw Error(ErrorKind::InvalidInput, "lag must be nonnegative");
  if (depth < 1) throw Error(ErrorKind::InvalidInput, "depth must be positive");
  validate_end(ptp, end);
  if (!applicability_check(ptp).main_theorem_applies)
    throw Error(ErrorKind::InvalidInput, "the hypotheses (minimal, locally finite, locally surjective, not locally "
                                         "injective) do not hold");
  switch (faced(ptp, end)) {
    case Facing::Unfaced:
      throw Error(ErrorKind::NotFaced, "E not faced: no collapsing pair faces " + format_end(ptp, end));
    case Facing::Inconclusive:
      throw Error(ErrorKind::Inconclusive, "partial marks leave the facing of " + format_end(ptp, end) + " open");
    case Facing::Faced: break;
  }
  const auto marked = marked_classes(ptp);
  const auto steps = end.steps(static_cast<std::size_t>(depth));

  std::vector<TypeIndex> up_types;
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t)
    if (ptp.image_type(TypeIndex(static_cast<std::int32_t>(t))) == end.base_type)
      up_types.emplace_back(static_cast<std::int32_t>(t));

  const auto down = expand_down(ptp, end.base_type, depth);
  const auto tau_d = follow_steps(down, steps);
  const auto beta_d = busemann_all(down, tau_d);
  const auto on_ray = ray_mask(down, tau_d);

  for (std::size_t i = 1; i < down.vertex_count(); ++i) {
    const VertexId x(static_cast<std::int32_t>(i));
    const auto& xv = down.vertex(x);
    if (on_ray[i] || beta_d[i] >= -lag) continue;
    if (down.is_ancestor(tau_d.vertices.back(), x)) continue;
    if (marked.at(xv.parent_class) != MarkStatus::FullyMarked) continue;
    // The lifts climb -beta steps past depth(x) before reaching busemann 0.
    if (xv.depth - beta_d[i] > depth) continue;

    std::vector<bool> corridor(down.vertex_count(), false);
    for (auto v : geodesic(down, down.base(), x).vertices) corridor[v.pos()] = true;
    for (auto v : tau_d.vertices) corridor[v.pos()] = true;

    // The geodesic from x toward E: up to the ray, then along it.
    std::vector<EdgeId> gamma;
    for (auto y = x; beta_d[y.pos()] < 0;) {
      const auto e = *toward_end(down, tau_d, on_ray, y);
      gamma.push_back(e);
      y = down.edge(e).target;
    }

    for (auto up_type : up_types) {
      ExpansionOptions opt;
      opt.radius = depth;
      opt.omega_cap = omega_cap;
      opt.corridor = [&](VertexId v) { return corridor[v.pos()]; };
      WitnessSearch ws{expand_pair(ptp, up_type, opt), {}, {}};
      ws.tau = follow_steps(ws.pair.down, steps);
      const auto beta = busemann_all(ws.pair.down, ws.tau);
      const Ball& up = ws.pair.up;
      for (std::size_t j = 0; j < up.vertex_count(); ++j) {
        const VertexId v(static_cast<std::int32_t>(j));
        if (ws.pair.vmap[j] != x || !up.vertex(v).expanded) continue;
        std::vector<EdgeId> over;
        for (auto e : up.out_edges(v))
          if (ws.pair.image(e) == gamma.front()) over.push_back(e);
        if (over.size() < 2) continue;
        auto& w = ws.witness;
        w.first = over[0];
        w.second = over[1];
        w.apex = v;
        w.image = gamma.front();
        w.lag = lag;
        w.apex_busemann = beta[x.pos()];
        const std::vector<EdgeId> rest(gamma.begin() + 1, gamma.end());
        w.ray1 = lift_path(ws.pair, w.first, rest);
        w.ray2 = lift_path(ws.pair, w.second, rest);
        const auto p1 = first_probe(ws.pair, beta, w.ray1);
        const auto p2 = first_probe(ws.pair, beta, w.ray2);
        if (!p1 || !p2) continue;
        w.probe1 = *p1;
        w.probe2 = *p2;
        w.verified = verify_witness(ws.pair, w, ws.tau);
        return ws;
      }
    }
  }
  throw BallTooShallow("depth insufficient: no collapsing pair toward " + format_end(ptp, end) +
                       " with busemann below " + std::to_string(-lag) + " fits in depth " + std::to_string(depth),
                       std::max(depth + 2, 2 * (lag + 1)));
}

bool verify_witness(const MappedBallPair& pair, const DisconnectionWitness& w, const RayInstance& tau) {
  const Ball& up = pair.up;
  for (auto e : {w.first, w.second})
    if (!up.contains(e)) throw Error(ErrorKind::InvalidInput, "witness edge outside the up ball");
  for (auto v : {w.apex, w.probe1, w.probe2})
    if (!up.contains(v)) throw Error(ErrorKind::InvalidInput, "witness vertex outside the up ball");
  for (const auto* ray : {&w.ray1, &w.ray2}) {
    for (auto v : ray->vertices)
      if (!up.contains(v)) throw Error(ErrorKind::InvalidInput, "witness ray leaves the up ball");
    for (auto e : ray->edges)
      if (!up.contains(e)) throw Error(ErrorKind::InvalidInput, "witness ray leaves the up ball");
  }
  if (!pair.down.contains(w.image)) throw Error(ErrorKind::InvalidInput, "witness image outside the down ball");

  const auto beta = busemann_all(pair.down, tau);
  auto b = [&](VertexId up_vertex) { return beta[pair.image(up_vertex).pos()]; };

  const auto e1 = up.edge(w.first), e2 = up.edge(w.second);
  if (w.first == w.second || e1.source != w.apex || e2.source != w.apex) return false;
  if (pair.image(w.first) != w.image || pair.image(w.second) != w.image) return false;

  auto ray_ok = [&](const RayInstance& ray, EdgeId first, VertexId probe) {
    if (ray.edges.empty() || ray.edges.front() != first || ray.vertices.size() != ray.edges.size() + 1) return false;
    for (std::size_t i = 0; i < ray.edges.size(); ++i) {
      const auto be = up.edge(ray.edges[i]);
      if (be.source != ray.vertices[i] || be.target != ray.vertices[i + 1]) return false;
      if (i > 0 && ray.edges[i] == Ball::reverse(ray.edges[i - 1])) return false;
      // The image heads toward E: busemann rises by one per step.
      if (b(be.target) != b(be.source) + 1) return false;
    }
    auto it = std::find(ray.vertices.begin(), ray.vertices.end(), probe);
    if (it == ray.vertices.end() || b(probe) < 0) return false;
    return std::all_of(ray.vertices.begin(), it, [&](VertexId v) { return b(v) < 0; });
  };
  if (!ray_ok(w.ray1, w.first, w.probe1) || !ray_ok(w.ray2, w.second, w.probe2)) return false;

  if (b(w.apex) != w.apex_busemann || b(w.apex) >= -w.lag) return false;
  const auto path = geodesic(up, w.probe1, w.probe2).vertices;
  return std::find(path.begin(), path.end(), w.apex) != path.end();
}

}  // namespace sigmatree
