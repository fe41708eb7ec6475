#include "sigmatree/ball.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sigmatree/error.hpp"

namespace sigmatree {

BallEdge Ball::edge(EdgeId e) const {
  if (!contains(e)) throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e.value) + " is not in the ball");
  const VertexId w(e.value / 2 + 1);
  const auto& wv = vertices_[w.pos()];
  if ((e.value & 1) == 0) return {wv.down_class, wv.down_index, wv.parent, w, reverse(e)};
  return {wv.parent_class, 0, w, wv.parent, reverse(e)};
}

std::vector<EdgeId> Ball::out_edges(VertexId v) const {
  std::vector<EdgeId> out;
  const auto& vv = vertex(v);
  if (v.value > 0) out.push_back(parent_edge(v));
  for (auto c = vv.child_begin; c < vv.child_end; ++c) out.push_back(child_edge(VertexId(c)));
  return out;
}

std::optional<EdgeId> Ball::find_out_edge(VertexId v, ClassIndex cls, std::int32_t index) const {
  const auto& vv = vertex(v);
  if (v.value > 0 && vv.parent_class == cls && index == 0) return parent_edge(v);
  for (auto c = vv.child_begin; c < vv.child_end; ++c) {
    const auto& cv = vertices_[static_cast<std::size_t>(c)];
    if (cv.down_class == cls && cv.down_index == index) return child_edge(VertexId(c));
  }
  return std::nullopt;
}

VertexId Ball::ancestor_at_depth(VertexId v, std::int32_t depth) const {
  while (vertex(v).depth > depth) v = vertex(v).parent;
  return v;
}

std::int32_t Ball::distance(VertexId u, VertexId v) const {
  std::int32_t d = 0;
  while (u != v) {
    if (vertex(u).depth >= vertex(v).depth) u = vertex(u).parent;
    else v = vertex(v).parent;
    ++d;
  }
  return d;
}

void Ball::finalize() {
  const auto n = vertices_.size();
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  std::int32_t clock = 0;
  // Iterative DFS over contiguous child ranges.
  std::vector<std::pair<std::int32_t, std::int32_t>> stack;  // (vertex, next child)
  stack.emplace_back(0, vertices_.empty() ? 0 : vertices_[0].child_begin);
  if (!vertices_.empty()) tin_[0] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& vv = vertices_[static_cast<std::size_t>(v)];
    if (next < vv.child_end) {
      const auto c = next++;
      tin_[static_cast<std::size_t>(c)] = clock++;
      stack.emplace_back(c, vertices_[static_cast<std::size_t>(c)].child_begin);
    } else {
      tout_[static_cast<std::size_t>(v)] = clock++;
      stack.pop_back();
    }
  }
}

// ---------------------------------------------------------------------------
// Expansion

class BallBuilder {
 public:
  static Ball down(const Ptp& ptp, TypeIndex type, std::int32_t radius, std::size_t budget);
  static MappedBallPair pair(const Ptp& ptp, TypeIndex base_type, const ExpansionOptions& opt);
};

namespace {

void check_budget(std::size_t n, std::size_t budget, const char* which) {
  if (n > budget)
    throw Error(ErrorKind::ResourceLimit, std::string(which) + " ball exceeds the vertex budget of " +
                std::to_string(budget));
}

/// Target slots of every cell at one upstairs vertex, in fill order.
///
/// Nominally the cells at a type that share a target class take consecutive
/// slot ranges in document order. When the vertex was entered through an
/// edge whose image occupies slot s, the entering cell is made to own s
/// (swapping with the nominal owner of s) and lists it first.
std::vector<std::vector<std::int64_t>> cell_layout(const Ptp& ptp, const std::vector<std::size_t>& cells_here,
                                                   std::optional<std::pair<std::size_t, std::int64_t>> entry) {
  std::vector<std::vector<std::int64_t>> layout(cells_here.size());
  for (std::size_t i = 0; i < cells_here.size(); ++i) {
    const auto ci = cells_here[i];
    const auto off = ptp.slot_offset(ci);
    const auto k = *ptp.cells()[ci].coverage.value();
    for (std::int64_t s = 0; s < k; ++s) layout[i].push_back(off + s);
  }
  if (!entry) return layout;
  const auto [entry_cell, slot] = *entry;
  const auto pos0 = static_cast<std::size_t>(
      std::find(cells_here.begin(), cells_here.end(), entry_cell) - cells_here.begin());
  auto& own = layout[pos0];
  auto it = std::find(own.begin(), own.end(), slot);
  if (it == own.end()) {
    const auto displaced = own.front();
    const auto target = ptp.cells()[entry_cell].target;
    for (std::size_t i = 0; i < cells_here.size(); ++i) {
      if (i == pos0 || ptp.cells()[cells_here[i]].target != target) continue;
      std::replace(layout[i].begin(), layout[i].end(), slot, displaced);
      std::sort(layout[i].begin(), layout[i].end());
    }
    own.front() = slot;
  }
  std::sort(own.begin(), own.end());
  std::rotate(own.begin(), std::find(own.begin(), own.end(), slot), std::find(own.begin(), own.end(), slot) + 1);
  return layout;
}

}  // namespace

Ball BallBuilder::down(const Ptp& ptp, TypeIndex type, std::int32_t radius, std::size_t budget) {
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "radius must be nonnegative");
  const auto& g = ptp.downstairs();
  Ball b;
  b.radius_ = radius;
  b.omega_cap_ = 1;
  BallVertex root;
  root.type = type;
  b.vertices_.push_back(root);
  std::vector<std::vector<ClassIndex>> stars(g.type_count());
  for (std::size_t t = 0; t < g.type_count(); ++t) stars[t] = g.star(TypeIndex(static_cast<std::int32_t>(t)));

  for (std::size_t i = 0; i < b.vertices_.size(); ++i) {
    if (b.vertices_[i].depth >= radius) continue;
    const auto vtype = b.vertices_[i].type;
    const auto depth = b.vertices_[i].depth;
    const auto pclass = b.vertices_[i].parent_class;
    const auto first = static_cast<std::int32_t>(b.vertices_.size());
    for (auto d : stars[vtype.pos()]) {
      const auto& dc = g.cls(d);
      const auto n = *dc.mult.value();
      for (std::int64_t j = (i > 0 && d == pclass) ? 1 : 0; j < n; ++j) {
        BallVertex c;
        c.type = dc.to;
        c.depth = depth + 1;
        c.parent = VertexId(static_cast<std::int32_t>(i));
        c.down_class = d;
        c.down_index = static_cast<std::int32_t>(j);
        c.parent_class = dc.reverse;
        b.vertices_.push_back(c);
      }
    }
    check_budget(b.vertices_.size(), budget, "downstairs");
    b.vertices_[i].child_begin = first;
    b.vertices_[i].child_end = static_cast<std::int32_t>(b.vertices_.size());
    b.vertices_[i].expanded = true;
  }
  b.finalize();
  return b;
}

MappedBallPair BallBuilder::pair(const Ptp& ptp, TypeIndex base_type, const ExpansionOptions& opt) {
  if (opt.radius < 0) throw Error(ErrorKind::InvalidInput, "radius must be nonnegative");
  if (opt.omega_cap < 1) throw Error(ErrorKind::InvalidInput, "omega_cap must be at least 1");
  if (!base_type.valid() || base_type.pos() >= ptp.upstairs().type_count())
    throw Error(ErrorKind::InvalidInput, "unknown upstairs base type");
  const auto& g = ptp.upstairs();

  MappedBallPair p;
  p.down = down(ptp, ptp.image_type(base_type), opt.radius, opt.budget);
  Ball& b = p.up;
  b.radius_ = opt.radius;
  b.omega_cap_ = opt.omega_cap;
  b.complete_ = !opt.corridor && !opt.dedup;
  BallVertex root;
  root.type = base_type;
  b.vertices_.push_back(root);
  p.vmap.push_back(p.down.base());
  p.image_edge.push_back(EdgeId());

  std::vector<std::vector<ClassIndex>> stars(g.type_count());
  std::vector<std::vector<std::size_t>> cells_at(g.type_count());
  for (std::size_t t = 0; t < g.type_count(); ++t) {
    stars[t] = g.star(TypeIndex(static_cast<std::int32_t>(t)));
    cells_at[t] = ptp.cells_at(TypeIndex(static_cast<std::int32_t>(t)));
  }
  std::set<std::pair<std::int32_t, std::int32_t>> seen;  // (entering edge image, entering class)

  for (std::size_t i = 0; i < b.vertices_.size(); ++i) {
    if (b.vertices_[i].depth >= opt.radius) continue;
    const VertexId here(static_cast<std::int32_t>(i));
    const auto image = p.vmap[i];
    if (i > 0) {
      if (opt.corridor && !opt.corridor(image)) continue;
      if (opt.dedup && !seen.emplace(p.image_edge[i].value, b.vertices_[i].parent_class.value).second) continue;
    }
    const auto vtype = b.vertices_[i].type;
    const auto depth = b.vertices_[i].depth;
    const auto pclass = b.vertices_[i].parent_class;

    std::optional<std::pair<std::size_t, std::int64_t>> entry;
    if (i > 0) {
      const auto sigma = p.down.edge(Ball::reverse(p.image_edge[i]));
      entry.emplace(ptp.cell_of(pclass), sigma.index);
    }
    const auto& here_cells = cells_at[vtype.pos()];
    const auto layout = cell_layout(ptp, here_cells, entry);

    const auto first = static_cast<std::int32_t>(b.vertices_.size());
    for (auto c : stars[vtype.pos()]) {
      const auto& uc = g.cls(c);
      const std::int64_t n = uc.mult.is_omega() ? opt.omega_cap : *uc.mult.value();
      if (uc.mult.is_omega()) b.truncated_ = true;
      const auto ci = ptp.cell_of(c);
      const auto& cell = ptp.cells()[ci];
      const auto& slots = layout[static_cast<std::size_t>(
          std::find(here_cells.begin(), here_cells.end(), ci) - here_cells.begin())];
      const auto k = static_cast<std::int64_t>(slots.size());
      const auto fiber = std::find_if(cell.sources.begin(), cell.sources.end(),
                                      [&](const CellSource& s) { return s.cls == c; })->fiber;
      // Instances per target slot; a capped OMEGA fiber still collapses.
      const std::int64_t quota = fiber.is_finite() ? *fiber.value() : std::max<std::int64_t>(2, (n + k - 1) / k);

      for (std::int64_t j = (i > 0 && c == pclass) ? 1 : 0; j < n; ++j) {
        const auto slot = slots[static_cast<std::size_t>(std::min(j / quota, k - 1))];
        const auto de = p.down.find_out_edge(image, cell.target, static_cast<std::int32_t>(slot));
        if (!de) throw Error(ErrorKind::Consistency, "downstairs ball lacks the image of an upstairs edge");
        BallVertex child;
        child.type = uc.to;
        child.depth = depth + 1;
        child.parent = here;
        child.down_class = c;
        child.down_index = static_cast<std::int32_t>(j);
        child.parent_class = uc.reverse;
        b.vertices_.push_back(child);
        p.vmap.push_back(p.down.edge(*de).target);
        p.image_edge.push_back(*de);
      }
    }
    check_budget(b.vertices_.size(), opt.budget, "upstairs");
    b.vertices_[i].child_begin = first;
    b.vertices_[i].child_end = static_cast<std::int32_t>(b.vertices_.size());
    b.vertices_[i].expanded = true;
  }
  b.finalize();
  return p;
}

Ball expand_down(const Ptp& ptp, TypeIndex type, std::int32_t radius, std::size_t budget) {
  return BallBuilder::down(ptp, type, radius, budget);
}

MappedBallPair expand_pair(const Ptp& ptp, TypeIndex base_type, const ExpansionOptions& options) {
  return BallBuilder::pair(ptp, base_type, options);
}

// ---------------------------------------------------------------------------
// Geometry

RayInstance geodesic(const Ball& ball, VertexId u, VertexId v) {
  if (!ball.contains(u) || !ball.contains(v)) throw Error(ErrorKind::InvalidInput, "geodesic: vertex not in ball");
  std::vector<VertexId> up_part{u}, down_part{v};
  while (up_part.back() != down_part.back()) {
    const auto a = up_part.back(), b = down_part.back();
    if (ball.vertex(a).depth >= ball.vertex(b).depth) up_part.push_back(ball.vertex(a).parent);
    else down_part.push_back(ball.vertex(b).parent);
  }
  RayInstance r;
  r.vertices = up_part;
  for (std::size_t i = 0; i + 1 < up_part.size(); ++i) r.edges.push_back(ball.parent_edge(up_part[i]));
  for (std::size_t i = down_part.size() - 1; i-- > 0;) {
    r.vertices.push_back(down_part[i]);
    r.edges.push_back(ball.child_edge(down_part[i]));
  }
  return r;
}

RayInstance follow_steps(const Ball& ball, std::span<const Step> steps) {
  RayInstance r;
  r.vertices.push_back(ball.base());
  for (const auto& s : steps) {
    const auto cur = r.vertices.back();
    auto e = ball.find_out_edge(cur, s.cls, s.index);
    if (!e) {
      if (!ball.vertex(cur).expanded)
        throw BallTooShallow("path leaves the ball at depth " + std::to_string(ball.vertex(cur).depth),
                             ball.vertex(cur).depth + 1);
      throw Error(ErrorKind::InvalidInput, "path names an instance that does not exist");
    }
    if (cur.value > 0 && *e == ball.parent_edge(cur))
      throw Error(ErrorKind::InvalidInput, "path backtracks");
    r.edges.push_back(*e);
    r.vertices.push_back(ball.edge(*e).target);
  }
  return r;
}

RayInstance ray_toward(const Ball& ball, const EndSpec& end, std::size_t length) {
  const auto steps = end.steps(length);
  return follow_steps(ball, steps);
}

namespace {

void check_tau(const Ball& ball, const RayInstance& tau) {
  if (tau.vertices.empty()) throw Error(ErrorKind::InvalidInput, "busemann: tau is empty");
  if (tau.vertices.front() != ball.base()) throw Error(ErrorKind::InvalidInput, "busemann: tau must start at the base");
}

}  // namespace

std::int32_t busemann(const Ball& ball, const RayInstance& tau, VertexId p) {
  check_tau(ball, tau);
  if (!ball.contains(p)) throw Error(ErrorKind::InvalidInput, "busemann: vertex not in ball");
  const auto len = static_cast<std::int32_t>(tau.vertices.size()) - 1;
  auto a = ball.ancestor_at_depth(p, std::min(len, ball.vertex(p).depth));
  while (tau.vertices[static_cast<std::size_t>(ball.vertex(a).depth)] != a) a = ball.vertex(a).parent;
  const auto m = ball.vertex(a).depth;
  return m - (ball.vertex(p).depth - m);
}

std::vector<std::int32_t> busemann_all(const Ball& ball, const RayInstance& tau) {
  check_tau(ball, tau);
  std::vector<std::int32_t> beta(ball.vertex_count(), 0);
  for (std::size_t i = 1; i < ball.vertex_count(); ++i) {
    const VertexId w(static_cast<std::int32_t>(i));
    const auto d = ball.vertex(w).depth;
    const bool on_ray = static_cast<std::size_t>(d) < tau.vertices.size() && tau.vertices[static_cast<std::size_t>(d)] == w;
    beta[i] = on_ray ? d : beta[ball.vertex(w).parent.pos()] - 1;
  }
  return beta;
}

std::vector<VertexId> horoball_filter(const Ball& ball, const RayInstance& tau, std::int32_t r) {
  const auto beta = busemann_all(ball, tau);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] >= r) out.emplace_back(static_cast<std::int32_t>(i));
  return out;
}

}  // namespace sigmatree
