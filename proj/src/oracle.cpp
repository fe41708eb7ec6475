#include "sigmatree/oracle.hpp"

#include <algorithm>
#include <map>

#include "sigmatree/classifier.hpp"
#include "sigmatree/error.hpp"

namespace sigmatree {

std::vector<CollapsingPair> concrete_collapsing_pairs(const MappedBallPair& pair) {
  std::vector<CollapsingPair> out;
  const Ball& up = pair.up;
  for (std::size_t i = 0; i < up.vertex_count(); ++i) {
    const VertexId v(static_cast<std::int32_t>(i));
    if (!up.vertex(v).expanded) continue;
    std::map<std::int32_t, std::vector<EdgeId>> by_image;
    for (auto e : up.out_edges(v)) by_image[pair.image(e).value].push_back(e);
    for (const auto& [img, edges] : by_image)
      if (edges.size() >= 2) out.push_back({v, edges[0], edges[1], EdgeId(img)});
  }
  return out;
}

std::vector<EdgeId> concrete_marked_edges(const MappedBallPair& pair) {
  std::vector<EdgeId> out;
  for (const auto& cp : concrete_collapsing_pairs(pair)) out.push_back(cp.image);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConeReport brute_face_scan(const MappedBallPair& pair, std::int32_t depth, const std::vector<EdgeId>& extra_marks) {
  const Ball& down = pair.down;
  if (depth < 0 || depth > down.radius())
    throw Error(ErrorKind::InvalidInput, "scan depth " + std::to_string(depth) + " outside the ball radius " +
                std::to_string(down.radius()));
  ConeReport rep;
  rep.depth = depth;
  rep.truncated = pair.up.truncated();

  std::vector<bool> marked(down.edge_count(), false);
  for (auto e : concrete_marked_edges(pair)) marked[static_cast<std::size_t>(e.value)] = true;
  for (auto e : extra_marks) marked.at(static_cast<std::size_t>(e.value)) = true;
  rep.marked_edges = static_cast<std::size_t>(std::count(marked.begin(), marked.end(), true));

  // Per vertex w > 0: is its downward (parent -> w) or upward (w -> parent)
  // edge marked. Then path prefix sums and subtree sums.
  const auto n = down.vertex_count();
  std::vector<std::int64_t> dn(n, 0), upm(n, 0), path_dn(n, 0), path_up(n, 0), sub_up(n, 0);
  std::int64_t total_up = 0;
  std::vector<VertexId> up_sources;
  for (std::size_t i = 1; i < n; ++i) {
    const VertexId w(static_cast<std::int32_t>(i));
    dn[i] = marked[static_cast<std::size_t>(down.child_edge(w).value)];
    upm[i] = marked[static_cast<std::size_t>(down.parent_edge(w).value)];
    const auto p = down.vertex(w).parent.pos();
    path_dn[i] = path_dn[p] + dn[i];
    path_up[i] = path_up[p] + upm[i];
    total_up += upm[i];
    if (upm[i]) up_sources.push_back(w);
  }
  for (std::size_t i = n; i-- > 1;) {
    sub_up[i] += upm[i];
    sub_up[down.vertex(VertexId(static_cast<std::int32_t>(i))).parent.pos()] += sub_up[i];
  }

  for (std::size_t i = 0; i < n; ++i) {
    const VertexId u(static_cast<std::int32_t>(i));
    const auto d = down.vertex(u).depth;
    const bool vertex_faced = path_dn[i] > 0 || total_up - path_up[i] > 0;
    if (!vertex_faced && d <= depth) rep.unfaced_vertices.push_back(u);
    if (d != depth) continue;
    Cone cone;
    cone.vertex = u;
    const auto outside_up = total_up - path_up[i] - (sub_up[i] - upm[i]);
    cone.faced = path_dn[i] > 0 || outside_up > 0;
    if (path_dn[i] > 0) {
      for (auto w = u; w.value > 0; w = down.vertex(w).parent)
        if (dn[w.pos()]) cone.witness = down.child_edge(w);  // keeps the shallowest
    } else if (outside_up > 0) {
      for (auto w : up_sources)
        if (!down.is_ancestor(w, u) && !down.is_ancestor(u, w)) {
          cone.witness = down.parent_edge(w);
          break;
        }
    }
    if (!cone.faced) ++rep.unfaced;
    rep.cones.push_back(cone);
  }
  return rep;
}

namespace {

std::vector<bool> preimage_of_horoball(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r) {
  const auto beta = busemann_all(pair.down, tau);
  std::vector<bool> in(pair.up.vertex_count());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = beta[pair.vmap[i].pos()] >= r;
  return in;
}

}  // namespace

bool brute_connectivity_check(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r) {
  const auto in = preimage_of_horoball(pair, tau, r);
  // A subforest of a tree is connected iff it has exactly one edge fewer
  // than vertices.
  std::size_t vertices = 0, edges = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i]) continue;
    ++vertices;
    if (i > 0 && in[pair.up.vertex(VertexId(static_cast<std::int32_t>(i))).parent.pos()]) ++edges;
  }
  return vertices > 0 && edges + 1 == vertices;
}

bool separated(const MappedBallPair& pair, const RayInstance& tau, std::int32_t r, VertexId a, VertexId b) {
  const auto in = preimage_of_horoball(pair, tau, r);
  for (auto v : geodesic(pair.up, a, b).vertices)
    if (!in[v.pos()]) return true;
  return false;
}

std::vector<OracleRun> run_oracle(const Ptp& ptp, const OracleOptions& options) {
  if (options.depth < 0) throw Error(ErrorKind::InvalidInput, "oracle depth must be nonnegative");
  auto margin = options.margin;
  if (margin < 0) margin = clean_pairs(ptp, marked_classes(ptp), MarkPolicy::Any).max_level() + 2;
  std::vector<OracleRun> runs;
  for (std::size_t t = 0; t < ptp.downstairs().type_count(); ++t) {
    const TypeIndex down_type(static_cast<std::int32_t>(t));
    std::vector<TypeIndex> over;
    for (std::size_t s = 0; s < ptp.upstairs().type_count(); ++s)
      if (ptp.image_type(TypeIndex(static_cast<std::int32_t>(s))) == down_type)
        over.emplace_back(static_cast<std::int32_t>(s));
    if (over.empty()) continue;
    ExpansionOptions opt;
    opt.radius = options.depth + margin;
    opt.omega_cap = options.omega_cap;
    opt.budget = options.budget;
    opt.dedup = true;
    std::vector<EdgeId> pooled;
    std::optional<MappedBallPair> first;
    bool truncated = false;
    for (auto up_type : over) {
      auto pair = expand_pair(ptp, up_type, opt);
      truncated = truncated || pair.up.truncated();
      if (!first) {
        first = std::move(pair);
      } else {
        auto marks = concrete_marked_edges(pair);
        pooled.insert(pooled.end(), marks.begin(), marks.end());
      }
    }
    OracleRun run;
    run.down_type = down_type;
    run.radius = opt.radius;
    run.report = brute_face_scan(*first, options.depth, pooled);
    run.report.truncated = truncated;
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace sigmatree
