#include "sigmatree/report.hpp"

#include <algorithm>
#include <map>

namespace sigmatree {

const char* tool_version() { return SIGMATREE_VERSION; }

namespace {

Json mult_json(Multiplicity m) {
  if (m.is_omega()) return "omega";
  return *m.value();
}

Json issues(const std::vector<ValidationIssue>& v) {
  Json a = Json::array();
  for (const auto& i : v) a.push_back({{"code", i.code}, {"message", i.message}, {"ids", i.ids}});
  return a;
}

Json class_ids(const TypedGraph& g, const std::vector<ClassIndex>& v) {
  Json a = Json::array();
  for (auto c : v) a.push_back(g.cls(c).id);
  return a;
}

Json end_json(const Ptp& ptp, const EndSpec& e) {
  const auto& g = ptp.downstairs();
  auto steps = [&](const std::vector<Step>& s) {
    Json a = Json::array();
    for (const auto& st : s) a.push_back({{"class", g.cls(st.cls).id}, {"index", st.index}});
    return a;
  };
  return {{"spec", format_end(ptp, e)},
          {"base_type", g.type_id(e.base_type)},
          {"prefix", steps(e.prefix)},
          {"cycle", steps(e.cycle)}};
}

Json path_json(const RayInstance& r) {
  Json v = Json::array(), e = Json::array();
  for (auto x : r.vertices) v.push_back(x.value);
  for (auto x : r.edges) e.push_back(x.value);
  return {{"vertices", v}, {"edges", e}};
}

}  // namespace

Json to_json(const ValidationReport& r) {
  return {{"ok", r.ok()}, {"errors", issues(r.errors)}, {"warnings", issues(r.warnings)}};
}

Json to_json(const Ptp& ptp, const LocalProperties& lp) {
  Json def = Json::array();
  for (const auto& d : lp.deficiencies)
    def.push_back({{"upstairs_type", ptp.upstairs().type_id(d.upstairs_type)},
                   {"target", ptp.downstairs().cls(d.target).id},
                   {"covered", d.covered},
                   {"required", d.required}});
  Json unreached = Json::array();
  for (auto t : lp.unreached_types) unreached.push_back(ptp.downstairs().type_id(t));
  Json collapsing = Json::array();
  for (auto ci : lp.collapsing_cells) {
    const auto& c = ptp.cells()[ci];
    Json src = Json::array();
    for (const auto& s : c.sources) src.push_back(ptp.upstairs().cls(s.cls).id);
    collapsing.push_back({{"cell", ci},
                          {"at", ptp.upstairs().type_id(c.at)},
                          {"target", ptp.downstairs().cls(c.target).id},
                          {"sources", src},
                          {"preimages", mult_json(c.preimage_count())}});
  }
  Json up_deg = Json::object(), down_deg = Json::object();
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t) {
    const TypeIndex ti(static_cast<std::int32_t>(t));
    up_deg[ptp.upstairs().type_id(ti)] = mult_json(ptp.upstairs().star_size(ti));
  }
  for (std::size_t t = 0; t < ptp.downstairs().type_count(); ++t) {
    const TypeIndex ti(static_cast<std::int32_t>(t));
    down_deg[ptp.downstairs().type_id(ti)] = mult_json(ptp.downstairs().star_size(ti));
  }
  return {{"locally_surjective", lp.locally_surjective},
          {"deficiencies", def},
          {"unreached_types", unreached},
          {"locally_injective", lp.locally_injective},
          {"collapsing_cells", collapsing},
          {"upstairs_degree", up_deg},
          {"downstairs_degree", down_deg}};
}

Json to_json(const ApplicabilityReport& a) {
  return {{"upstairs_minimal", a.upstairs_minimal},
          {"downstairs_locally_finite", a.downstairs_locally_finite},
          {"locally_surjective", a.locally_surjective},
          {"not_locally_injective", a.not_locally_injective},
          {"main_theorem_applies", a.main_theorem_applies}};
}

Json to_json(const Ptp& ptp, const MarkedSet& m) {
  const auto& g = ptp.downstairs();
  Json a = Json::array();
  for (std::size_t i = 0; i < m.status.size(); ++i) {
    const ClassIndex c(static_cast<std::int32_t>(i));
    a.push_back({{"type", g.type_id(g.cls(c).from)}, {"class", g.cls(c).id}, {"status", to_string(m.status[i])}});
  }
  return a;
}

Json to_json(const Ptp& ptp, const CleanSet& c) {
  const auto& g = ptp.downstairs();
  Json pairs = Json::array(), levels = Json::object();
  for (std::size_t i = 0; i < c.clean.size(); ++i) {
    const ClassIndex ci(static_cast<std::int32_t>(i));
    if (c.clean[i]) pairs.push_back({{"type", g.type_id(g.cls(ci).from)}, {"class", g.cls(ci).id}});
    else levels[g.cls(ci).id] = c.level[i];
  }
  return {{"pairs", pairs}, {"deletion_levels", levels}, {"rounds", c.rounds}};
}

Json to_json(const Ptp& ptp, const Classification& c) {
  const auto& g = ptp.downstairs();
  Json cycles = Json::array();
  for (const auto& cyc : c.cycles) cycles.push_back(class_ids(g, cyc));
  Json nodes = Json::array(), steps = Json::array();
  for (std::size_t i = 0; i < c.graph.nodes.size(); ++i)
    nodes.push_back({{"class", g.cls(c.graph.nodes[i]).id}, {"start", static_cast<bool>(c.graph.start[i])}});
  for (const auto& [a, b] : c.graph.steps) steps.push_back({g.cls(a).id, g.cls(b).id});
  return {{"kind", to_string(c.kind)},
          {"candidate", c.candidate ? end_json(ptp, *c.candidate) : Json()},
          {"reason", c.reason.empty() ? Json() : Json(c.reason)},
          {"multiple_unfaced_ends", c.multiple_unfaced_ends},
          {"cycles", cycles},
          {"viability", {{"nodes", nodes}, {"steps", steps}}}};
}

Json to_json(const Ptp& ptp, const std::vector<OracleRun>& runs) {
  Json a = Json::array();
  for (const auto& r : runs) {
    Json unfaced = Json::array();
    for (const auto& cone : r.report.cones)
      if (!cone.faced) unfaced.push_back(cone.vertex.value);
    Json unfaced_vertices = Json::array();
    for (auto v : r.report.unfaced_vertices) unfaced_vertices.push_back(v.value);
    a.push_back({{"down_type", ptp.downstairs().type_id(r.down_type)},
                 {"radius", r.radius},
                 {"depth", r.report.depth},
                 {"truncated", r.report.truncated},
                 {"marked_edges", r.report.marked_edges},
                 {"cones", r.report.cones.size()},
                 {"unfaced_cones", unfaced},
                 {"predicted_unfaced", unfaced_cone_count(ptp, r.down_type, r.report.depth)},
                 {"unfaced_vertices", unfaced_vertices}});
  }
  return a;
}

Json to_json(const WitnessSearch& ws) {
  const auto& w = ws.witness;
  return {{"apex", w.apex.value},
          {"pair", {w.first.value, w.second.value}},
          {"image", w.image.value},
          {"lag", w.lag},
          {"apex_busemann", w.apex_busemann},
          {"ray1", path_json(w.ray1)},
          {"ray2", path_json(w.ray2)},
          {"probes", {w.probe1.value, w.probe2.value}},
          {"separated_at_minus_lag", separated(ws.pair, ws.tau, -w.lag, w.probe1, w.probe2)},
          {"verified", w.verified}};
}

Json to_json(const MappedBallPair&, const LiftTree& t) {
  Json roots = Json::array(), branching = Json::array(), lifts = Json::array();
  for (auto e : t.root_edges) roots.push_back(e.value);
  for (const auto& level : t.branching) branching.push_back(level);
  for (const auto& l : t.lifts) lifts.push_back(path_json(l));
  return {{"root_edges", roots}, {"branching", branching}, {"count", t.count()}, {"lifts", lifts}};
}

Json degree_summary(const Ptp& ptp, const MappedBallPair& pair) {
  auto side = [](const Ball& b, const TypedGraph& g) {
    std::map<std::string, std::vector<std::int64_t>> by_type;
    for (std::size_t i = 0; i < b.vertex_count(); ++i) {
      const VertexId v(static_cast<std::int32_t>(i));
      const auto& vv = b.vertex(v);
      if (!vv.expanded || vv.depth >= b.radius()) continue;
      by_type[g.type_id(vv.type)].push_back(static_cast<std::int64_t>(b.out_edges(v).size()));
    }
    Json out = Json::object();
    for (auto& [t, ds] : by_type) {
      std::sort(ds.begin(), ds.end());
      ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
      out[t] = ds;
    }
    return out;
  };
  return {{"radius", pair.up.radius()},
          {"omega_cap", pair.up.omega_cap()},
          {"truncated", pair.up.truncated()},
          {"up_vertices", pair.up.vertex_count()},
          {"down_vertices", pair.down.vertex_count()},
          {"up_interior_degrees", side(pair.up, ptp.upstairs())},
          {"down_interior_degrees", side(pair.down, ptp.downstairs())}};
}

Json base_report(const std::string& input, const Ptp& ptp, const Verdict& v, const ValidationReport& vr) {
  return {{"tool_version", tool_version()},
          {"input", input},
          {"name", ptp.name()},
          {"validation", to_json(vr)},
          {"local_properties", to_json(ptp, local_properties(ptp))},
          {"applicability", to_json(v.applicability)},
          {"marked", to_json(ptp, v.marked)},
          {"clean", to_json(ptp, v.classification.clean)},
          {"classification", to_json(ptp, v.classification)},
          {"sigma1", to_string(v.sigma1)},
          {"consistency_violation", v.consistency_violation},
          {"notes", v.notes},
          {"oracle", nullptr},
          {"witness", nullptr}};
}

Json invalid_report(const std::string& input, const ValidationReport& r) {
  return {{"tool_version", tool_version()},
          {"input", input},
          {"name", nullptr},
          {"validation", to_json(r)},
          {"local_properties", nullptr},
          {"applicability", nullptr},
          {"marked", nullptr},
          {"clean", nullptr},
          {"classification", nullptr},
          {"sigma1", nullptr},
          {"consistency_violation", false},
          {"notes", Json::array()},
          {"oracle", nullptr},
          {"witness", nullptr}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sigmatree
