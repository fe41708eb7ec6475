#include "sigmatree/dot.hpp"

#include <map>
#include <set>
#include <sstream>

namespace sigmatree {

namespace {

void emit_ball(std::ostringstream& os, const Ball& ball, const TypedGraph& g, const DotStyle& style,
               const std::string& prefix, const std::string& indent) {
  const std::set<std::int32_t> marked = [&] {
    std::set<std::int32_t> s;
    for (auto e : style.marked) s.insert(e.value);
    return s;
  }();
  std::set<std::int32_t> spine;
  for (auto e : style.spine) {
    spine.insert(e.value);
    spine.insert(Ball::reverse(e).value);
  }
  for (std::size_t i = 0; i < ball.vertex_count(); ++i) {
    const auto& v = ball.vertex(VertexId(static_cast<std::int32_t>(i)));
    os << indent << '"' << prefix << i << "\" [label=\"" << g.type_id(v.type) << '@' << v.depth << "\"];\n";
  }
  for (std::size_t i = 1; i < ball.vertex_count(); ++i) {
    const VertexId w(static_cast<std::int32_t>(i));
    const auto down = ball.child_edge(w), up = ball.parent_edge(w);
    const auto& wv = ball.vertex(w);
    std::vector<std::string> attrs{"label=\"" + g.cls(wv.down_class).id + "\""};
    if (marked.count(up.value) && !marked.count(down.value)) attrs.emplace_back("dir=back");
    if (marked.count(up.value) && marked.count(down.value)) attrs.emplace_back("dir=both");
    if (marked.count(up.value) || marked.count(down.value)) attrs.emplace_back("color=red");
    else if (spine.count(down.value)) attrs.emplace_back("color=blue");
    os << indent << '"' << prefix << wv.parent.value << "\" -> \"" << prefix << i << "\" [";
    for (std::size_t a = 0; a < attrs.size(); ++a) os << (a ? ", " : "") << attrs[a];
    os << "];\n";
  }
}

}  // namespace

std::string ball_dot(const Ball& ball, const TypedGraph& g, const DotStyle& style) {
  std::ostringstream os;
  os << "digraph ball {\n  node [shape=circle, fontsize=10];\n";
  emit_ball(os, ball, g, style, "v", "  ");
  os << "}\n";
  return os.str();
}

std::string pair_dot(const Ptp& ptp, const MappedBallPair& pair, const DotStyle& down_style) {
  std::ostringstream os;
  os << "digraph pair {\n  node [shape=circle, fontsize=10];\n";
  os << "  subgraph cluster_up {\n    label=\"upstairs\";\n";
  emit_ball(os, pair.up, ptp.upstairs(), {}, "u", "    ");
  os << "  }\n  subgraph cluster_down {\n    label=\"downstairs\";\n";
  emit_ball(os, pair.down, ptp.downstairs(), down_style, "d", "    ");
  os << "  }\n";
  for (std::size_t i = 0; i < pair.up.vertex_count(); ++i)
    os << "  \"u" << i << "\" -> \"d" << pair.vmap[i].value << "\" [style=dashed, color=gray, constraint=false];\n";
  os << "}\n";
  return os.str();
}

std::string lift_dot(const Ptp& ptp, const MappedBallPair& pair, const LiftTree& tree) {
  const Ball& up = pair.up;
  std::set<std::int32_t> vertices;
  std::set<std::pair<std::int32_t, std::int32_t>> edges;
  std::map<std::int32_t, std::set<std::int32_t>> next;
  for (const auto& l : tree.lifts) {
    for (auto v : l.vertices) vertices.insert(v.value);
    for (auto e : l.edges) {
      const auto be = up.edge(e);
      edges.emplace(be.source.value, be.target.value);
      next[be.source.value].insert(be.target.value);
    }
  }
  std::ostringstream os;
  os << "digraph lifts {\n  node [shape=circle, fontsize=10];\n";
  for (auto v : vertices) {
    const auto& vv = up.vertex(VertexId(v));
    os << "  \"u" << v << "\" [label=\"" << ptp.upstairs().type_id(vv.type) << '@' << vv.depth << "\"";
    if (next[v].size() >= 2) os << ", style=filled, fillcolor=orange";
    os << "];\n";
  }
  for (const auto& [a, b] : edges) os << "  \"u" << a << "\" -> \"u" << b << "\";\n";
  os << "}\n";
  return os.str();
}

std::string witness_dot(const Ptp& ptp, const WitnessSearch& ws) {
  const Ball& up = ws.pair.up;
  const auto& w = ws.witness;
  std::set<std::int32_t> vertices;
  for (const auto* r : {&w.ray1, &w.ray2})
    for (auto v : r->vertices) vertices.insert(v.value);
  std::ostringstream os;
  os << "digraph witness {\n  node [shape=circle, fontsize=10];\n";
  for (auto v : vertices) {
    const auto& vv = up.vertex(VertexId(v));
    os << "  \"u" << v << "\" [label=\"" << ptp.upstairs().type_id(vv.type) << '@' << vv.depth << "\"";
    if (VertexId(v) == w.apex) os << ", style=filled, fillcolor=red";
    else if (VertexId(v) == w.probe1 || VertexId(v) == w.probe2) os << ", style=filled, fillcolor=green";
    os << "];\n";
  }
  for (const auto* r : {&w.ray1, &w.ray2})
    for (auto e : r->edges) {
      const auto be = up.edge(e);
      os << "  \"u" << be.source.value << "\" -> \"u" << be.target.value << "\" [label=\""
         << ptp.upstairs().cls(be.cls).id << "\"" << (r == &w.ray1 ? ", color=blue" : ", color=purple") << "];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace sigmatree
