#include "sigmatree/classifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace sigmatree {

const char* to_string(MarkStatus s) {
  switch (s) {
    case MarkStatus::Unmarked: return "Unmarked";
    case MarkStatus::FullyMarked: return "FullyMarked";
    case MarkStatus::PartiallyMarked: return "PartiallyMarked";
  }
  return "?";
}

const char* to_string(ClassificationKind k) {
  switch (k) {
    case ClassificationKind::AllFaced: return "AllFaced";
    case ClassificationKind::UniqueCandidate: return "UniqueCandidate";
    case ClassificationKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Facing f) {
  switch (f) {
    case Facing::Faced: return "Faced";
    case Facing::Unfaced: return "Unfaced";
    case Facing::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Sigma1 s) {
  switch (s) {
    case Sigma1::Empty: return "Empty";
    case Sigma1::AtMostOne: return "AtMostOne";
    case Sigma1::Unknown: return "Unknown";
  }
  return "?";
}

bool MarkedSet::any_partial() const {
  return std::find(status.begin(), status.end(), MarkStatus::PartiallyMarked) != status.end();
}

MarkedSet marked_classes(const Ptp& ptp) {
  const auto& down = ptp.downstairs();
  MarkedSet m;
  m.status.assign(down.class_count(), MarkStatus::Unmarked);
  // Coverage by collapsing cells, per (upstairs type, target class). Every
  // vertex of type V has preimages of each upstairs type over V, so one type
  // covering all of mult(d) marks every instance of d.
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> covered;
  for (const auto& cell : ptp.cells()) {
    if (!cell.collapsing()) continue;
    covered[{cell.at.value, cell.target.value}] += *cell.coverage.value();
  }
  for (const auto& [key, k] : covered) {
    const ClassIndex d(key.second);
    auto& st = m.status[d.pos()];
    if (k >= *down.cls(d).mult.value()) st = MarkStatus::FullyMarked;
    else if (st == MarkStatus::Unmarked) st = MarkStatus::PartiallyMarked;
  }
  return m;
}

std::int32_t CleanSet::max_level() const {
  std::int32_t best = 0;
  for (auto l : level) best = std::max(best, l);
  return best;
}

namespace {

struct Context {
  const Ptp& ptp;
  const TypedGraph& g;
  std::vector<bool> mk;  // marked under the policy
  std::vector<std::vector<ClassIndex>> stars;

  Context(const Ptp& p, const MarkedSet& marked, MarkPolicy policy) : ptp(p), g(p.downstairs()) {
    mk.resize(g.class_count());
    for (std::size_t i = 0; i < g.class_count(); ++i) {
      const auto s = marked.status[i];
      mk[i] = s == MarkStatus::FullyMarked || (policy == MarkPolicy::Any && s == MarkStatus::PartiallyMarked);
    }
    for (std::size_t t = 0; t < g.type_count(); ++t) stars.push_back(g.star(TypeIndex(static_cast<std::int32_t>(t))));
  }

  std::int64_t mult(ClassIndex c) const { return *g.cls(c).mult.value(); }
  ClassIndex rev(ClassIndex c) const { return g.cls(c).reverse; }
  const std::vector<ClassIndex>& star_from(ClassIndex c) const { return stars[g.cls(c).from.pos()]; }
  const std::vector<ClassIndex>& star_to(ClassIndex c) const { return stars[g.cls(c).to.pos()]; }

  /// Concrete instances of next available after entering through d.
  std::int64_t continuations(ClassIndex d, ClassIndex next) const {
    return mult(next) - (next == rev(d) ? 1 : 0);
  }

  /// A ray may continue from edge d into edge next with every hanging
  /// subtree at the shared vertex clean.
  bool step_valid(const CleanSet& cs, ClassIndex d, ClassIndex next) const {
    if (g.cls(next).from != g.cls(d).to) return false;
    if (mk[next.pos()]) return false;
    if (continuations(d, next) < 1) return false;
    for (auto c : star_to(d)) {
      const auto r = mult(c) - (c == rev(d) ? 1 : 0) - (c == next ? 1 : 0);
      if (r >= 1 && !cs.contains(rev(c))) return false;
    }
    return true;
  }
};

CleanSet compute_clean(const Context& cx) {
  const auto n = cx.g.class_count();
  CleanSet cs;
  cs.clean.assign(n, true);
  cs.level.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (cx.mk[i]) {
      cs.clean[i] = false;
      cs.level[i] = 0;
    }
  // Synchronous rounds: round k removes exactly the pairs whose nearest
  // parent-ward mark sits k levels down.
  for (std::int32_t round = 1;; ++round) {
    std::vector<std::size_t> doomed;
    for (std::size_t i = 0; i < n; ++i) {
      if (!cs.clean[i]) continue;
      const ClassIndex p(static_cast<std::int32_t>(i));
      for (auto c : cx.star_from(p)) {
        if (cx.mult(c) - (c == p ? 1 : 0) < 1) continue;
        if (!cs.clean[cx.rev(c).pos()]) {
          doomed.push_back(i);
          break;
        }
      }
    }
    if (doomed.empty()) break;
    for (auto i : doomed) {
      cs.clean[i] = false;
      cs.level[i] = round;
    }
    cs.rounds = round;
  }
  return cs;
}

std::vector<std::string> ids_of(const TypedGraph& g, const std::vector<ClassIndex>& cycle) {
  std::vector<std::string> out;
  for (auto c : cycle) out.push_back(g.cls(c).id);
  return out;
}

std::vector<ClassIndex> canonical_rotation(const TypedGraph& g, std::vector<ClassIndex> cycle) {
  auto best = cycle;
  for (std::size_t r = 1; r < cycle.size(); ++r) {
    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    if (ids_of(g, cycle) < ids_of(g, best)) best = cycle;
  }
  return best;
}

/// Shortest path inside `allowed` from `from` back to `target`, as the list
/// of nodes after `target`: target -> first -> ... -> target.
std::vector<ClassIndex> close_cycle(const std::vector<std::vector<std::int32_t>>& succ,
                                    const std::vector<bool>& allowed, std::int32_t target, std::int32_t first) {
  std::map<std::int32_t, std::int32_t> prev;
  std::queue<std::int32_t> q;
  q.push(first);
  prev[first] = -1;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (v == target) break;
    for (auto w : succ[static_cast<std::size_t>(v)]) {
      if (!allowed[static_cast<std::size_t>(w)] || prev.count(w)) continue;
      prev[w] = v;
      q.push(w);
    }
  }
  std::vector<ClassIndex> path;
  for (auto v = target; v != -1; v = prev.at(v)) path.emplace_back(v);
  std::reverse(path.begin(), path.end());
  // path = first ... target; the cycle is target, first, ..., (before target)
  path.pop_back();
  path.insert(path.begin(), ClassIndex(target));
  return path;
}

}  // namespace

CleanSet clean_pairs(const Ptp& ptp, const MarkedSet& marked, MarkPolicy policy) {
  return compute_clean(Context(ptp, marked, policy));
}

Classification classify_ends(const Ptp& ptp, const MarkedSet& marked, MarkPolicy policy) {
  const Context cx(ptp, marked, policy);
  const auto& g = cx.g;
  const auto n = g.class_count();
  Classification out;
  out.clean = compute_clean(cx);

  // Viability digraph on unmarked classes.
  std::vector<std::vector<std::int32_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cx.mk[i]) continue;
    const ClassIndex d(static_cast<std::int32_t>(i));
    out.graph.nodes.push_back(d);
    out.graph.start.push_back(out.clean.contains(d));
    for (auto next : cx.star_to(d)) {
      if (!cx.step_valid(out.clean, d, next)) continue;
      succ[i].push_back(next.value);
      out.graph.steps.emplace_back(d, next);
    }
  }

  // Every node reachable from a clean node is clean, so the relevant part is
  // the subgraph on clean nodes. Tarjan's algorithm over it.
  const auto& live = out.clean.clean;
  std::vector<std::int32_t> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::int32_t> stack;
  std::int32_t counter = 0, ncomp = 0;
  std::function<void(std::int32_t)> strong = [&](std::int32_t v) {
    const auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (auto w : succ[vi]) {
      const auto wi = static_cast<std::size_t>(w);
      if (!live[wi]) continue;
      if (index[wi] < 0) {
        strong(w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      std::int32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        comp[static_cast<std::size_t>(w)] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    if (live[i] && index[i] < 0) strong(static_cast<std::int32_t>(i));

  // Nontrivial components: more than one node, or a self-loop.
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(ncomp));
  for (std::size_t i = 0; i < n; ++i)
    if (live[i]) members[static_cast<std::size_t>(comp[i])].push_back(static_cast<std::int32_t>(i));
  std::vector<std::int32_t> cyclic;
  for (std::int32_t c = 0; c < ncomp; ++c) {
    const auto& mem = members[static_cast<std::size_t>(c)];
    const auto v = static_cast<std::size_t>(mem.front());
    const bool self = std::find(succ[v].begin(), succ[v].end(), mem.front()) != succ[v].end();
    if (mem.size() > 1 || self) cyclic.push_back(c);
  }

  if (cyclic.empty()) {
    out.kind = ClassificationKind::AllFaced;
    return out;
  }

  auto in_comp = [&](std::int32_t c) {
    std::vector<bool> a(n, false);
    for (auto v : members[static_cast<std::size_t>(c)]) a[static_cast<std::size_t>(v)] = true;
    return a;
  };
  auto add_cycle = [&](std::vector<ClassIndex> cyc) {
    cyc = canonical_rotation(g, std::move(cyc));
    if (std::find(out.cycles.begin(), out.cycles.end(), cyc) == out.cycles.end()) out.cycles.push_back(cyc);
  };
  auto multiple = [&](const std::string& why) {
    out.kind = ClassificationKind::Inconclusive;
    out.multiple_unfaced_ends = true;
    out.reason = why;
    return out;
  };

  // One cycle per component, and a second one inside any component that
  // branches.
  bool branching_component = false;
  for (auto c : cyclic) {
    const auto allowed = in_comp(c);
    const auto& mem = members[static_cast<std::size_t>(c)];
    std::int32_t fork = -1;
    std::vector<std::int32_t> fork_succ;
    for (auto v : mem) {
      std::vector<std::int32_t> inside;
      for (auto w : succ[static_cast<std::size_t>(v)])
        if (allowed[static_cast<std::size_t>(w)]) inside.push_back(w);
      if (inside.size() >= 2 && fork < 0) {
        fork = v;
        fork_succ = inside;
      }
    }
    if (fork >= 0) {
      branching_component = true;
      add_cycle(close_cycle(succ, allowed, fork, fork_succ[0]));
      add_cycle(close_cycle(succ, allowed, fork, fork_succ[1]));
    } else {
      const auto v = mem.front();
      std::int32_t next = -1;
      for (auto w : succ[static_cast<std::size_t>(v)])
        if (allowed[static_cast<std::size_t>(w)]) next = w;
      add_cycle(close_cycle(succ, allowed, v, next));
    }
  }
  if (cyclic.size() > 1 || branching_component) return multiple("viability digraph has more than one cycle");

  // A single simple cycle. Count concrete unfaced rays from each base type;
  // two distinct rays from one base vertex are two distinct ends.
  const auto& cycle = out.cycles.front();
  const auto on_cycle = in_comp(cyclic.front());
  bool cycle_branches = false;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (cx.continuations(cycle[i], cycle[(i + 1) % cycle.size()]) >= 2) cycle_branches = true;

  std::vector<std::int64_t> rays(n, -1);  // concrete infinite rays continuing from a node, capped at 2
  std::function<std::int64_t(std::int32_t)> count = [&](std::int32_t v) -> std::int64_t {
    const auto vi = static_cast<std::size_t>(v);
    if (rays[vi] >= 0) return rays[vi];
    if (on_cycle[vi]) return rays[vi] = cycle_branches ? 2 : 1;
    std::int64_t total = 0;
    for (auto w : succ[vi]) {
      if (!live[static_cast<std::size_t>(w)]) continue;
      total += cx.continuations(ClassIndex(v), ClassIndex(w)) * count(w);
      if (total >= 2) break;
    }
    return rays[vi] = std::min<std::int64_t>(total, 2);
  };
  for (std::size_t t = 0; t < g.type_count(); ++t) {
    std::int64_t total = 0;
    for (auto d : cx.stars[t])
      if (live[d.pos()]) total += cx.mult(d) * count(d.value);
    if (total >= 2) return multiple("two distinct concrete rays from one base vertex are unfaced");
  }

  out.kind = ClassificationKind::UniqueCandidate;
  EndSpec e;
  e.base_type = g.cls(cycle.front()).from;
  for (auto c : cycle) e.cycle.push_back({c, 0});
  // Instance 0 of reverse(prev) is the way back; take instance 1 instead.
  for (std::size_t i = 0; i < e.cycle.size(); ++i) {
    const auto prev = e.cycle[(i + e.cycle.size() - 1) % e.cycle.size()].cls;
    if (e.cycle[i].cls == cx.rev(prev)) e.cycle[i].index = 1;
  }
  out.candidate = e;
  return out;
}

Classification classify_ends(const Ptp& ptp) {
  const auto marked = marked_classes(ptp);
  auto upper = classify_ends(ptp, marked, MarkPolicy::FullOnly);
  if (!marked.any_partial()) return upper;
  auto lower = classify_ends(ptp, marked, MarkPolicy::Any);
  // Marks only remove unfaced ends, so the true set lies between the two.
  if (upper.kind == ClassificationKind::AllFaced) return lower;
  if (upper.kind == ClassificationKind::UniqueCandidate && lower.kind == ClassificationKind::UniqueCandidate &&
      upper.candidate == lower.candidate)
    return lower;
  lower.kind = ClassificationKind::Inconclusive;
  lower.candidate.reset();
  lower.reason = "PartiallyMarked";
  return lower;
}

std::int64_t unfaced_cone_count(const Ptp& ptp, TypeIndex base_type, std::int32_t depth, MarkPolicy policy) {
  constexpr std::int64_t kMax = INT64_MAX;
  auto add = [](std::int64_t a, std::int64_t b) { return a > kMax - b ? kMax : a + b; };
  auto mul = [](std::int64_t a, std::int64_t b) { return (b != 0 && a > kMax / b) ? kMax : a * b; };
  if (depth <= 0) return 1;
  const Context cx(ptp, marked_classes(ptp), policy);
  const auto cs = compute_clean(cx);
  const auto n = cx.g.class_count();
  // paths[d]: concrete continuations of length k starting after edge d.
  std::vector<std::int64_t> paths(n, 1);
  for (std::int32_t k = 1; k < depth; ++k) {
    std::vector<std::int64_t> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (cx.mk[i]) continue;
      const ClassIndex d(static_cast<std::int32_t>(i));
      for (auto e : cx.star_to(d))
        if (cx.step_valid(cs, d, e)) next[i] = add(next[i], mul(cx.continuations(d, e), paths[e.pos()]));
    }
    paths = std::move(next);
  }
  std::int64_t total = 0;
  for (auto d : cx.stars[base_type.pos()])
    if (cs.contains(d)) total = add(total, mul(cx.mult(d), paths[d.pos()]));
  return total;
}

namespace {

bool unfaced_under(const Ptp& ptp, const EndSpec& end, const MarkedSet& marked, MarkPolicy policy) {
  const Context cx(ptp, marked, policy);
  const auto cs = compute_clean(cx);
  const auto& first = end.prefix.empty() ? end.cycle.front() : end.prefix.front();
  if (!cs.contains(first.cls)) return false;
  std::vector<Step> seq = end.prefix;
  seq.insert(seq.end(), end.cycle.begin(), end.cycle.end());
  seq.push_back(end.cycle.front());
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!cx.step_valid(cs, seq[i - 1].cls, seq[i].cls)) return false;
  return true;
}

}  // namespace

Facing faced(const Ptp& ptp, const EndSpec& end) {
  validate_end(ptp, end);
  const auto marked = marked_classes(ptp);
  if (!unfaced_under(ptp, end, marked, MarkPolicy::FullOnly)) return Facing::Faced;
  if (unfaced_under(ptp, end, marked, MarkPolicy::Any)) return Facing::Unfaced;
  return Facing::Inconclusive;
}

Verdict sigma_verdict(const Ptp& ptp, bool fn_stabilizers_assumed) {
  Verdict v;
  v.applicability = applicability_check(ptp);
  v.marked = marked_classes(ptp);
  v.classification = classify_ends(ptp);
  const bool applies = v.applicability.main_theorem_applies;
  const auto& cl = v.classification;
  if (applies && cl.kind == ClassificationKind::AllFaced) v.sigma1 = Sigma1::Empty;
  else if (applies && cl.kind == ClassificationKind::UniqueCandidate) v.sigma1 = Sigma1::AtMostOne;
  v.consistency_violation = applies && cl.multiple_unfaced_ends;

  if (applies) {
    v.notes.push_back("for every point z of the downstairs tree the stabilizer G_z is not finitely generated");
  } else {
    std::string failed;
    auto add = [&](bool ok, const char* what) {
      if (!ok) failed += std::string(failed.empty() ? "" : ", ") + what;
    };
    add(v.applicability.upstairs_minimal, "upstairs minimal");
    add(v.applicability.downstairs_locally_finite, "downstairs locally finite");
    add(v.applicability.locally_surjective, "locally surjective");
    add(v.applicability.not_locally_injective, "not locally injective");
    v.notes.push_back("hypotheses fail (" + failed + "); no statement about Σ¹ is made");
  }
  if (v.consistency_violation)
    v.notes.push_back("consistency violation: more than one unfaced end although at most one can exist");
  if (cl.kind == ClassificationKind::UniqueCandidate) {
    const auto spec = format_end(ptp, *cl.candidate);
    v.notes.push_back("candidate end " + spec + " has period " + std::to_string(cl.candidate->cycle.size()) +
                      "; it determines a discrete character G -> Z with that translation length");
    if (fn_stabilizers_assumed && applies)
      v.notes.push_back("E0 = " + spec +
                        " lies in Σⁿ(ρ), conditional on type-F_n stabilizers in the upstairs tree (assumed, not checked)");
  }
  if (cl.kind == ClassificationKind::AllFaced && fn_stabilizers_assumed && applies)
    v.notes.push_back("every end is faced, so Σⁿ(ρ) = ∅ for every n ≥ 1");
  if (cl.kind == ClassificationKind::Inconclusive && cl.reason == "PartiallyMarked")
    v.notes.push_back("some class is only partially covered by collapsing cells; which instances are marked is not "
                      "determined by the quotient data");
  return v;
}

std::string viability_dot(const Ptp& ptp, const Classification& c) {
  const auto& g = ptp.downstairs();
  std::set<std::pair<std::int32_t, std::int32_t>> cycle_steps;
  for (const auto& cyc : c.cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i) cycle_steps.emplace(cyc[i].value, cyc[(i + 1) % cyc.size()].value);
  std::ostringstream os;
  os << "digraph viability {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < c.graph.nodes.size(); ++i) {
    const auto d = c.graph.nodes[i];
    os << "  \"" << g.cls(d).id << "\" [label=\"" << g.type_id(g.cls(d).from) << ":" << g.cls(d).id << "\"";
    if (c.graph.start[i]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const auto& [a, b] : c.graph.steps) {
    os << "  \"" << g.cls(a).id << "\" -> \"" << g.cls(b).id << "\"";
    if (cycle_steps.count({a.value, b.value})) os << " [color=blue]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sigmatree
