#include "sigmatree/ptp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sigmatree/error.hpp"

namespace sigmatree {

using nlohmann::ordered_json;

std::optional<TypeIndex> TypedGraph::find_type(std::string_view id) const {
  for (std::size_t i = 0; i < vertex_types.size(); ++i)
    if (vertex_types[i] == id) return TypeIndex(static_cast<std::int32_t>(i));
  return std::nullopt;
}

std::optional<ClassIndex> TypedGraph::find_class(std::string_view id) const {
  for (std::size_t i = 0; i < edge_classes.size(); ++i)
    if (edge_classes[i].id == id) return ClassIndex(static_cast<std::int32_t>(i));
  return std::nullopt;
}

std::vector<ClassIndex> TypedGraph::star(TypeIndex t) const {
  std::vector<ClassIndex> out;
  for (std::size_t i = 0; i < edge_classes.size(); ++i)
    if (edge_classes[i].from == t) out.emplace_back(static_cast<std::int32_t>(i));
  return out;
}

Multiplicity TypedGraph::star_size(TypeIndex t) const {
  std::optional<Multiplicity> total;
  for (const auto& c : edge_classes)
    if (c.from == t) total = total ? *total + c.mult : c.mult;
  return total.value_or(Multiplicity::finite(0));
}

Multiplicity Cell::preimage_count() const {
  std::optional<Multiplicity> total;
  for (const auto& s : sources) total = total ? *total + s.fiber : s.fiber;
  return total.value_or(Multiplicity::finite(0));
}

std::vector<std::size_t> Ptp::cells_at(TypeIndex upstairs_type) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].at == upstairs_type) out.push_back(i);
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& e : errors) os << "error[" << e.code << "]: " << e.message << "\n";
  for (const auto& w : warnings) os << "warning[" << w.code << "]: " << w.message << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

/// Document-level shape before ids are resolved.
struct RawClass {
  std::string id, from, to, reverse;
  Multiplicity mult = Multiplicity::finite(1);
};
struct RawGraph {
  std::vector<std::string> types;
  std::vector<RawClass> classes;
};
struct RawSource {
  std::string cls;
  Multiplicity fiber = Multiplicity::finite(1);
};
struct RawCell {
  std::string at, target;
  Multiplicity coverage = Multiplicity::finite(1);
  std::vector<RawSource> sources;
};
struct RawDoc {
  std::string name;
  RawGraph up, down;
  std::vector<std::pair<std::string, std::string>> vertex_map;
  std::vector<RawCell> cells;
};

class Reporter {
 public:
  explicit Reporter(ValidationReport& r) : report_(r) {}

  void error(std::string code, std::string message, std::vector<std::string> ids = {}) {
    report_.errors.push_back({std::move(code), std::move(message), std::move(ids)});
  }
  void warning(std::string code, std::string message, std::vector<std::string> ids = {}) {
    report_.warnings.push_back({std::move(code), std::move(message), std::move(ids)});
  }
  bool failed() const { return !report_.errors.empty(); }

 private:
  ValidationReport& report_;
};

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch) != 0; });
}

/// Structural reader: every shape problem is reported with its JSON path.
class DocReader {
 public:
  explicit DocReader(Reporter& rep) : rep_(rep) {}

  bool object_with_keys(const ordered_json& j, const std::string& path,
                        std::initializer_list<const char*> keys) {
    if (!j.is_object()) {
      rep_.error("malformed", path + " must be an object");
      return false;
    }
    bool ok = true;
    for (const auto& [k, v] : j.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; })) {
        rep_.error("unknown_field", "unknown field '" + k + "' in " + path, {k});
        ok = false;
      }
    }
    for (const char* key : keys) {
      if (!j.contains(key)) {
        rep_.error("missing_field", path + " lacks field '" + key + "'", {key});
        ok = false;
      }
    }
    return ok;
  }

  std::optional<std::string> identifier(const ordered_json& j, const std::string& path) {
    if (!j.is_string()) {
      rep_.error("malformed", path + " must be a string identifier");
      return std::nullopt;
    }
    auto s = j.get<std::string>();
    if (!valid_identifier(s)) {
      rep_.error("bad_identifier", path + " must be nonempty without whitespace", {s});
      return std::nullopt;
    }
    return s;
  }

  std::optional<Multiplicity> multiplicity(const ordered_json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "omega") return Multiplicity::omega();
    if (j.is_number_integer()) {
      auto v = j.get<std::int64_t>();
      if (v >= 1) return Multiplicity::finite(v);
    }
    rep_.error("bad_multiplicity", path + " must be a positive integer or \"omega\"");
    return std::nullopt;
  }

  std::optional<RawGraph> graph(const ordered_json& j, const std::string& path) {
    if (!object_with_keys(j, path, {"vertex_types", "edge_classes"})) return std::nullopt;
    RawGraph g;
    bool ok = true;
    if (!j["vertex_types"].is_array()) {
      rep_.error("malformed", path + ".vertex_types must be an array");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < j["vertex_types"].size(); ++i) {
      auto id = identifier(j["vertex_types"][i], path + ".vertex_types[" + std::to_string(i) + "]");
      if (id) g.types.push_back(*id); else ok = false;
    }
    if (!j["edge_classes"].is_array()) {
      rep_.error("malformed", path + ".edge_classes must be an array");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < j["edge_classes"].size(); ++i) {
      const auto& c = j["edge_classes"][i];
      const auto p = path + ".edge_classes[" + std::to_string(i) + "]";
      if (!object_with_keys(c, p, {"id", "from", "to", "reverse", "mult"})) {
        ok = false;
        continue;
      }
      auto id = identifier(c["id"], p + ".id");
      auto from = identifier(c["from"], p + ".from");
      auto to = identifier(c["to"], p + ".to");
      auto rev = identifier(c["reverse"], p + ".reverse");
      auto mult = multiplicity(c["mult"], p + ".mult");
      if (id && from && to && rev && mult)
        g.classes.push_back({*id, *from, *to, *rev, *mult});
      else
        ok = false;
    }
    if (!ok) return std::nullopt;
    return g;
  }

  std::optional<RawDoc> document(const ordered_json& j) {
    if (!object_with_keys(j, "document", {"name", "upstairs", "downstairs", "q"})) return std::nullopt;
    RawDoc doc;
    bool ok = true;
    if (j["name"].is_string() && !j["name"].get<std::string>().empty()) {
      doc.name = j["name"].get<std::string>();
    } else {
      rep_.error("malformed", "name must be a nonempty string");
      ok = false;
    }
    auto up = graph(j["upstairs"], "upstairs");
    auto down = graph(j["downstairs"], "downstairs");
    ok = ok && up && down;
    const auto& q = j["q"];
    if (!object_with_keys(q, "q", {"vertex_map", "cells"})) return std::nullopt;
    if (!q["vertex_map"].is_object()) {
      rep_.error("malformed", "q.vertex_map must be an object");
      ok = false;
    } else {
      for (const auto& [k, v] : q["vertex_map"].items()) {
        auto val = identifier(v, "q.vertex_map." + k);
        if (valid_identifier(k) && val) doc.vertex_map.emplace_back(k, *val);
        else ok = false;
      }
    }
    if (!q["cells"].is_array()) {
      rep_.error("malformed", "q.cells must be an array");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < q["cells"].size(); ++i) {
      const auto& c = q["cells"][i];
      const auto p = "q.cells[" + std::to_string(i) + "]";
      if (!object_with_keys(c, p, {"at", "target", "coverage", "sources"})) {
        ok = false;
        continue;
      }
      RawCell cell;
      auto at = identifier(c["at"], p + ".at");
      auto target = identifier(c["target"], p + ".target");
      auto cov = multiplicity(c["coverage"], p + ".coverage");
      if (!(at && target && cov)) {
        ok = false;
        continue;
      }
      cell.at = *at;
      cell.target = *target;
      cell.coverage = *cov;
      if (!c["sources"].is_array() || c["sources"].empty()) {
        rep_.error("malformed", p + ".sources must be a nonempty array");
        ok = false;
        continue;
      }
      for (std::size_t s = 0; s < c["sources"].size(); ++s) {
        const auto& src = c["sources"][s];
        const auto sp = p + ".sources[" + std::to_string(s) + "]";
        if (!object_with_keys(src, sp, {"class", "fiber"})) {
          ok = false;
          continue;
        }
        auto cls = identifier(src["class"], sp + ".class");
        auto fiber = multiplicity(src["fiber"], sp + ".fiber");
        if (cls && fiber) cell.sources.push_back({*cls, *fiber});
        else ok = false;
      }
      doc.cells.push_back(std::move(cell));
    }
    if (!ok) return std::nullopt;
    doc.up = std::move(*up);
    doc.down = std::move(*down);
    return doc;
  }

 private:
  Reporter& rep_;
};

/// Resolves ids and checks the invariants of one quotient graph.
std::optional<TypedGraph> resolve_graph(const RawGraph& raw, const std::string& side, Reporter& rep) {
  TypedGraph g;
  bool ok = true;
  std::set<std::string> seen;
  for (const auto& t : raw.types) {
    if (!seen.insert(t).second) {
      rep.error("duplicate_id", side + " vertex type '" + t + "' declared twice", {t});
      ok = false;
    }
    g.vertex_types.push_back(t);
  }
  if (g.vertex_types.empty()) {
    rep.error("empty_graph", side + " declares no vertex types");
    return std::nullopt;
  }
  std::set<std::string> class_ids;
  for (const auto& c : raw.classes) {
    if (!class_ids.insert(c.id).second) {
      rep.error("duplicate_id", side + " edge class '" + c.id + "' declared twice", {c.id});
      ok = false;
    }
  }
  if (raw.classes.empty()) {
    rep.error("empty_graph", side + " declares no edge classes (the tree would be finite)");
    return std::nullopt;
  }
  if (!ok) return std::nullopt;

  for (const auto& c : raw.classes) {
    EdgeClass ec;
    ec.id = c.id;
    ec.mult = c.mult;
    auto from = g.find_type(c.from);
    auto to = g.find_type(c.to);
    if (!from) rep.error("unknown_id", side + " class '" + c.id + "' starts at unknown type '" + c.from + "'", {c.id, c.from});
    if (!to) rep.error("unknown_id", side + " class '" + c.id + "' ends at unknown type '" + c.to + "'", {c.id, c.to});
    if (from) ec.from = *from;
    if (to) ec.to = *to;
    g.edge_classes.push_back(std::move(ec));
  }
  for (std::size_t i = 0; i < raw.classes.size(); ++i) {
    auto rev = g.find_class(raw.classes[i].reverse);
    if (!rev) {
      rep.error("unknown_id", side + " class '" + raw.classes[i].id + "' has unknown reverse '" +
                raw.classes[i].reverse + "'", {raw.classes[i].id, raw.classes[i].reverse});
      continue;
    }
    g.edge_classes[i].reverse = *rev;
  }
  if (rep.failed()) return std::nullopt;

  for (std::size_t i = 0; i < g.edge_classes.size(); ++i) {
    const auto& c = g.edge_classes[i];
    const auto& r = g.cls(c.reverse);
    if (g.cls(r.reverse).id != c.id) {
      rep.error("involution", side + " reverse is not an involution at '" + c.id + "'", {c.id, r.id});
      continue;
    }
    if (r.from != c.to || r.to != c.from) {
      rep.error("reverse_endpoints", side + " class '" + c.id + "' and its reverse '" + r.id +
                "' do not swap endpoints", {c.id, r.id});
    }
    if (c.reverse.pos() == i && c.from != c.to) {
      rep.error("self_reverse", side + " class '" + c.id + "' is its own reverse but joins distinct types", {c.id});
    }
  }
  return g;
}

/// Every quotient graph of a tree is connected.
void check_connected(const TypedGraph& g, const std::string& side, Reporter& rep) {
  std::vector<bool> seen(g.type_count(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto t = stack.back();
    stack.pop_back();
    for (const auto& c : g.edge_classes) {
      if (c.from.pos() == t && !seen[c.to.pos()]) {
        seen[c.to.pos()] = true;
        stack.push_back(c.to.pos());
      }
    }
  }
  for (std::size_t t = 0; t < g.type_count(); ++t)
    if (!seen[t])
      rep.error("disconnected", side + " type '" + g.vertex_types[t] + "' is not connected to '" +
                g.vertex_types[0] + "'", {g.vertex_types[t]});
}

}  // namespace

class PtpBuilder {
 public:
  static ParseResult build(const RawDoc& doc);
};

ParseResult PtpBuilder::build(const RawDoc& doc) {
  ParseResult result;
  Reporter rep(result.report);

  auto up = resolve_graph(doc.up, "upstairs", rep);
  auto down = resolve_graph(doc.down, "downstairs", rep);
  if (!up || !down || rep.failed()) return result;

  check_connected(*up, "upstairs", rep);
  check_connected(*down, "downstairs", rep);

  for (const auto& c : down->edge_classes)
    if (c.mult.is_omega())
      rep.error("downstairs_omega", "downstairs class '" + c.id + "' has OMEGA multiplicity; T must be locally finite", {c.id});

  for (std::size_t t = 0; t < down->type_count(); ++t) {
    auto size = down->star_size(TypeIndex(static_cast<std::int32_t>(t)));
    if (!size.at_least(2))
      rep.error("leaf_type", "downstairs type '" + down->vertex_types[t] + "' has star size " + size.to_string() +
                " < 2", {down->vertex_types[t]});
  }
  bool all_two = true;
  for (std::size_t t = 0; t < up->type_count(); ++t) {
    auto size = up->star_size(TypeIndex(static_cast<std::int32_t>(t)));
    if (!size.at_least(1)) {
      rep.error("leaf_type", "upstairs type '" + up->vertex_types[t] + "' has an empty star", {up->vertex_types[t]});
    } else if (!size.at_least(2)) {
      rep.warning("upstairs_leaf", "upstairs type '" + up->vertex_types[t] +
                  "' has star size 1; the upstairs tree is not minimal", {up->vertex_types[t]});
    }
    if (size != Multiplicity::finite(2)) all_two = false;
  }
  if (all_two)
    rep.warning("degenerate_line", "every upstairs star has size exactly 2; the upstairs tree is a line");

  // Vertex map.
  std::vector<TypeIndex> vmap(up->type_count());
  std::set<std::string> mapped;
  for (const auto& [k, v] : doc.vertex_map) {
    auto ut = up->find_type(k);
    auto dt = down->find_type(v);
    if (!ut) {
      rep.error("unknown_id", "vertex_map key '" + k + "' is not an upstairs type", {k});
      continue;
    }
    if (!dt) {
      rep.error("unknown_id", "vertex_map sends '" + k + "' to unknown downstairs type '" + v + "'", {k, v});
      continue;
    }
    if (!mapped.insert(k).second) rep.error("duplicate_id", "vertex_map lists '" + k + "' twice", {k});
    vmap[ut->pos()] = *dt;
  }
  for (const auto& t : up->vertex_types)
    if (!mapped.count(t)) rep.error("vertex_map_incomplete", "upstairs type '" + t + "' has no image", {t});
  if (rep.failed()) return result;

  // Cells.
  std::vector<Cell> cells;
  std::vector<std::size_t> cell_of(up->class_count(), SIZE_MAX);
  for (std::size_t i = 0; i < doc.cells.size(); ++i) {
    const auto& rc = doc.cells[i];
    const std::string where = "cell " + std::to_string(i) + " (" + rc.at + " -> " + rc.target + ")";
    auto at = up->find_type(rc.at);
    auto target = down->find_class(rc.target);
    if (!at) { rep.error("unknown_id", where + ": unknown upstairs type '" + rc.at + "'", {rc.at}); continue; }
    if (!target) { rep.error("unknown_id", where + ": unknown downstairs class '" + rc.target + "'", {rc.target}); continue; }
    Cell cell{*at, *target, rc.coverage, {}};
    const auto& tgt = down->cls(*target);
    if (rc.coverage.is_omega())
      rep.error("coverage_overflow", where + ": coverage cannot be OMEGA over a locally finite tree", {rc.target});
    if (tgt.from != vmap[at->pos()])
      rep.error("cell_target_type", where + ": target starts at '" + down->type_id(tgt.from) +
                "' but '" + rc.at + "' maps to '" + down->type_id(vmap[at->pos()]) + "'", {rc.at, rc.target});
    for (const auto& rs : rc.sources) {
      auto c = up->find_class(rs.cls);
      if (!c) { rep.error("unknown_id", where + ": unknown upstairs class '" + rs.cls + "'", {rs.cls}); continue; }
      const auto& src = up->cls(*c);
      if (src.from != *at)
        rep.error("cell_source_type", where + ": source '" + src.id + "' does not start at '" + rc.at + "'", {src.id, rc.at});
      if (vmap[src.to.pos()] != tgt.to)
        rep.error("cell_source_type", where + ": source '" + src.id + "' ends over '" + down->type_id(vmap[src.to.pos()]) +
                  "' but the target ends at '" + down->type_id(tgt.to) + "'", {src.id, tgt.id});
      auto product = rc.coverage * rs.fiber;
      if (product != src.mult)
        rep.error("product_law", where + ": mult(" + src.id + ") = " + src.mult.to_string() + " but coverage * fiber = " +
                  rc.coverage.to_string() + " * " + rs.fiber.to_string() + " = " + product.to_string(), {src.id});
      if (cell_of[c->pos()] != SIZE_MAX)
        rep.error("source_duplicate", "upstairs class '" + src.id + "' appears in more than one cell", {src.id});
      cell_of[c->pos()] = cells.size();
      cell.sources.push_back({*c, rs.fiber});
    }
    cells.push_back(std::move(cell));
  }
  for (std::size_t c = 0; c < up->class_count(); ++c)
    if (cell_of[c] == SIZE_MAX)
      rep.error("source_unassigned", "upstairs class '" + up->edge_classes[c].id + "' belongs to no cell",
                {up->edge_classes[c].id});
  if (rep.failed()) return result;

  // Coverage bound and nominal slot layout per (upstairs type, target class).
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> used;
  std::vector<std::int64_t> offsets(cells.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto key = std::make_pair(cells[i].at.value, cells[i].target.value);
    offsets[i] = used[key];
    used[key] += cells[i].coverage.capped(INT32_MAX);
  }
  for (const auto& [key, total] : used) {
    const auto& tgt = down->edge_classes[static_cast<std::size_t>(key.second)];
    if (Multiplicity::finite(total) > tgt.mult)
      rep.error("coverage_overflow", "cells at '" + up->vertex_types[static_cast<std::size_t>(key.first)] + "' cover " +
                std::to_string(total) + " edges of '" + tgt.id + "' but mult is " + tgt.mult.to_string(),
                {up->vertex_types[static_cast<std::size_t>(key.first)], tgt.id});
  }

  // Reversal compatibility.
  for (std::size_t c = 0; c < up->class_count(); ++c) {
    const auto& uc = up->edge_classes[c];
    const auto d = cells[cell_of[c]].target;
    const auto dr = cells[cell_of[uc.reverse.pos()]].target;
    if (down->cls(d).reverse != dr)
      rep.error("reversal_compatibility", "'" + uc.id + "' maps to '" + down->cls(d).id + "' but its reverse '" +
                up->cls(uc.reverse).id + "' maps to '" + down->cls(dr).id + "' instead of '" +
                down->cls(down->cls(d).reverse).id + "'", {uc.id, up->cls(uc.reverse).id});
  }
  if (rep.failed()) return result;

  for (const auto& cell : cells) {
    const auto& tgt = down->cls(cell.target);
    if (cell.coverage < tgt.mult)
      rep.warning("partial_coverage", "cell at '" + up->type_id(cell.at) + "' covers " + cell.coverage.to_string() +
                  " of " + tgt.mult.to_string() + " edges of '" + tgt.id + "'", {up->type_id(cell.at), tgt.id});
  }

  Ptp p;
  p.name_ = doc.name;
  p.upstairs_ = std::move(*up);
  p.downstairs_ = std::move(*down);
  p.vertex_map_ = std::move(vmap);
  p.cells_ = std::move(cells);
  p.cell_of_class_ = std::move(cell_of);
  p.slot_offset_ = std::move(offsets);
  for (const auto& w : result.report.warnings) p.warnings_.push_back(w.code + ": " + w.message);
  result.ptp = std::move(p);
  return result;
}

ParseResult parse_and_validate(std::string_view text) {
  ParseResult result;
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    result.report.errors.push_back({"malformed", std::string("not a JSON document: ") + e.what(), {}});
    return result;
  }
  Reporter rep(result.report);
  DocReader reader(rep);
  auto doc = reader.document(j);
  if (!doc || rep.failed()) return result;
  return PtpBuilder::build(*doc);
}

Ptp load_ptp(std::string_view text) {
  auto r = parse_and_validate(text);
  if (!r.ptp) throw Error(ErrorKind::InvalidInput, "invalid PTP document:\n" + r.report.summary());
  return std::move(*r.ptp);
}

namespace {

ordered_json mult_json(Multiplicity m) {
  if (m.is_omega()) return "omega";
  return *m.value();
}

ordered_json graph_json(const TypedGraph& g) {
  ordered_json out;
  out["vertex_types"] = g.vertex_types;
  out["edge_classes"] = ordered_json::array();
  for (const auto& c : g.edge_classes) {
    out["edge_classes"].push_back({{"id", c.id},
                                   {"from", g.type_id(c.from)},
                                   {"to", g.type_id(c.to)},
                                   {"reverse", g.cls(c.reverse).id},
                                   {"mult", mult_json(c.mult)}});
  }
  return out;
}

}  // namespace

std::string serialize(const Ptp& ptp) {
  ordered_json doc;
  doc["name"] = ptp.name();
  doc["upstairs"] = graph_json(ptp.upstairs());
  doc["downstairs"] = graph_json(ptp.downstairs());
  ordered_json vmap = ordered_json::object();
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t)
    vmap[ptp.upstairs().vertex_types[t]] = ptp.downstairs().type_id(ptp.vertex_map()[t]);
  ordered_json cells = ordered_json::array();
  for (const auto& cell : ptp.cells()) {
    ordered_json sources = ordered_json::array();
    for (const auto& s : cell.sources)
      sources.push_back({{"class", ptp.upstairs().cls(s.cls).id}, {"fiber", mult_json(s.fiber)}});
    cells.push_back({{"at", ptp.upstairs().type_id(cell.at)},
                     {"target", ptp.downstairs().cls(cell.target).id},
                     {"coverage", mult_json(cell.coverage)},
                     {"sources", sources}});
  }
  doc["q"] = {{"vertex_map", vmap}, {"cells", cells}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Local properties

LocalProperties local_properties(const Ptp& ptp) {
  LocalProperties lp;
  const auto& up = ptp.upstairs();
  const auto& down = ptp.downstairs();
  for (std::size_t t = 0; t < up.type_count(); ++t) {
    const TypeIndex ut(static_cast<std::int32_t>(t));
    for (auto d : down.star(ptp.image_type(ut))) {
      std::int64_t covered = 0;
      for (auto ci : ptp.cells_at(ut))
        if (ptp.cells()[ci].target == d) covered += ptp.cells()[ci].coverage.capped(INT32_MAX);
      const auto required = *down.cls(d).mult.value();
      if (covered < required) lp.deficiencies.push_back({ut, d, covered, required});
    }
  }
  std::vector<bool> reached(down.type_count(), false);
  for (auto t : ptp.vertex_map()) reached[t.pos()] = true;
  for (std::size_t t = 0; t < down.type_count(); ++t)
    if (!reached[t]) lp.unreached_types.emplace_back(static_cast<std::int32_t>(t));
  lp.locally_surjective = lp.deficiencies.empty() && lp.unreached_types.empty();

  for (std::size_t i = 0; i < ptp.cells().size(); ++i)
    if (ptp.cells()[i].collapsing()) lp.collapsing_cells.push_back(i);
  lp.locally_injective = lp.collapsing_cells.empty();
  return lp;
}

ApplicabilityReport applicability_check(const Ptp& ptp) {
  ApplicabilityReport r;
  r.upstairs_minimal = true;
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t)
    if (!ptp.upstairs().star_size(TypeIndex(static_cast<std::int32_t>(t))).at_least(2)) r.upstairs_minimal = false;
  r.downstairs_locally_finite = std::all_of(ptp.downstairs().edge_classes.begin(), ptp.downstairs().edge_classes.end(),
                                            [](const EdgeClass& c) { return c.mult.is_finite(); });
  const auto lp = local_properties(ptp);
  r.locally_surjective = lp.locally_surjective;
  r.not_locally_injective = !lp.locally_injective;
  r.main_theorem_applies = r.upstairs_minimal && r.downstairs_locally_finite && r.locally_surjective &&
                           r.not_locally_injective;
  return r;
}

}  // namespace sigmatree
