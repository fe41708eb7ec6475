// sigmatree: command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sigmatree/classifier.hpp"
#include "sigmatree/corpus.hpp"
#include "sigmatree/dot.hpp"
#include "sigmatree/error.hpp"
#include "sigmatree/lifting.hpp"
#include "sigmatree/oracle.hpp"
#include "sigmatree/report.hpp"
#include "sigmatree/witness.hpp"

namespace st = sigmatree;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kConsistency = 2, kInconclusive = 3 };

struct Options {
  std::string input;
  std::optional<int> depth;
  int omega_cap = 4;
  int lag = 1;
  std::string end;
  std::string ray;
  std::string dot;
  bool json = false;
  bool assume_fn = false;
  std::size_t budget = 4'000'000;
};

struct Loaded {
  std::string document;
  std::string label;
};

std::optional<Loaded> read_input(const std::string& input) {
  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return Loaded{ss.str(), input};
  }
  for (const auto& name : st::corpus_names())
    if (name == input) return Loaded{st::load_example(name).document, input};
  return std::nullopt;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw st::Error(st::ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

std::string class_list(const st::Ptp& ptp, const st::MarkedSet& m, bool want_marked) {
  std::string s;
  for (std::size_t i = 0; i < m.status.size(); ++i) {
    const bool marked = m.status[i] != st::MarkStatus::Unmarked;
    if (marked != want_marked) continue;
    s += (s.empty() ? "" : " ") + ptp.downstairs().edge_classes[i].id;
    if (m.status[i] == st::MarkStatus::PartiallyMarked) s += "(partial)";
  }
  return s.empty() ? "(none)" : s;
}

std::string sigma_line(const st::Ptp& ptp, const st::Verdict& v) {
  switch (v.sigma1) {
    case st::Sigma1::Empty: return "Σ¹ = ∅";
    case st::Sigma1::AtMostOne:
      return "Σ¹ ⊆ {E0}, E0 = " + st::format_end(ptp, *v.classification.candidate);
    case st::Sigma1::Unknown: break;
  }
  return "Σ¹: no conclusion";
}

void print_summary(const st::Ptp& ptp, const st::Verdict& v) {
  const auto lp = st::local_properties(ptp);
  std::cout << ptp.name() << ": " << (lp.locally_surjective ? "locally surjective" : "not locally surjective")
            << ", " << (lp.locally_injective ? "locally injective" : "not locally injective") << "; hypotheses "
            << (v.applicability.main_theorem_applies ? "hold" : "fail") << "\n";
  std::cout << "marked: " << class_list(ptp, v.marked, true) << "\n";
  std::string clean;
  for (std::size_t i = 0; i < v.classification.clean.clean.size(); ++i)
    if (v.classification.clean.clean[i]) clean += (clean.empty() ? "" : " ") + ptp.downstairs().edge_classes[i].id;
  std::cout << "clean: " << (clean.empty() ? "(none)" : clean) << "\n";
  std::cout << "classification: " << st::to_string(v.classification.kind);
  if (v.classification.candidate) std::cout << " " << st::format_end(ptp, *v.classification.candidate);
  if (!v.classification.reason.empty()) std::cout << " (" << v.classification.reason << ")";
  std::cout << "\n" << sigma_line(ptp, v) << "\n";
  for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
}

int verdict_exit(const st::Verdict& v) {
  if (v.consistency_violation) return kConsistency;
  if (v.classification.kind == st::ClassificationKind::Inconclusive && v.classification.reason == "PartiallyMarked")
    return kInconclusive;
  return kOk;
}

st::EndSpec parse_path(const st::Ptp& ptp, const std::string& text) {
  // A bare list names a periodic end with empty prefix.
  return st::parse_end(ptp, text.find(';') == std::string::npos ? ";" + text : text);
}

st::TypeIndex up_type_over(const st::Ptp& ptp, st::TypeIndex down_type) {
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t) {
    const st::TypeIndex ti(static_cast<std::int32_t>(t));
    if (ptp.image_type(ti) == down_type) return ti;
  }
  throw st::Error(st::ErrorKind::InvalidInput, "no upstairs type lies over " + ptp.downstairs().type_id(down_type));
}

int run(const std::string& command, const Options& o) {
  if (command == "example") {
    if (o.input.empty()) {
      for (const auto& name : st::corpus_names())
        std::cout << name << "  " << st::load_example(name).description << "\n";
      return kOk;
    }
    std::cout << st::load_example(o.input).document;
    return kOk;
  }

  const auto loaded = read_input(o.input);
  if (!loaded) {
    std::string names;
    for (const auto& n : st::corpus_names()) names += (names.empty() ? "" : ", ") + n;
    std::cerr << "error: '" << o.input << "' is neither a file nor a corpus entry (" << names << ")\n";
    return kInvalid;
  }
  auto parsed = st::parse_and_validate(loaded->document);
  if (!parsed.ptp) {
    if (o.json) std::cout << st::dump(st::invalid_report(loaded->label, parsed.report));
    else std::cerr << parsed.report.summary();
    return kInvalid;
  }
  const st::Ptp& ptp = *parsed.ptp;
  const auto verdict = st::sigma_verdict(ptp, o.assume_fn);
  auto report = st::base_report(loaded->label, ptp, verdict, parsed.report);

  if (command == "validate") {
    if (o.json) std::cout << st::dump(report);
    else {
      std::cout << "valid: " << ptp.name() << "\n";
      for (const auto& w : parsed.report.warnings) std::cout << "warning: " << w.code << ": " << w.message << "\n";
    }
    return kOk;
  }

  if (command == "analyze") {
    if (o.json) {
      std::cout << st::dump(report);
      return kOk;
    }
    const auto lp = st::local_properties(ptp);
    std::cout << ptp.name() << "\n";
    std::cout << "locally surjective: " << (lp.locally_surjective ? "yes" : "no") << "\n";
    for (const auto& d : lp.deficiencies)
      std::cout << "  deficiency at " << ptp.upstairs().type_id(d.upstairs_type) << ": "
                << ptp.downstairs().cls(d.target).id << " covered " << d.covered << " of " << d.required << "\n";
    std::cout << "locally injective: " << (lp.locally_injective ? "yes" : "no") << "\n";
    const auto& a = verdict.applicability;
    std::cout << "upstairs minimal: " << (a.upstairs_minimal ? "yes" : "no") << "\n";
    std::cout << "hypotheses hold: " << (a.main_theorem_applies ? "yes" : "no") << "\n";
    for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t) {
      const st::TypeIndex ti(static_cast<std::int32_t>(t));
      std::cout << "upstairs degree " << ptp.upstairs().type_id(ti) << ": "
                << ptp.upstairs().star_size(ti).to_string() << "\n";
    }
    for (std::size_t t = 0; t < ptp.downstairs().type_count(); ++t) {
      const st::TypeIndex ti(static_cast<std::int32_t>(t));
      std::cout << "downstairs degree " << ptp.downstairs().type_id(ti) << ": "
                << ptp.downstairs().star_size(ti).to_string() << "\n";
    }
    std::cout << "marked: " << class_list(ptp, verdict.marked, true) << "\n";
    return kOk;
  }

  if (command == "classify") {
    if (!o.dot.empty()) write_file(o.dot, st::viability_dot(ptp, verdict.classification));
    if (o.json) std::cout << st::dump(report);
    else print_summary(ptp, verdict);
    return verdict_exit(verdict);
  }

  if (command == "faces") {
    if (o.end.empty()) throw st::Error(st::ErrorKind::InvalidInput, "faces needs --end");
    const auto end = st::parse_end(ptp, o.end);
    const auto facing = st::faced(ptp, end);
    const int depth = o.depth.value_or(6);
    st::Json section = {{"end", st::format_end(ptp, end)}, {"facing", st::to_string(facing)}};
    const bool surjective = st::local_properties(ptp).locally_surjective;
    if (surjective && facing != st::Facing::Inconclusive) {
      section["q_fiber_singleton"] = facing == st::Facing::Unfaced;
      section["lift_depth"] = depth;
      section["max_lift_branching"] = st::max_lift_branching(ptp, end, depth, o.omega_cap);
    } else {
      section["q_fiber_singleton"] = nullptr;
      section["lift_depth"] = nullptr;
      section["max_lift_branching"] = nullptr;
    }
    report["faces"] = section;
    if (o.json) std::cout << st::dump(report);
    else {
      std::cout << st::format_end(ptp, end) << ": " << st::to_string(facing) << "\n";
      if (!section["q_fiber_singleton"].is_null())
        std::cout << "q^-1(E) singleton: " << (section["q_fiber_singleton"].get<bool>() ? "yes" : "no")
                  << "; largest lift branching over " << depth << " steps: " << section["max_lift_branching"]
                  << "\n";
    }
    return facing == st::Facing::Inconclusive ? kInconclusive : kOk;
  }

  if (command == "witness") {
    if (o.end.empty()) throw st::Error(st::ErrorKind::InvalidInput, "witness needs --end");
    const auto end = st::parse_end(ptp, o.end);
    const auto ws = st::disconnection_witness(ptp, end, o.lag, o.depth.value_or(10), o.omega_cap);
    if (!o.dot.empty()) write_file(o.dot, st::witness_dot(ptp, ws));
    report["witness"] = st::to_json(ws);
    report["witness"]["end"] = st::format_end(ptp, end);
    if (o.json) std::cout << st::dump(report);
    else {
      const auto& w = ws.witness;
      std::cout << "witness for " << st::format_end(ptp, end) << " at lag " << w.lag << ": apex u" << w.apex.value
                << " (image busemann " << w.apex_busemann << "), probes u" << w.probe1.value << " and u"
                << w.probe2.value << "\n";
      std::cout << (w.verified ? "verified" : "NOT verified") << "\n";
    }
    return ws.witness.verified ? kOk : kConsistency;
  }

  if (command == "lift") {
    if (o.ray.empty()) throw st::Error(st::ErrorKind::InvalidInput, "lift needs --ray");
    const auto spec = parse_path(ptp, o.ray);
    const int depth = o.depth.value_or(4);
    const auto steps = spec.steps(static_cast<std::size_t>(depth));
    const auto down = st::expand_down(ptp, spec.base_type, depth, o.budget);
    const auto ray_d = st::follow_steps(down, steps);
    std::vector<bool> on_ray(down.vertex_count(), false);
    for (auto v : ray_d.vertices) on_ray[v.pos()] = true;
    st::ExpansionOptions opt;
    opt.radius = depth;
    opt.omega_cap = o.omega_cap;
    opt.budget = o.budget;
    opt.corridor = [&](st::VertexId v) { return on_ray[v.pos()]; };
    const auto pair = st::expand_pair(ptp, up_type_over(ptp, spec.base_type), opt);
    const auto tree = st::lift_ray(pair, st::follow_steps(pair.down, steps), std::nullopt, steps.size());
    if (!o.dot.empty()) write_file(o.dot, st::lift_dot(ptp, pair, tree));
    report["lift"] = st::to_json(pair, tree);
    report["lift"]["ray"] = st::format_end(ptp, spec);
    report["lift"]["depth"] = depth;
    report["lift"]["truncated"] = pair.up.truncated();
    if (o.json) std::cout << st::dump(report);
    else {
      std::cout << "ray " << st::format_end(ptp, spec) << ", depth " << depth << ": " << tree.count() << " lifts\n";
      for (std::size_t t = 0; t < tree.branching.size(); ++t) {
        std::cout << "  step " << t << " branching:";
        for (auto b : tree.branching[t]) std::cout << " " << b;
        std::cout << "\n";
      }
      if (pair.up.truncated()) std::cout << "note: OMEGA stars capped at " << o.omega_cap << "\n";
    }
    return kOk;
  }

  if (command == "expand") {
    const int depth = o.depth.value_or(3);
    st::ExpansionOptions opt;
    opt.radius = depth;
    opt.omega_cap = o.omega_cap;
    opt.budget = o.budget;
    st::TypeIndex base(0);
    const auto pair = st::expand_pair(ptp, base, opt);
    if (!o.dot.empty()) write_file(o.dot, st::pair_dot(ptp, pair, {st::concrete_marked_edges(pair), {}}));
    report["expand"] = st::degree_summary(ptp, pair);
    if (o.json) std::cout << st::dump(report);
    else {
      const auto& e = report["expand"];
      std::cout << "radius " << depth << ": " << e["up_vertices"] << " up vertices, " << e["down_vertices"]
                << " down vertices" << (pair.up.truncated() ? " (OMEGA stars capped)" : "") << "\n";
      std::cout << "up interior degrees: " << e["up_interior_degrees"].dump() << "\n";
      std::cout << "down interior degrees: " << e["down_interior_degrees"].dump() << "\n";
    }
    return kOk;
  }

  if (command == "oracle") {
    st::OracleOptions opt;
    opt.depth = o.depth.value_or(4);
    opt.omega_cap = o.omega_cap;
    opt.budget = o.budget;
    const auto runs = st::run_oracle(ptp, opt);
    report["oracle"] = st::to_json(ptp, runs);
    bool conflict = false;
    const bool applies = verdict.applicability.main_theorem_applies;
    for (const auto& r : runs) {
      const auto predicted = st::unfaced_cone_count(ptp, r.down_type, r.report.depth);
      if (!r.report.truncated && !verdict.marked.any_partial() &&
          static_cast<std::int64_t>(r.report.unfaced) != predicted)
        conflict = true;
      if (applies && !r.report.truncated && (r.report.unfaced > 1 || !r.report.unfaced_vertices.empty()))
        conflict = true;
    }
    report["oracle_agrees"] = !conflict;
    if (o.json) std::cout << st::dump(report);
    else {
      for (const auto& r : runs)
        std::cout << ptp.downstairs().type_id(r.down_type) << ": radius " << r.radius << ", " << r.report.cones.size()
                  << " cones at depth " << r.report.depth << ", " << r.report.unfaced << " unfaced (predicted "
                  << st::unfaced_cone_count(ptp, r.down_type, r.report.depth) << "), " << r.report.marked_edges
                  << " marked edges" << (r.report.truncated ? ", truncated" : "") << "\n";
      std::cout << (conflict ? "oracle DISAGREES with the classifier" : "oracle agrees with the classifier") << "\n";
    }
    return conflict ? kConsistency : kOk;
  }
  throw st::Error(st::ErrorKind::InvalidInput, "unknown command " + command);
}

int exit_for(st::ErrorKind k) {
  switch (k) {
    case st::ErrorKind::InvalidInput:
    case st::ErrorKind::NotFaced: return kInvalid;
    case st::ErrorKind::Consistency: return kConsistency;
    case st::ErrorKind::Inconclusive:
    case st::ErrorKind::ResourceLimit: return kInconclusive;
  }
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide facing of ends and Σ¹ emptiness for equivariant tree morphisms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--depth", o.depth, "ball radius, lift depth or scan depth");
  app.add_option("--omega-cap", o.omega_cap, "instances materialized for OMEGA classes")->check(CLI::PositiveNumber);
  app.add_option("--lag", o.lag, "witness lag")->check(CLI::NonNegativeNumber);
  app.add_option("--end", o.end, "end as 'prefix;cycle' of downstairs class ids");
  app.add_option("--ray", o.ray, "ray as 'prefix;cycle' or a class list");
  app.add_option("--dot", o.dot, "write a DOT rendering to this path");
  app.add_flag("--json", o.json, "structured report on stdout");
  app.add_flag("--assume-fn-stabilizers", o.assume_fn, "assume type F_n stabilizers upstairs");
  app.add_option("--budget", o.budget, "vertex budget per ball")->check(CLI::PositiveNumber);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "parse and check a PTP document"},
      {"analyze", "local properties and hypotheses"},
      {"classify", "classify ends and state the Σ¹ verdict"},
      {"faces", "decide whether a collapsing pair faces --end"},
      {"witness", "build and verify a disconnection witness for --end"},
      {"lift", "enumerate lifts of --ray"},
      {"expand", "expand balls and report degrees"},
      {"oracle", "brute-force cone scan"},
      {"example", "list built-in examples or print one"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto* in = sub->add_option("input", o.input, name == "example" ? "example name" : "PTP file or example name");
    if (name != "example") in->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }
  const auto command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const st::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConsistency;
  }
}
