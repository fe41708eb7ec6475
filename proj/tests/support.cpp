#include "support.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sigmatree/classifier.hpp"
#include "sigmatree/error.hpp"

namespace sigmatree::testing {

namespace {

using nlohmann::ordered_json;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct DownPair {
  int from, to;     // down types
  int mult, rmult;  // of the class and of its reverse
};

// Splits `coverage` target edges among `sources` up classes, either as one
// cell holding all of them or as one cell each.
struct SideLayout {
  std::vector<int> coverage;  // per cell
  std::vector<std::vector<std::pair<int, int>>> sources;  // (source slot, fiber)
};

SideLayout layout_side(Rng& rng, int coverage, int sources) {
  SideLayout s;
  const bool split = sources > 1 && coverage >= sources && uniform(rng, 0, 1);
  if (split) {
    int left = coverage;
    for (int i = 0; i < sources; ++i) {
      const int k = i + 1 == sources ? left : uniform(rng, 1, left - (sources - i - 1));
      left -= k;
      s.coverage.push_back(k);
      s.sources.push_back({{i, 0}});
    }
  } else {
    s.coverage.push_back(coverage);
    s.sources.emplace_back();
    for (int i = 0; i < sources; ++i) s.sources.back().push_back({i, 0});
  }
  for (std::size_t c = 0; c < s.coverage.size(); ++c)
    for (auto& src : s.sources[c]) src.second = uniform(rng, 1, std::max(1, 5 / s.coverage[c]));
  return s;
}

std::string candidate(Rng& rng) {
  const int nd = uniform(rng, 1, 2);
  const int k = uniform(rng, 1, nd == 1 ? 2 : 2);  // up types per down type
  std::vector<DownPair> pairs;
  std::vector<int> star(static_cast<std::size_t>(nd), 0);
  auto add = [&](int a, int b) {
    DownPair p{a, b, uniform(rng, 1, 2), uniform(rng, 1, 2)};
    pairs.push_back(p);
    star[static_cast<std::size_t>(a)] += p.mult;
    star[static_cast<std::size_t>(b)] += p.rmult;
  };
  if (nd == 2) add(0, 1);
  for (int guard = 0; guard < 20; ++guard) {
    int need = -1;
    for (int t = 0; t < nd; ++t)
      if (star[static_cast<std::size_t>(t)] < 2) need = t;
    if (need < 0 && uniform(rng, 0, 2) != 0) break;
    const int t = need >= 0 ? need : uniform(rng, 0, nd - 1);
    if (star[static_cast<std::size_t>(t)] > 2) continue;
    add(t, t);
  }
  if (nd == 2 && uniform(rng, 0, 2) == 0 && star[0] <= 3 && star[1] <= 3) add(0, 1);

  ordered_json doc;
  doc["name"] = "fuzz";
  ordered_json down_types = ordered_json::array(), up_types = ordered_json::array();
  for (int t = 0; t < nd; ++t) down_types.push_back("D" + std::to_string(t));
  for (int t = 0; t < nd; ++t)
    for (int i = 0; i < k; ++i) up_types.push_back("U" + std::to_string(t) + "_" + std::to_string(i));
  auto up_name = [&](int t, int i) { return "U" + std::to_string(t) + "_" + std::to_string(i); };

  ordered_json down_classes = ordered_json::array(), up_classes = ordered_json::array(), cells = ordered_json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& dp = pairs[p];
    const std::string d = "d" + std::to_string(p), dr = "e" + std::to_string(p);
    const std::string df = "D" + std::to_string(dp.from), dt = "D" + std::to_string(dp.to);
    down_classes.push_back({{"id", d}, {"from", df}, {"to", dt}, {"reverse", dr}, {"mult", dp.mult}});
    down_classes.push_back({{"id", dr}, {"from", dt}, {"to", df}, {"reverse", d}, {"mult", dp.rmult}});

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < k; ++i) {
      const int j = perm[static_cast<std::size_t>(i)];
      const int n = uniform(rng, 1, 2);  // parallel up class pairs
      const auto fwd = layout_side(rng, dp.mult, n);
      const auto bwd = layout_side(rng, dp.rmult, n);
      auto sid = [&](const char* pfx, int s) {
        return std::string(pfx) + std::to_string(p) + "_" + std::to_string(i) + "_" + std::to_string(s);
      };
      std::vector<int> fmult(static_cast<std::size_t>(n)), bmult(static_cast<std::size_t>(n));
      for (std::size_t c = 0; c < fwd.coverage.size(); ++c)
        for (auto [s, f] : fwd.sources[c]) fmult[static_cast<std::size_t>(s)] = fwd.coverage[c] * f;
      for (std::size_t c = 0; c < bwd.coverage.size(); ++c)
        for (auto [s, f] : bwd.sources[c]) bmult[static_cast<std::size_t>(s)] = bwd.coverage[c] * f;
      for (int s = 0; s < n; ++s) {
        up_classes.push_back({{"id", sid("s", s)}, {"from", up_name(dp.from, i)}, {"to", up_name(dp.to, j)},
                              {"reverse", sid("r", s)}, {"mult", fmult[static_cast<std::size_t>(s)]}});
        up_classes.push_back({{"id", sid("r", s)}, {"from", up_name(dp.to, j)}, {"to", up_name(dp.from, i)},
                              {"reverse", sid("s", s)}, {"mult", bmult[static_cast<std::size_t>(s)]}});
      }
      auto emit = [&](const SideLayout& side, const std::string& at, const std::string& target, const char* pfx) {
        for (std::size_t c = 0; c < side.coverage.size(); ++c) {
          ordered_json srcs = ordered_json::array();
          for (auto [s, f] : side.sources[c]) srcs.push_back({{"class", sid(pfx, s)}, {"fiber", f}});
          cells.push_back({{"at", at}, {"target", target}, {"coverage", side.coverage[c]}, {"sources", srcs}});
        }
      };
      emit(fwd, up_name(dp.from, i), d, "s");
      emit(bwd, up_name(dp.to, j), dr, "r");
    }
  }
  ordered_json vmap = ordered_json::object();
  for (int t = 0; t < nd; ++t)
    for (int i = 0; i < k; ++i) vmap[up_name(t, i)] = "D" + std::to_string(t);
  doc["upstairs"] = {{"vertex_types", up_types}, {"edge_classes", up_classes}};
  doc["downstairs"] = {{"vertex_types", down_types}, {"edge_classes", down_classes}};
  doc["q"] = {{"vertex_map", vmap}, {"cells", cells}};
  return doc.dump(2);
}

bool acceptable(const ParseResult& r) {
  if (!r.ptp || !r.report.warnings.empty()) return false;
  const auto& p = *r.ptp;
  for (const auto& c : p.upstairs().edge_classes)
    if (!c.mult.is_finite() || *c.mult.value() > 5) return false;
  for (std::size_t t = 0; t < p.downstairs().type_count(); ++t) {
    const auto s = p.downstairs().star_size(TypeIndex(static_cast<std::int32_t>(t)));
    if (!s.at_least(2) || s.at_least(5)) return false;
  }
  const auto lp = local_properties(p);
  if (!lp.locally_surjective || lp.collapsing_cells.empty()) return false;
  if (!applicability_check(p).main_theorem_applies) return false;
  return !marked_classes(p).any_partial();
}

}  // namespace

std::string random_ptp_document(Rng& rng) {
  for (;;) {
    auto doc = candidate(rng);
    if (acceptable(parse_and_validate(doc))) return doc;
  }
}

Ptp random_ptp(Rng& rng) { return load_ptp(random_ptp_document(rng)); }

std::optional<EndSpec> random_end(const Ptp& ptp, TypeIndex base, Rng& rng, int max_prefix, int max_cycle) {
  const auto& g = ptp.downstairs();
  for (int attempt = 0; attempt < 200; ++attempt) {
    EndSpec e;
    e.base_type = base;
    const int np = uniform(rng, 0, max_prefix), nc = uniform(rng, 1, max_cycle);
    TypeIndex at = base;
    std::optional<ClassIndex> came;
    std::vector<Step> walk;
    bool stuck = false;
    for (int i = 0; i < np + nc; ++i) {
      std::vector<Step> options;
      for (auto c : g.star(at)) {
        const auto m = g.cls(c).mult.capped(8);
        for (std::int32_t j = 0; j < m; ++j) {
          if (came && c == g.cls(*came).reverse && j == 0) continue;
          options.push_back({c, j});
        }
      }
      if (options.empty()) { stuck = true; break; }
      const auto s = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
      walk.push_back(s);
      came = s.cls;
      at = g.cls(s.cls).to;
    }
    if (stuck) continue;
    e.prefix.assign(walk.begin(), walk.begin() + np);
    e.cycle.assign(walk.begin() + np, walk.end());
    try {
      validate_end(ptp, e);
      return e;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::optional<EndSpec> random_end(const Ptp& ptp, Rng& rng, int max_prefix, int max_cycle) {
  const int n = static_cast<int>(ptp.downstairs().type_count());
  return random_end(ptp, TypeIndex(uniform(rng, 0, n - 1)), rng, max_prefix, max_cycle);
}

TypeIndex up_type_over(const Ptp& ptp, TypeIndex down) {
  for (std::size_t t = 0; t < ptp.upstairs().type_count(); ++t)
    if (ptp.image_type(TypeIndex(static_cast<std::int32_t>(t))) == down) return TypeIndex(static_cast<std::int32_t>(t));
  return TypeIndex();
}

std::int64_t count_lifts(const MappedBallPair& pair, const RayInstance& ray, std::size_t depth) {
  // frontier of (up vertex, edge it was entered by)
  std::vector<std::pair<VertexId, EdgeId>> frontier{{pair.up.base(), EdgeId()}};
  for (std::size_t t = 0; t < depth; ++t) {
    std::vector<std::pair<VertexId, EdgeId>> next;
    for (auto [u, came] : frontier)
      for (auto e : pair.up.out_edges(u)) {
        if (came.valid() && e == Ball::reverse(came)) continue;
        if (pair.image(e) == ray.edges[t]) next.emplace_back(pair.up.edge(e).target, e);
      }
    frontier = std::move(next);
  }
  return static_cast<std::int64_t>(frontier.size());
}

}  // namespace sigmatree::testing
