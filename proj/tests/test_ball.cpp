#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sigmatree/ball.hpp"
#include "sigmatree/corpus.hpp"
#include "sigmatree/error.hpp"
#include "support.hpp"

using namespace sigmatree;

namespace {

MappedBallPair pair_of(const Ptp& p, std::int32_t radius, std::int32_t cap = 4) {
  ExpansionOptions o;
  o.radius = radius;
  o.omega_cap = cap;
  return expand_pair(p, TypeIndex(0), o);
}

std::map<std::size_t, int> interior_degrees(const Ball& b) {
  std::map<std::size_t, int> hist;
  for (std::size_t i = 0; i < b.vertex_count(); ++i) {
    const VertexId v(static_cast<std::int32_t>(i));
    if (b.vertex(v).depth < b.radius()) hist[b.out_edges(v).size()]++;
  }
  return hist;
}

}  // namespace

TEST_CASE("ball sizes on two_rose") {
  const auto p = load_example("two_rose").ptp();
  const auto pair = pair_of(p, 3);
  CHECK(pair.down.vertex_count() == 1 + 4 + 12 + 36);
  CHECK(pair.up.vertex_count() == 1 + 7 + 42 + 252);
  CHECK(pair.down.edge_count() == 2 * (pair.down.vertex_count() - 1));
  CHECK(interior_degrees(pair.up) == std::map<std::size_t, int>{{7, 50}});
  CHECK(interior_degrees(pair.down) == std::map<std::size_t, int>{{4, 17}});
  CHECK_FALSE(pair.up.truncated());
  CHECK(pair.up.complete());
}

TEST_CASE("degrees of bs24_to_bs12 and free_product") {
  const auto bs = pair_of(load_example("bs24_to_bs12").ptp(), 2);
  CHECK(interior_degrees(bs.up) == std::map<std::size_t, int>{{6, 7}});
  CHECK(interior_degrees(bs.down) == std::map<std::size_t, int>{{3, 4}});
  const auto fp = pair_of(load_example("free_product").ptp(), 3, 4);
  CHECK(fp.up.truncated());
  CHECK_FALSE(fp.down.truncated());
  CHECK(interior_degrees(fp.up).begin()->first == 4);
  CHECK(interior_degrees(fp.down) == std::map<std::size_t, int>{{4, 1 + 4 + 12}});
  const auto fp6 = pair_of(load_example("free_product").ptp(), 2, 6);
  CHECK(interior_degrees(fp6.up) == std::map<std::size_t, int>{{6, 7}});
}

TEST_CASE("ball structure invariants") {
  testing::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::random_ptp(rng);
    const auto pair = pair_of(p, 3);
    for (const Ball* b : {&pair.up, &pair.down}) {
      const auto& g = b == &pair.up ? p.upstairs() : p.downstairs();
      for (std::size_t v = 0; v < b->vertex_count(); ++v) {
        const VertexId id(static_cast<std::int32_t>(v));
        const auto& bv = b->vertex(id);
        if (bv.depth < b->radius()) {
          CHECK(bv.expanded);
          // out-degree equals the star size
          CHECK(Multiplicity::finite(static_cast<std::int64_t>(b->out_edges(id).size())) == g.star_size(bv.type));
        }
        for (auto e : b->out_edges(id)) {
          const auto be = b->edge(e);
          CHECK(be.source == id);
          CHECK(b->edge(be.reverse).target == id);
          CHECK(g.cls(be.cls).from == bv.type);
          CHECK(g.cls(be.cls).to == b->vertex(be.target).type);
          CHECK(b->edge(Ball::reverse(e)).cls == g.cls(be.cls).reverse);
        }
      }
    }
    // q is a morphism: adjacency and types are preserved
    for (std::size_t w = 1; w < pair.up.vertex_count(); ++w) {
      const VertexId id(static_cast<std::int32_t>(w));
      const auto e = pair.up.child_edge(id);
      const auto be = pair.up.edge(e);
      const auto img = pair.down.edge(pair.image(e));
      CHECK(img.source == pair.image(be.source));
      CHECK(img.target == pair.image(be.target));
      CHECK(p.image_type(pair.up.vertex(id).type) == pair.down.vertex(pair.image(id)).type);
    }
  }
}

TEST_CASE("geodesics and distances") {
  const auto b = expand_down(load_example("two_rose").ptp(), TypeIndex(0), 4);
  testing::Rng rng(9);
  std::uniform_int_distribution<std::int32_t> pick(0, static_cast<std::int32_t>(b.vertex_count()) - 1);
  for (int i = 0; i < 200; ++i) {
    const VertexId u(pick(rng)), v(pick(rng));
    const auto g = geodesic(b, u, v);
    CHECK(g.vertices.front() == u);
    CHECK(g.vertices.back() == v);
    CHECK(static_cast<std::int32_t>(g.length()) == b.distance(u, v));
    CHECK(b.distance(u, v) == b.distance(v, u));
    std::set<std::int32_t> seen;
    for (auto x : g.vertices) CHECK(seen.insert(x.value).second);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      CHECK(b.edge(g.edges[k]).source == g.vertices[k]);
      CHECK(b.edge(g.edges[k]).target == g.vertices[k + 1]);
    }
  }
  CHECK_THROWS_AS(geodesic(b, VertexId(0), VertexId(100000)), Error);
}

TEST_CASE("following steps") {
  const auto p = load_example("two_rose").ptp();
  const auto b = expand_down(p, TypeIndex(0), 3);
  const auto e = parse_end(p, ";x+,y-");
  const auto r = ray_toward(b, e, 3);
  CHECK(r.length() == 3);
  CHECK(b.vertex(r.vertices.back()).depth == 3);
  try {
    ray_toward(b, e, 4);
    FAIL("expected BallTooShallow");
  } catch (const BallTooShallow& ex) {
    CHECK(ex.required_depth() >= 4);
  }
}

TEST_CASE("budget is enforced") {
  ExpansionOptions o;
  o.radius = 10;
  o.budget = 1000;
  CHECK_THROWS_AS(expand_pair(load_example("two_rose").ptp(), TypeIndex(0), o), Error);
  try {
    expand_down(load_example("two_rose").ptp(), TypeIndex(0), 10, 1000);
  } catch (const Error& ex) {
    CHECK(ex.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("busemann equals the brute limit") {
  testing::Rng rng(21);
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto p = load_example(name).ptp();
    for (int k = 0; k < 3; ++k) {
      const auto end = testing::random_end(p, TypeIndex(0), rng);
      REQUIRE(end);
      const auto b = expand_down(p, TypeIndex(0), 5);
      const auto tau = ray_toward(b, *end, 5);
      const auto all = busemann_all(b, tau);
      for (std::size_t v = 0; v < b.vertex_count(); ++v) {
        const VertexId id(static_cast<std::int32_t>(v));
        std::int32_t prev = INT32_MIN;
        for (std::size_t t = 0; t <= tau.length(); ++t) {
          const auto val = static_cast<std::int32_t>(t) - b.distance(tau.vertices[t], id);
          CHECK(val >= prev);  // t - d(tau(t), p) never decreases
          prev = val;
        }
        CHECK(all[v] == prev);
        CHECK(busemann(b, tau, id) == prev);
      }
    }
  }
}

TEST_CASE("horoballs are nested subtrees") {
  const auto p = load_example("bs24_to_bs12").ptp();
  const auto b = expand_down(p, TypeIndex(0), 6);
  const auto tau = ray_toward(b, parse_end(p, "u-#1,u-;u-#1"), 6);
  std::vector<VertexId> larger;
  for (std::int32_t r = 7; r >= -7; --r) {
    const auto hb = horoball_filter(b, tau, r);
    CHECK(std::includes(hb.begin(), hb.end(), larger.begin(), larger.end()));
    // convex: the geodesic between any two members stays inside
    const std::set<VertexId> in(hb.begin(), hb.end());
    for (std::size_t i = 0; i + 1 < hb.size() && i < 40; ++i)
      for (auto v : geodesic(b, hb[i], hb.back()).vertices) CHECK(in.count(v));
    larger = hb;
  }
  CHECK(larger.size() == b.vertex_count());
}
