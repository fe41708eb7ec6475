#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "sigmatree/corpus.hpp"
#include "sigmatree/error.hpp"
#include "sigmatree/ptp.hpp"
#include "support.hpp"

using namespace sigmatree;
using nlohmann::ordered_json;

namespace {

bool has_error(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.errors.begin(), r.errors.end(), [&](const auto& e) { return e.code == code; });
}

// two_rose with one edit applied to the JSON tree.
template <class F>
ValidationReport edited(F&& edit) {
  auto j = ordered_json::parse(load_example("two_rose").document);
  edit(j);
  return parse_and_validate(j.dump()).report;
}

}  // namespace

TEST_CASE("multiplicity arithmetic") {
  const auto w = Multiplicity::omega();
  const auto three = Multiplicity::finite(3);
  CHECK((three * Multiplicity::finite(2)) == Multiplicity::finite(6));
  CHECK((three * w).is_omega());
  CHECK((w + three).is_omega());
  CHECK(three < w);
  CHECK(three.capped(2) == 2);
  CHECK(w.capped(4) == 4);
  CHECK(w.at_least(1000000));
  CHECK_FALSE(three.at_least(4));
  CHECK(w.to_string() == "omega");
  CHECK_FALSE(w.value().has_value());
}

TEST_CASE("corpus documents parse and round-trip through serialize") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto p = load_example(name).ptp();
    const auto again = load_ptp(serialize(p));
    CHECK(again == p);
    CHECK(serialize(again) == serialize(p));
  }
}

TEST_CASE("fuzzed documents round-trip") {
  testing::Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto p = testing::random_ptp(rng);
    CHECK(load_ptp(serialize(p)) == p);
  }
}

TEST_CASE("two_rose structure") {
  const auto p = load_example("two_rose").ptp();
  CHECK(p.upstairs().type_count() == 1);
  CHECK(p.upstairs().star_size(TypeIndex(0)) == Multiplicity::finite(7));
  CHECK(p.downstairs().star_size(TypeIndex(0)) == Multiplicity::finite(4));
  const auto sm = *p.upstairs().find_class("s-");
  CHECK(p.cells()[p.cell_of(sm)].preimage_count() == Multiplicity::finite(2));
  CHECK(p.cells()[p.cell_of(sm)].collapsing());
  CHECK_FALSE(p.cells()[p.cell_of(*p.upstairs().find_class("s+"))].collapsing());
  CHECK(p.warnings().empty());
}

TEST_CASE("local properties of the corpus match the expectations") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto& e = load_example(name);
    const auto p = e.ptp();
    const auto lp = local_properties(p);
    CHECK(lp.locally_surjective == e.expected.locally_surjective.value);
    CHECK(lp.locally_injective == e.expected.locally_injective.value);
    CHECK(lp.collapsing_cells.empty() == lp.locally_injective);
    CHECK(applicability_check(p).main_theorem_applies == e.expected.main_theorem_applies.value);
  }
}

TEST_CASE("applicability of line_identity fails only on injectivity") {
  const auto a = applicability_check(load_example("line_identity").ptp());
  CHECK(a.upstairs_minimal);
  CHECK(a.downstairs_locally_finite);
  CHECK(a.locally_surjective);
  CHECK_FALSE(a.not_locally_injective);
  CHECK_FALSE(a.main_theorem_applies);
}

TEST_CASE("validation errors") {
  SUBCASE("not json") {
    auto r = parse_and_validate("{not json");
    CHECK_FALSE(r.ptp);
    CHECK(has_error(r.report, "malformed"));
    CHECK_THROWS_AS(load_ptp("{"), Error);
  }
  SUBCASE("product law") {
    CHECK(has_error(edited([](auto& j) { j["upstairs"]["edge_classes"][1]["mult"] = 3; }), "product_law"));
  }
  SUBCASE("reverse must be an involution") {
    CHECK(has_error(edited([](auto& j) { j["upstairs"]["edge_classes"][0]["reverse"] = "t-"; }), "involution"));
  }
  SUBCASE("unknown ids") {
    CHECK(has_error(edited([](auto& j) { j["q"]["cells"][0]["target"] = "z"; }), "unknown_id"));
    CHECK(has_error(edited([](auto& j) { j["downstairs"]["edge_classes"][0]["to"] = "W"; }), "unknown_id"));
  }
  SUBCASE("duplicate ids") {
    CHECK(has_error(edited([](auto& j) { j["downstairs"]["vertex_types"].push_back("V"); }), "duplicate_id"));
  }
  SUBCASE("omega downstairs") {
    CHECK(has_error(edited([](auto& j) { j["downstairs"]["edge_classes"][0]["mult"] = "omega"; }), "downstairs_omega"));
  }
  SUBCASE("bad multiplicity") {
    CHECK(has_error(edited([](auto& j) { j["downstairs"]["edge_classes"][0]["mult"] = 0; }), "bad_multiplicity"));
    CHECK(has_error(edited([](auto& j) { j["downstairs"]["edge_classes"][0]["mult"] = "many"; }), "bad_multiplicity"));
  }
  SUBCASE("unknown field") {
    CHECK(has_error(edited([](auto& j) { j["extra"] = 1; }), "unknown_field"));
  }
  SUBCASE("missing field") {
    CHECK(has_error(edited([](auto& j) { j.erase("q"); }), "missing_field"));
  }
  SUBCASE("source in two cells") {
    CHECK(has_error(edited([](auto& j) { j["q"]["cells"][1]["sources"].push_back({{"class", "s+"}, {"fiber", 1}}); }),
                    "source_duplicate"));
  }
  SUBCASE("coverage above the target multiplicity") {
    auto r = edited([](auto& j) {
      j["q"]["cells"][0]["coverage"] = 2;
      j["upstairs"]["edge_classes"][0]["mult"] = 2;
      j["upstairs"]["edge_classes"][1]["mult"] = 2;
      j["q"]["cells"][1]["sources"][0]["fiber"] = 2;
    });
    CHECK(has_error(r, "coverage_overflow"));
  }
  SUBCASE("reversal compatibility") {
    auto r = edited([](auto& j) {
      // s- now maps onto y- while its reverse s+ still maps onto x+
      j["q"]["cells"][1]["target"] = "y-";
      j["q"]["cells"][3]["target"] = "x-";
      j["upstairs"]["edge_classes"][1]["mult"] = 2;
    });
    CHECK(has_error(r, "reversal_compatibility"));
  }
  SUBCASE("disconnected quotient") {
    auto r = edited([](auto& j) {
      j["downstairs"]["vertex_types"].push_back("W");
      j["downstairs"]["edge_classes"].push_back({{"id", "w+"}, {"from", "W"}, {"to", "W"}, {"reverse", "w-"}, {"mult", 1}});
      j["downstairs"]["edge_classes"].push_back({{"id", "w-"}, {"from", "W"}, {"to", "W"}, {"reverse", "w+"}, {"mult", 1}});
    });
    CHECK(has_error(r, "disconnected"));
  }
  SUBCASE("downstairs leaf") {
    auto r = edited([](auto& j) {
      j["downstairs"]["vertex_types"].push_back("L");
      j["downstairs"]["edge_classes"].push_back({{"id", "l+"}, {"from", "V"}, {"to", "L"}, {"reverse", "l-"}, {"mult", 1}});
      j["downstairs"]["edge_classes"].push_back({{"id", "l-"}, {"from", "L"}, {"to", "V"}, {"reverse", "l+"}, {"mult", 1}});
    });
    CHECK(has_error(r, "leaf_type"));
  }
}

TEST_CASE("partial coverage is a warning and breaks local surjectivity") {
  auto j = ordered_json::parse(load_example("ascending_synthetic").document);
  j["q"]["cells"][1]["coverage"] = 1;
  j["upstairs"]["edge_classes"][1]["mult"] = 2;
  auto r = parse_and_validate(j.dump());
  REQUIRE(r.ptp);
  REQUIRE(r.report.warnings.size() == 1);
  CHECK(r.report.warnings[0].code == "partial_coverage");
  const auto lp = local_properties(*r.ptp);
  CHECK_FALSE(lp.locally_surjective);
  REQUIRE(lp.deficiencies.size() == 1);
  CHECK(lp.deficiencies[0].covered == 1);
  CHECK(lp.deficiencies[0].required == 2);
  CHECK_FALSE(applicability_check(*r.ptp).main_theorem_applies);
}
