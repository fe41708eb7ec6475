#include <doctest.h>

#include <algorithm>

#include "sigmatree/classifier.hpp"
#include "sigmatree/corpus.hpp"
#include "sigmatree/error.hpp"
#include "support.hpp"

using namespace sigmatree;

namespace {

ClassIndex dc(const Ptp& p, const char* id) { return *p.downstairs().find_class(id); }

// Like ascending_synthetic, but only one of the two u- edges at a vertex
// receives a collapsing pair.
constexpr const char* kPartial = R"({
  "name": "partial",
  "upstairs": {
    "vertex_types": ["Vt"],
    "edge_classes": [
      {"id": "s+", "from": "Vt", "to": "Vt", "reverse": "s-", "mult": 1},
      {"id": "s-", "from": "Vt", "to": "Vt", "reverse": "s+", "mult": 2},
      {"id": "r+", "from": "Vt", "to": "Vt", "reverse": "r-", "mult": 1},
      {"id": "r-", "from": "Vt", "to": "Vt", "reverse": "r+", "mult": 1}
    ]
  },
  "downstairs": {
    "vertex_types": ["V"],
    "edge_classes": [
      {"id": "u+", "from": "V", "to": "V", "reverse": "u-", "mult": 2},
      {"id": "u-", "from": "V", "to": "V", "reverse": "u+", "mult": 2}
    ]
  },
  "q": {
    "vertex_map": {"Vt": "V"},
    "cells": [
      {"at": "Vt", "target": "u+", "coverage": 1, "sources": [{"class": "s+", "fiber": 1}]},
      {"at": "Vt", "target": "u+", "coverage": 1, "sources": [{"class": "r+", "fiber": 1}]},
      {"at": "Vt", "target": "u-", "coverage": 1, "sources": [{"class": "s-", "fiber": 2}]},
      {"at": "Vt", "target": "u-", "coverage": 1, "sources": [{"class": "r-", "fiber": 1}]}
    ]
  }
}
)";

}  // namespace

TEST_CASE("marked classes of the corpus") {
  const auto two = load_example("two_rose").ptp();
  const auto m = marked_classes(two);
  CHECK(m.at(dc(two, "x-")) == MarkStatus::FullyMarked);
  CHECK(m.at(dc(two, "y-")) == MarkStatus::FullyMarked);
  CHECK(m.at(dc(two, "x+")) == MarkStatus::Unmarked);
  CHECK(m.at(dc(two, "y+")) == MarkStatus::Unmarked);
  CHECK_FALSE(m.any_partial());

  const auto asc = load_example("ascending_synthetic").ptp();
  const auto ma = marked_classes(asc);
  CHECK(ma.at(dc(asc, "u-")) == MarkStatus::FullyMarked);
  CHECK(ma.at(dc(asc, "u+")) == MarkStatus::Unmarked);

  const auto line = load_example("line_identity").ptp();
  for (auto s : marked_classes(line).status) CHECK(s == MarkStatus::Unmarked);
}

TEST_CASE("clean pairs and levels") {
  const auto two = load_example("two_rose").ptp();
  const auto c = clean_pairs(two, marked_classes(two));
  for (bool b : c.clean) CHECK_FALSE(b);
  CHECK(c.level[dc(two, "x-").pos()] == 0);
  CHECK(c.level[dc(two, "x+").pos()] == 1);
  CHECK(c.max_level() == 1);

  const auto asc = load_example("ascending_synthetic").ptp();
  const auto ca = clean_pairs(asc, marked_classes(asc));
  CHECK(ca.contains(dc(asc, "u+")));
  CHECK_FALSE(ca.contains(dc(asc, "u-")));
  CHECK(ca.level[dc(asc, "u+").pos()] == -1);

  const auto line = load_example("line_identity").ptp();
  for (bool b : clean_pairs(line, marked_classes(line)).clean) CHECK(b);
}

TEST_CASE("classification of the corpus matches the expectations") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto& e = load_example(name);
    const auto p = e.ptp();
    const auto c = classify_ends(p);
    CHECK(to_string(c.kind) == e.expected.classification.value);
    if (e.expected.candidate_cycle) {
      REQUIRE(c.candidate);
      std::vector<std::string> ids;
      for (auto s : c.candidate->cycle) ids.push_back(p.downstairs().cls(s.cls).id);
      CHECK(ids == e.expected.candidate_cycle->value);
      CHECK(c.candidate->prefix.empty());
    }
    const auto v = sigma_verdict(p, false);
    CHECK(to_string(v.sigma1) == e.expected.sigma1.value);
    CHECK_FALSE(v.consistency_violation);
  }
}

TEST_CASE("line_identity has two unfaced ends") {
  const auto p = load_example("line_identity").ptp();
  const auto c = classify_ends(p);
  CHECK(c.kind == ClassificationKind::Inconclusive);
  CHECK(c.multiple_unfaced_ends);
  CHECK(c.cycles.size() == 2);
  for (int r = 0; r < 6; ++r) CHECK(unfaced_cone_count(p, TypeIndex(0), r) == (r == 0 ? 1 : 2));
  const auto v = sigma_verdict(p, false);
  CHECK(v.sigma1 == Sigma1::Unknown);
  CHECK_FALSE(v.applicability.main_theorem_applies);
}

TEST_CASE("unfaced cone counts") {
  const auto two = load_example("two_rose").ptp();
  const auto asc = load_example("ascending_synthetic").ptp();
  CHECK(unfaced_cone_count(two, TypeIndex(0), 0) == 1);
  for (int r = 1; r < 10; ++r) {
    CHECK(unfaced_cone_count(two, TypeIndex(0), r) == 0);
    CHECK(unfaced_cone_count(asc, TypeIndex(0), r) == 1);
  }
}

TEST_CASE("faced ends") {
  const auto two = load_example("two_rose").ptp();
  for (const char* e : {"x+;x+", ";y-", "x-;y+,x+"}) CHECK(faced(two, parse_end(two, e)) == Facing::Faced);
  const auto asc = load_example("ascending_synthetic").ptp();
  CHECK(faced(asc, parse_end(asc, ";u+")) == Facing::Unfaced);
  CHECK(faced(asc, parse_end(asc, "u+;u-#1")) == Facing::Faced);
  CHECK(faced(asc, parse_end(asc, ";u-")) == Facing::Faced);
  const auto line = load_example("line_identity").ptp();
  CHECK(faced(line, parse_end(line, ";x+")) == Facing::Unfaced);
  CHECK(faced(line, parse_end(line, ";x-")) == Facing::Unfaced);
}

TEST_CASE("a unique candidate is unfaced and every other sampled end is faced") {
  testing::Rng rng(31);
  int candidates = 0;
  for (int i = 0; i < 60; ++i) {
    const auto p = testing::random_ptp(rng);
    const auto c = classify_ends(p);
    REQUIRE(c.kind != ClassificationKind::Inconclusive);
    if (c.kind == ClassificationKind::UniqueCandidate) {
      ++candidates;
      CHECK(faced(p, *c.candidate) == Facing::Unfaced);
    }
    for (int k = 0; k < 5; ++k) {
      const auto e = testing::random_end(p, rng);
      REQUIRE(e);
      if (faced(p, *e) == Facing::Unfaced) {
        REQUIRE(c.kind == ClassificationKind::UniqueCandidate);
      }
    }
  }
  CHECK(candidates > 0);
}

TEST_CASE("partial marks are bracketed") {
  const auto p = load_ptp(kPartial);
  const auto m = marked_classes(p);
  CHECK(m.at(dc(p, "u-")) == MarkStatus::PartiallyMarked);
  CHECK(m.any_partial());
  const auto c = classify_ends(p);
  CHECK(c.kind == ClassificationKind::Inconclusive);
  CHECK(c.reason == "PartiallyMarked");
  CHECK(classify_ends(p, m, MarkPolicy::FullOnly).kind != ClassificationKind::AllFaced);
  CHECK(faced(p, parse_end(p, ";u-")) == Facing::Inconclusive);
  // unfaced when partial marks are ignored, faced when they count
  CHECK(faced(p, parse_end(p, ";u+")) == Facing::Inconclusive);
  const auto v = sigma_verdict(p, false);
  CHECK(v.sigma1 == Sigma1::Unknown);
  CHECK(std::any_of(v.notes.begin(), v.notes.end(),
                    [](const std::string& n) { return n.find("artially") != std::string::npos; }));
}

TEST_CASE("policies bound each other") {
  testing::Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    const auto p = testing::random_ptp(rng);
    const auto m = marked_classes(p);
    for (int r = 0; r < 6; ++r)
      CHECK(unfaced_cone_count(p, TypeIndex(0), r, MarkPolicy::Any) <=
            unfaced_cone_count(p, TypeIndex(0), r, MarkPolicy::FullOnly));
    CHECK(classify_ends(p, m, MarkPolicy::Any).kind == classify_ends(p).kind);
  }
}

TEST_CASE("verdict notes") {
  const auto two = load_example("two_rose").ptp();
  const auto v = sigma_verdict(two, true);
  CHECK(v.sigma1 == Sigma1::Empty);
  CHECK_FALSE(v.notes.empty());
  const auto asc = sigma_verdict(load_example("ascending_synthetic").ptp(), true);
  CHECK(asc.sigma1 == Sigma1::AtMostOne);
  CHECK(std::any_of(asc.notes.begin(), asc.notes.end(),
                    [](const std::string& n) { return n.find("conditional") != std::string::npos; }));
}

TEST_CASE("viability dot") {
  const auto asc = load_example("ascending_synthetic").ptp();
  const auto dot = viability_dot(asc, classify_ends(asc));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("u+") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
}
